#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmanin {

struct SuiteConfig {
  std::string type = "A1";
  int ell = 0;  // 0: not given; suites that need one take the smallest admissible odd ell
  uint32_t seed = 1;
};

struct CheckResult {
  std::string name;
  int criterion = 0;
  bool pass = false;
  nlohmann::json witness;
};

struct SuiteReport {
  std::string suite;
  nlohmann::json parameters;
  std::vector<CheckResult> checks;
  bool pass() const;
  nlohmann::json to_json() const;
  std::string to_markdown() const;
};

const std::vector<std::string>& suite_names();
// Criteria (1..10) covered by a suite.
std::vector<int> suite_criteria(const std::string& suite);
// Checks of one criterion for one (type, ell, seed) instance. Throws ConfigError for an
// unsupported type or inadmissible ell.
std::vector<CheckResult> criterion_checks(int criterion, const SuiteConfig& cfg);
SuiteReport run_suite(const std::string& suite, const SuiteConfig& cfg);
// The smallest odd ell > 1 prime to |Lambda/Q|.
int default_ell(const std::string& type);

}  // namespace qmanin
