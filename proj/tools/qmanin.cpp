#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qmanin/errors.hpp"
#include "qmanin/suites.hpp"

// qmanin verify <suite> [--type T] [--ell N] [--seed N] [--out FILE] [--format json|markdown]
// Exit status: 0 all checks pass, 1 a check failed, 2 configuration error.
int main(int argc, char** argv) {
  CLI::App app{"qmanin: exact verification suites for the quantum Manin-triple bracket"};
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, out, format = "json";
  qmanin::SuiteConfig cfg;
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(qmanin::suite_names()));
  verify->add_option("--type", cfg.type, "root system type")->check(CLI::IsMember({"A1", "A2", "A3", "B2"}));
  verify->add_option("--ell", cfg.ell, "order of the root of unity");
  verify->add_option("--seed", cfg.seed, "seed for randomized checks");
  verify->add_option("--out", out, "write the report to this file instead of stdout");
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "markdown"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qmanin::SuiteReport rep;
  try {
    rep = qmanin::run_suite(suite, cfg);
  } catch (const qmanin::ConfigError& e) {
    nlohmann::json err{{"suite", suite}, {"error", "configuration"}, {"condition", e.condition}, {"message", e.what()}};
    std::cerr << "configuration error, condition " << e.condition << ": " << e.what() << "\n";
    if (!out.empty()) std::ofstream(out) << err.dump(2) << "\n";
    return 2;
  }
  std::string text = format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_markdown();
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    f << text;
    std::cout << suite << ": " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.checks.size() << " checks) -> " << out
              << "\n";
  }
  return rep.pass() ? 0 : 1;
}
