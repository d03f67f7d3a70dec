#pragma once
#include <stdexcept>
#include <string>

namespace qmanin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedExponent : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
// Reduced denominator vanishes at the chosen root of unity.
struct NotInLocalRing : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
// Operands built over different root data.
struct StructuralError : Error { using Error::Error; };
// A coordinate in an integral basis falls outside A_zeta.
struct NotInForm : Error { using Error::Error; };
struct MembershipError : Error { using Error::Error; };
struct NonCentralityError : Error { using Error::Error; };

struct ConfigError : Error {
  std::string condition;
  ConfigError(std::string cond, const std::string& msg)
      : Error(msg), condition(std::move(cond)) {}
};

}  // namespace qmanin
