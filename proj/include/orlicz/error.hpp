#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orlicz {

enum class ErrorKind {
  non_evaluable,
  budget_exceeded,
  inconclusive,
  no_sign_change,
  non_convergence,
  bad_parameter,
  bad_alpha,
  mass_overflow,
  not_dominated,
  divergent_modular,
  parse_error,
  internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_evaluable: return "NonEvaluable";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::inconclusive: return "Inconclusive";
    case ErrorKind::no_sign_change: return "NoSignChange";
    case ErrorKind::non_convergence: return "NonConvergence";
    case ErrorKind::bad_parameter: return "BadParameter";
    case ErrorKind::bad_alpha: return "BadAlpha";
    case ErrorKind::mass_overflow: return "MassOverflow";
    case ErrorKind::not_dominated: return "NotDominated";
    case ErrorKind::divergent_modular: return "DivergentModular";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::internal: return "InternalError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orlicz
