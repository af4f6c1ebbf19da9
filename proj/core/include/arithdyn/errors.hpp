#ifndef ARITHDYN_ERRORS_HPP
#define ARITHDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arithdyn {

struct ZeroInput : std::invalid_argument {
  explicit ZeroInput(const std::string& m = "input must be nonzero") : std::invalid_argument(m) {}
};

struct DegreeOne : std::invalid_argument {
  explicit DegreeOne(const std::string& m = "map must have degree >= 2") : std::invalid_argument(m) {}
};

struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& m) : std::runtime_error(m) {}
};

struct CoefficientBlowup : std::runtime_error {
  explicit CoefficientBlowup(const std::string& m) : std::runtime_error(m) {}
};

struct DegreeBudgetExceeded : std::runtime_error {
  explicit DegreeBudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct ReducibleMinimalPolynomial : std::invalid_argument {
  explicit ReducibleMinimalPolynomial(const std::string& m) : std::invalid_argument(m) {}
};

struct NotRegular : std::invalid_argument {
  explicit NotRegular(const std::string& m) : std::invalid_argument(m) {}
};

struct NotPeriodic : std::invalid_argument {
  explicit NotPeriodic(const std::string& m) : std::invalid_argument(m) {}
};

struct PowerMapDegenerate : std::invalid_argument {
  explicit PowerMapDegenerate(const std::string& m) : std::invalid_argument(m) {}
};

struct SpecialInput : std::invalid_argument {
  explicit SpecialInput(const std::string& m) : std::invalid_argument(m) {}
};

struct PreconditionViolated : std::invalid_argument {
  explicit PreconditionViolated(const std::string& m) : std::invalid_argument(m) {}
};

struct PositiveDimensional : std::runtime_error {
  explicit PositiveDimensional(const std::string& m) : std::runtime_error(m) {}
};

struct RootIsolationFailure : std::runtime_error {
  explicit RootIsolationFailure(const std::string& m) : std::runtime_error(m) {}
};

struct MismatchedKinds : std::invalid_argument {
  explicit MismatchedKinds(const std::string& m) : std::invalid_argument(m) {}
};

// Map-spec / point-spec parse failure; position is a 0-based column into the input.
struct ParseError : std::invalid_argument {
  size_t position;
  ParseError(const std::string& m, size_t pos)
      : std::invalid_argument(m + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace arithdyn

#endif
