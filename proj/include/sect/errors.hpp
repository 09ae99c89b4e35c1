#pragma once

#include <stdexcept>
#include <string>

namespace sect {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct RingMismatch : Error {
  explicit RingMismatch(const std::string& msg = "elements belong to different rings") : Error(msg) {}
};

struct NonUnit : Error {
  explicit NonUnit(const std::string& msg = "inverse of a non-unit requested") : Error(msg) {}
};

struct NotDVR : Error {
  explicit NotDVR(const std::string& msg = "operation requires a discrete valuation ring") : Error(msg) {}
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& msg = "valuation reaches the truncation precision") : Error(msg) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& msg) : Error(msg) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& msg = "variable counts do not match") : Error(msg) {}
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos) : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct NotHypersurface : Error {
  explicit NotHypersurface(const std::string& msg = "model is not a hypersurface") : Error(msg) {}
};

struct PointNotOnFibre : Error {
  explicit PointNotOnFibre(const std::string& msg = "point does not lie on the special fibre") : Error(msg) {}
};

struct NotCompleteIntersection : Error {
  explicit NotCompleteIntersection(const std::string& msg) : Error(msg) {}
};

struct OracleDisagreement : Error {
  explicit OracleDisagreement(const std::string& msg) : Error(msg) {}
};

struct ChartInconsistency : Error {
  explicit ChartInconsistency(const std::string& msg) : Error(msg) {}
};

struct NotNormalized : Error {
  explicit NotNormalized(const std::string& msg = "local model must be normalized before blow-up") : Error(msg) {}
};

struct NonTermination : Error {
  explicit NonTermination(const std::string& msg) : Error(msg) {}
};

}  // namespace sect
