#ifndef BIKEGEO_ERRORS_HPP
#define BIKEGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bikegeo {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A quantity diverges at the requested point (e.g. K(1) = infinity).
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

// Requested data is undefined on the p = 0 circle branch.
class CircleBranchError : public Error {
 public:
  explicit CircleBranchError(const std::string& msg) : Error(msg) {}
};

// Aperiodic soliton/line parameters (a = 1, b = 0) where periods diverge.
class SolitonError : public Error {
 public:
  explicit SolitonError(const std::string& msg) : Error(msg) {}
};

// Degenerate geometric configuration (e.g. kappa^2 + b^2 = 0).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

// Operation does not apply to this kind of track (linear, circular, ...).
class NotApplicableError : public Error {
 public:
  explicit NotApplicableError(const std::string& msg) : Error(msg) {}
};

// Rigid registration residual above threshold.
class ExtractionError : public Error {
 public:
  explicit ExtractionError(const std::string& msg) : Error(msg) {}
};

// Shooting failed to converge from every restart.  Not a proof that no
// connecting geodesic exists.
class NoSolutionFound : public Error {
 public:
  explicit NoSolutionFound(const std::string& msg) : Error(msg) {}
};

}  // namespace bikegeo

#endif  // BIKEGEO_ERRORS_HPP
