#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ivpp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// algebra

class ArityError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NothingToEliminateError : public Error {
 public:
  using Error::Error;
};

/// Raised by exact division when the divisor does not divide; carries the
/// remainder that could not be reduced (printed form).
class InexactDivisionError : public Error {
 public:
  InexactDivisionError(const std::string& what, std::string remainder)
      : Error(what), remainder_(std::move(remainder)) {}
  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Root finder did not converge; residuals |p(r_i)| at the last iterate.
class RootConvergenceError : public Error {
 public:
  RootConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// catalog / maps

class UnknownMapError : public Error {
 public:
  using Error::Error;
};

class MissingParameterError : public Error {
 public:
  using Error::Error;
};

class UnknownParameterError : public Error {
 public:
  using Error::Error;
};

class DegenerateParametersError : public Error {
 public:
  using Error::Error;
};

/// A denominator vanished (within tolerance). `step` is the orbit step at
/// which it happened, or 0 for a single evaluation.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what, std::size_t step = 0)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class BranchSelectionError : public Error {
 public:
  using Error::Error;
};

// varieties / elimination / families

class UnknownVarietyError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class EliminationError : public Error {
 public:
  using Error::Error;
};

class DegenerateFamilyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivpp
