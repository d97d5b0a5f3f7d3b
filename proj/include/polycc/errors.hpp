#pragma once

#include <stdexcept>
#include <string>

namespace polycc {

// Base for every error raised by the library. The CLI maps each subclass to
// its own exit status, so keep the hierarchy flat and specific.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad N, index out of range,
// non-positive mass, length mismatch).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two bodies closer than the coincidence threshold.
class CoincidentBodiesError : public DomainError {
 public:
  CoincidentBodiesError(std::size_t first, std::size_t second, double distance)
      : DomainError("bodies " + std::to_string(first) + " and " +
                    std::to_string(second) + " coincide (distance " +
                    std::to_string(distance) + ")"),
        first_(first),
        second_(second),
        distance_(distance) {}

  // 1-based body labels.
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t first_;
  std::size_t second_;
  double distance_;
};

// Parameters admit no positive-mass solution, e.g. omega^2 <= center mass.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double final_residual)
      : Error(what), final_residual_(final_residual) {}

  double final_residual() const noexcept { return final_residual_; }

 private:
  double final_residual_;
};

// Internal numerical failure: lost bracket, singular system. Signals a bug
// or a degenerate input rather than a user error.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace polycc
