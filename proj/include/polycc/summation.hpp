#pragma once

#include <cmath>
#include <complex>

namespace polycc {

// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
// when an incoming term is larger than the running sum, which happens at the
// ends of cosecant sums where the summands blow up.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Componentwise compensated sum of complex terms.
class CompensatedComplexSum {
 public:
  CompensatedComplexSum& operator+=(std::complex<double> value) noexcept {
    re_.add(value.real());
    im_.add(value.imag());
    return *this;
  }

  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace polycc
