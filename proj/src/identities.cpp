#include "polycc/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polycc/errors.hpp"
#include "polycc/geometry.hpp"
#include "polycc/summation.hpp"

namespace polycc {

namespace {

void require_polygon(int n) {
  if (n < 2) throw DomainError("identity needs N >= 2, got " + std::to_string(n));
}

}  // namespace

double csc_sum(int n) {
  require_polygon(n);
  CompensatedSum acc;
  for (int j = 1; j < n; ++j) {
    // sin(j*pi/N) = sin((N-j)*pi/N); fold to the smaller angle
    const int folded = std::min(j, n - j);
    acc += 1.0 / std::sin(std::numbers::pi * folded / n);
  }
  return 0.25 * acc.value();
}

std::complex<double> polygon_force_sum(int n) {
  require_polygon(n);
  CompensatedComplexSum acc;
  for (int j = 1; j < n; ++j) {
    // 1 - exp(i t) = 2 sin^2(t/2) - i sin t, free of cancellation near t = 0
    const int folded = std::min(j, n - j);
    const double half = std::numbers::pi * folded / n;
    const double s = std::sin(half);
    const double side = j == folded ? -2.0 * s * std::cos(half) : 2.0 * s * std::cos(half);
    const std::complex<double> gap{2.0 * s * s, side};
    const double r = 2.0 * s;
    acc += gap / (r * r * r);
  }
  return acc.value();
}

IdentityReport verify_cosecant_identity(int n) {
  IdentityReport report;
  report.n = n;
  report.lhs = polygon_force_sum(n);
  report.rhs = csc_sum(n);
  report.abs_difference = std::abs(report.lhs - report.rhs);
  return report;
}

IdentityReport verify_potential_identity(int n) {
  const auto q = regular_polygon_vertices(n);
  CompensatedSum pairs;
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t k = j + 1; k < q.size(); ++k) pairs += 1.0 / std::abs(q[j] - q[k]);
  }
  IdentityReport report;
  report.n = n;
  report.lhs = pairs.value() / n;
  report.rhs = polygon_force_sum(n).real();
  report.abs_difference = std::abs(report.lhs - report.rhs);
  return report;
}

}  // namespace polycc
