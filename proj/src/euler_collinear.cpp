#include "polycc/euler_collinear.hpp"

#include <cmath>
#include <string>

#include "polycc/errors.hpp"

namespace polycc {

void validate(const EulerProblem& problem) {
  for (double m : {problem.m1, problem.m2, problem.m3}) {
    if (!std::isfinite(m) || m <= 0.0) throw DomainError("Euler problem masses must be positive");
  }
}

double euler_residual(const EulerProblem& problem, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("Q must lie in (0, 1), got " + std::to_string(q));
  }
  const double p = 1.0 - q;
  const auto& [m1, m2, m3] = problem;
  const double left = (m3 / (q * q) + m2) / (m3 * q + m2);
  const double right = (m1 + m3 / (p * p)) / (m1 + m3 * p);
  return left - right;
}

double solve_Q(const EulerProblem& problem, const EulerRootOptions& options) {
  validate(problem);

  double lo = options.bracket_margin;
  double hi = 1.0 - options.bracket_margin;
  double f_lo = euler_residual(problem, lo);
  const double f_hi = euler_residual(problem, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NumericalError("Euler residual does not change sign on (" + std::to_string(lo) + ", " +
                         std::to_string(hi) + ")");
  }

  while (hi - lo > options.bisection_width) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = euler_residual(problem, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  double q = 0.5 * (lo + hi);
  double f = euler_residual(problem, q);
  double best_q = q;
  double best_f = std::abs(f);
  const double h = options.newton_step;
  for (int i = 0; i < options.max_newton_iterations && best_f >= options.tolerance; ++i) {
    const double a = std::max(q - h, 0.5 * q);
    const double b = std::min(q + h, 0.5 * (q + 1.0));
    const double slope = (euler_residual(problem, b) - euler_residual(problem, a)) / (b - a);
    double next = q - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double f_next = euler_residual(problem, next);
    // keep the bracket valid as Newton walks
    if ((f_next > 0.0) == (f_lo > 0.0)) {
      lo = next;
      f_lo = f_next;
    } else {
      hi = next;
    }
    if (next == q) break;
    q = next;
    f = f_next;
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best_q = q;
    }
  }
  return best_q;
}

double midpoint_mass_equality_check(double m1, double m2, double m3) {
  const EulerProblem problem{m1, m2, m3};
  validate(problem);
  return euler_residual(problem, 0.5);
}

}  // namespace polycc
