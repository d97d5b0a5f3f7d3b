#pragma once

namespace polycc {

// Three bodies on a line, normalized so body 1 sits at 0, body 2 at 1 and
// body 3 at Q with 0 < Q < 1. Only this ordering is handled; callers relabel
// the bodies for the other two.
struct EulerProblem {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};

// Throws DomainError unless all three masses are positive and finite.
void validate(const EulerProblem& problem);

// (m3/Q^2 + m2) / (m3 Q + m2) - (m1 + m3/(1-Q)^2) / (m1 + m3 (1-Q)).
//
// Zero exactly when the collinear arrangement is central. Tends to +inf as
// Q -> 0 and -inf as Q -> 1. Throws DomainError for Q outside (0, 1).
double euler_residual(const EulerProblem& problem, double q);

struct EulerRootOptions {
  double bracket_margin = 1e-9;  // search (margin, 1 - margin)
  double bisection_width = 1e-8;
  double newton_step = 1e-7;     // central-difference step for the derivative
  double tolerance = 1e-13;      // target |residual|
  int max_newton_iterations = 50;
};

// The root Q* of euler_residual in (0, 1): bisection down to a narrow
// bracket, then Newton polish kept inside the bracket. Throws NumericalError
// if the residual has the same sign at both ends of the search interval.
double solve_Q(const EulerProblem& problem, const EulerRootOptions& options = {});

// Residual at Q = 1/2: with the third body at the midpoint the collinear
// condition reduces to a relation between m1 and m2 that vanishes only for
// m1 == m2.
double midpoint_mass_equality_check(double m1, double m2, double m3);

}  // namespace polycc
