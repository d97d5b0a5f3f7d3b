#pragma once

#include <complex>

namespace polycc {

// Both sides of a summation identity evaluated independently.
struct IdentityReport {
  int n = 0;
  std::complex<double> lhs;
  double rhs = 0.0;
  double abs_difference = 0.0;  // |lhs - rhs|
};

// S(N) = (1/4) * sum_{j=1}^{N-1} csc(j*pi/N). Positive, increasing in N.
// Throws DomainError for N < 2.
double csc_sum(int n);

// sum_{j=1}^{N-1} (1 - q_j) / |1 - q_j|^3 over the N-th roots of unity q_j.
// The imaginary parts cancel in conjugate pairs.
std::complex<double> polygon_force_sum(int n);

// lhs: the complex force sum above; rhs: csc_sum(N). The difference is taken
// on the complex value so a surviving imaginary part also fails the check.
IdentityReport verify_cosecant_identity(int n);

// lhs: (1/N) * sum_{1<=j<k<=N} 1/|q_j - q_k| (mean pair potential per body);
// rhs: real part of the force sum.
IdentityReport verify_potential_identity(int n);

}  // namespace polycc
