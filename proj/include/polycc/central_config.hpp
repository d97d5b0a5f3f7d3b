#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "polycc/geometry.hpp"

namespace polycc {

// Per-body imbalance of the central-configuration equations
//
//   sum_{j != k} m_j m_k (x_j - x_k) / |x_j - x_k|^3 + omega^2 m_k (x_k - c0)
//
// with c0 recomputed from the configuration's own masses. A configuration is
// central for omega^2 exactly when every entry vanishes.
struct ResidualReport {
  std::vector<PlanarPoint> per_body;
  double sup_norm = 0.0;  // max_k |per_body[k]|
  double omega_squared = 0.0;
};

// Throws DomainError for omega_squared <= 0 or non-finite.
ResidualReport cc_residual(const Configuration& config, double omega_squared);

// The common polygon mass that makes the regular N-gon plus a central body a
// central configuration with angular velocity omega:
//
//   m = (omega^2 - center_mass) / S(N),   S(N) = (1/4) sum csc(j*pi/N).
//
// center_mass may be zero (no central body). Throws InfeasibleError when
// omega_squared <= center_mass and DomainError for N < 2.
double theorem_masses(int n, double omega_squared, double center_mass);

// Regular N-gon carrying theorem_masses(n, omega_squared, center_mass) at
// every vertex, plus the central body at the origin when center_mass > 0.
Configuration theorem_configuration(int n, double omega_squared, double center_mass);

// Forward check of the mass formula: residual of the constructed
// configuration plus the virial cross-check omega^2 = U / I.
struct ForwardVerification {
  ResidualReport residual;
  double polygon_mass = 0.0;
  double center_mass = 0.0;
  PlanarPoint mass_center;
  double potential_U = 0.0;
  double inertia_I = 0.0;
  double u_over_i = 0.0;
  double omega_squared_gap = 0.0;  // |omega^2 - U/I|
};

ForwardVerification verify_theorem_forward(int n, double omega_squared, double center_mass);

// Which alternative of the central body's equation a solution satisfies:
// the polygon's weighted vertex sum vanishes, or omega^2 equals the total
// mass. Both can hold at once.
enum class Branch { sum_condition, omega_condition, both, neither };

std::string_view to_string(Branch branch);

inline constexpr double kBranchTolerance = 1e-8;

// |sum m_j q_j| < tol -> sum condition; |omega^2 - total| < tol * omega^2 ->
// omega condition.
Branch classify_branch(std::span<const double> polygon_masses, double center_mass,
                       double omega_squared, double tolerance = kBranchTolerance);

struct MassSolution {
  std::vector<double> masses;  // polygon bodies 1..N
  double center_mass = 0.0;
  Branch branch = Branch::neither;
  double max_deviation_from_equal = 0.0;  // max_j |m_j - mean(m)|
  int iterations = 0;                     // Newton only
  double final_residual = 0.0;            // sup norm of cc_residual at the solution
};

double max_deviation_from_equal(std::span<const double> masses);

// Solves A m = (omega^2 - center_mass) nu_1 for the polygon masses by
// decomposing the right-hand side in the Fourier eigenbasis and dividing by
// the eigenvalues of A. Throws InfeasibleError when omega_squared <=
// center_mass, DomainError for N < 4, NumericalError if a needed eigenvalue
// vanishes.
MassSolution solve_masses_circulant(int n, double omega_squared, double center_mass);

struct NewtonOptions {
  int max_iterations = 200;
  double tolerance = 1e-11;  // sup norm of cc_residual
  int max_halvings = 30;
  double fd_step = 1e-7;  // relative forward-difference step
  int polish_iterations = 3;  // extra steps after tolerance while still improving
};

// Damped Gauss-Newton on the full central-configuration system of the
// polygon-plus-center family with the polygon masses as unknowns; positions,
// omega^2 and the central mass stay fixed and c0 moves with the trial masses.
//
// Throws InfeasibleError for omega_squared <= center_mass or when the
// iteration is driven to a non-positive mass, ConvergenceError when the
// tolerance is not met in max_iterations, DomainError for bad arguments.
MassSolution solve_masses_newton(int n, double omega_squared, double center_mass,
                                 std::span<const double> initial_masses,
                                 const NewtonOptions& options = {});

// Residual of the Newton system: cc_residual with row k divided by m_k,
// flattened as (re_1, im_1, ..., re_{N+1}, im_{N+1}). Exposed for tests.
std::vector<double> scaled_residual_vector(int n, double omega_squared, double center_mass,
                                           std::span<const double> polygon_masses);

}  // namespace polycc
