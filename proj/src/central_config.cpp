#include "polycc/central_config.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "polycc/circulant.hpp"
#include "polycc/errors.hpp"
#include "polycc/identities.hpp"
#include "polycc/summation.hpp"

namespace polycc {

namespace {

void require_omega_squared(double omega_squared) {
  if (!std::isfinite(omega_squared) || omega_squared <= 0.0) {
    throw DomainError("omega^2 must be positive and finite");
  }
}

void require_feasible(double omega_squared, double center_mass) {
  require_omega_squared(omega_squared);
  if (!std::isfinite(center_mass) || center_mass < 0.0) {
    throw DomainError("center mass must be non-negative and finite");
  }
  if (omega_squared <= center_mass) {
    throw InfeasibleError("infeasible: need omega^2 > center mass, got omega^2 = " +
                          std::to_string(omega_squared) +
                          " <= center mass = " + std::to_string(center_mass));
  }
}

}  // namespace

ResidualReport cc_residual(const Configuration& config, double omega_squared) {
  require_omega_squared(omega_squared);
  const auto x = config.positions();
  const auto m = config.masses();
  const PlanarPoint c0 = mass_center(config);

  ResidualReport report;
  report.omega_squared = omega_squared;
  report.per_body.reserve(config.size());
  for (std::size_t k = 0; k < config.size(); ++k) {
    CompensatedComplexSum pull;
    for (std::size_t j = 0; j < config.size(); ++j) {
      if (j == k) continue;
      const PlanarPoint d = x[j] - x[k];
      const double r = std::abs(d);
      if (r < kCoincidenceThreshold) throw CoincidentBodiesError(std::min(j, k) + 1, std::max(j, k) + 1, r);
      pull += m[j] * m[k] * d / (r * r * r);
    }
    pull += omega_squared * m[k] * (x[k] - c0);
    const PlanarPoint value = pull.value();
    report.per_body.push_back(value);
    report.sup_norm = std::max(report.sup_norm, std::abs(value));
  }
  return report;
}

double theorem_masses(int n, double omega_squared, double center_mass) {
  if (n < 2) throw DomainError("polygon needs N >= 2, got " + std::to_string(n));
  require_feasible(omega_squared, center_mass);
  return (omega_squared - center_mass) / csc_sum(n);
}

Configuration theorem_configuration(int n, double omega_squared, double center_mass) {
  const double m = theorem_masses(n, omega_squared, center_mass);
  if (center_mass > 0.0) return polygon_plus_center_configuration(n, m, center_mass);
  return Configuration(regular_polygon_vertices(n), std::vector<double>(static_cast<std::size_t>(n), m));
}

ForwardVerification verify_theorem_forward(int n, double omega_squared, double center_mass) {
  const Configuration config = theorem_configuration(n, omega_squared, center_mass);
  const ConfigurationMetrics mx = metrics(config);

  ForwardVerification out;
  out.residual = cc_residual(config, omega_squared);
  out.polygon_mass = config.masses()[0];
  out.center_mass = center_mass;
  out.mass_center = mx.mass_center;
  out.potential_U = mx.potential_U;
  out.inertia_I = mx.inertia_I;
  out.u_over_i = mx.potential_U / mx.inertia_I;
  out.omega_squared_gap = std::abs(omega_squared - out.u_over_i);
  return out;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::sum_condition:
      return "sum-condition";
    case Branch::omega_condition:
      return "omega-condition";
    case Branch::both:
      return "both";
    case Branch::neither:
      return "neither";
  }
  return "neither";
}

Branch classify_branch(std::span<const double> polygon_masses, double center_mass,
                       double omega_squared, double tolerance) {
  const int n = static_cast<int>(polygon_masses.size());
  CompensatedComplexSum weighted;
  CompensatedSum total;
  for (int j = 1; j <= n; ++j) {
    weighted += polygon_masses[j - 1] * root_of_unity(j, n);
    total += polygon_masses[j - 1];
  }
  total += center_mass;
  const bool sum_holds = std::abs(weighted.value()) < tolerance;
  const bool omega_holds = std::abs(omega_squared - total.value()) < tolerance * omega_squared;
  if (sum_holds && omega_holds) return Branch::both;
  if (sum_holds) return Branch::sum_condition;
  if (omega_holds) return Branch::omega_condition;
  return Branch::neither;
}

double max_deviation_from_equal(std::span<const double> masses) {
  if (masses.empty()) return 0.0;
  CompensatedSum total;
  for (double m : masses) total += m;
  const double mean = total.value() / static_cast<double>(masses.size());
  double worst = 0.0;
  for (double m : masses) worst = std::max(worst, std::abs(m - mean));
  return worst;
}

namespace {

Configuration family_configuration(int n, std::span<const double> polygon_masses, double center_mass) {
  if (center_mass > 0.0) return polygon_plus_center_configuration(n, polygon_masses, center_mass);
  return Configuration(regular_polygon_vertices(n),
                       std::vector<double>(polygon_masses.begin(), polygon_masses.end()));
}

MassSolution finish_solution(int n, double omega_squared, double center_mass, std::vector<double> masses) {
  MassSolution solution;
  solution.center_mass = center_mass;
  solution.branch = classify_branch(masses, center_mass, omega_squared);
  solution.max_deviation_from_equal = max_deviation_from_equal(masses);
  solution.final_residual =
      cc_residual(family_configuration(n, masses, center_mass), omega_squared).sup_norm;
  solution.masses = std::move(masses);
  return solution;
}

}  // namespace

MassSolution solve_masses_circulant(int n, double omega_squared, double center_mass) {
  if (n < 4) throw DomainError("circulant mass solve needs N >= 4, got " + std::to_string(n));
  require_feasible(omega_squared, center_mass);

  const CirculantMatrix a = build_A(n);
  const std::vector<Complex> rhs(static_cast<std::size_t>(n), Complex{omega_squared - center_mass, 0.0});
  const SpectralDecomposition spectrum = spectral_decomposition(a, rhs);

  double scale = 0.0;
  for (const Complex& alpha : spectrum.coefficients) scale = std::max(scale, std::abs(alpha));

  // Components of the right-hand side that vanish stay zero in the solution;
  // this also selects the solution orthogonal to any null direction of A.
  std::vector<Complex> alpha(spectrum.coefficients.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (std::abs(spectrum.coefficients[k]) <= 1e-13 * scale) continue;
    if (std::abs(spectrum.eigenvalues[k]) < kEigenvalueZeroTolerance) {
      throw NumericalError("eigenvalue lambda_" + std::to_string(k + 1) +
                           " vanishes but the right-hand side has a component along it");
    }
    alpha[k] = spectrum.coefficients[k] / spectrum.eigenvalues[k];
  }

  const std::vector<Complex> solved = reconstruct(alpha);
  std::vector<double> masses;
  masses.reserve(solved.size());
  for (const Complex& value : solved) {
    if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value.real()))) {
      throw NumericalError("circulant solve produced a complex mass");
    }
    masses.push_back(value.real());
  }
  if (*std::min_element(masses.begin(), masses.end()) <= 0.0) {
    throw InfeasibleError("circulant solve produced a non-positive mass");
  }
  return finish_solution(n, omega_squared, center_mass, std::move(masses));
}

std::vector<double> scaled_residual_vector(int n, double omega_squared, double center_mass,
                                           std::span<const double> polygon_masses) {
  const auto q = regular_polygon_vertices(n);
  CompensatedComplexSum weighted;
  CompensatedSum total;
  for (int j = 0; j < n; ++j) {
    weighted += polygon_masses[j] * q[j];
    total += polygon_masses[j];
  }
  total += center_mass;
  const PlanarPoint c0 = weighted.value() / total.value();

  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(n + 1));
  for (int k = 0; k < n; ++k) {
    CompensatedComplexSum acc;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const PlanarPoint d = q[j] - q[k];
      const double r = std::abs(d);
      acc += polygon_masses[j] * d / (r * r * r);
    }
    // central body at the origin, unit distance from every vertex
    acc += -center_mass * q[k];
    acc += omega_squared * (q[k] - c0);
    const PlanarPoint v = acc.value();
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  if (center_mass > 0.0) {
    const PlanarPoint v = weighted.value() - omega_squared * c0;
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

MassSolution solve_masses_newton(int n, double omega_squared, double center_mass,
                                 std::span<const double> initial_masses,
                                 const NewtonOptions& options) {
  if (n < 2) throw DomainError("polygon needs N >= 2, got " + std::to_string(n));
  require_feasible(omega_squared, center_mass);
  if (initial_masses.size() != static_cast<std::size_t>(n)) {
    throw DomainError("expected " + std::to_string(n) + " initial masses, got " +
                      std::to_string(initial_masses.size()));
  }
  for (double m : initial_masses) {
    if (!std::isfinite(m) || m <= 0.0) throw DomainError("initial masses must be positive");
  }

  using Vector = Eigen::VectorXd;
  auto residual_of = [&](const Vector& masses) {
    const auto r = scaled_residual_vector(n, omega_squared, center_mass,
                                          std::span<const double>(masses.data(), masses.size()));
    return Vector(Eigen::Map<const Vector>(r.data(), static_cast<Eigen::Index>(r.size())));
  };
  auto sup_residual = [&](const Vector& masses) {
    const std::vector<double> as_vector(masses.data(), masses.data() + masses.size());
    return cc_residual(family_configuration(n, as_vector, center_mass), omega_squared).sup_norm;
  };
  auto to_std = [](const Vector& masses) {
    return std::vector<double>(masses.data(), masses.data() + masses.size());
  };

  Vector masses = Eigen::Map<const Vector>(initial_masses.data(), n);
  Vector residual = residual_of(masses);
  Vector best = masses;
  double best_sup = sup_residual(masses);
  int converged_at = best_sup < options.tolerance ? 0 : -1;
  bool pinned_at_boundary = false;
  int iteration = 0;

  while (iteration < options.max_iterations) {
    if (converged_at >= 0 && iteration - converged_at >= options.polish_iterations) break;
    ++iteration;

    Eigen::MatrixXd jacobian(residual.size(), n);
    for (int j = 0; j < n; ++j) {
      const double h = options.fd_step * std::max(1.0, std::abs(masses[j]));
      Vector bumped = masses;
      bumped[j] += h;
      jacobian.col(j) = (residual_of(bumped) - residual) / h;
    }
    const Vector step = jacobian.colPivHouseholderQr().solve(-residual);

    const double current_norm = residual.norm();
    bool accepted = false;
    bool blocked_by_positivity = false;
    double scale = 1.0;
    for (int halving = 0; halving <= options.max_halvings; ++halving, scale *= 0.5) {
      const Vector trial = masses + scale * step;
      if (trial.minCoeff() <= 0.0) {
        blocked_by_positivity = true;
        continue;
      }
      Vector trial_residual = residual_of(trial);
      if (trial_residual.norm() < current_norm) {
        masses = trial;
        residual = std::move(trial_residual);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No descent left: either the floating-point floor of a root or the
      // iteration is pinned against the positivity boundary.
      pinned_at_boundary = blocked_by_positivity;
      break;
    }

    const double sup = sup_residual(masses);
    if (sup < best_sup) {
      best_sup = sup;
      best = masses;
    }
    if (converged_at < 0 && best_sup < options.tolerance) converged_at = iteration;
  }

  if (best_sup >= options.tolerance) {
    if (pinned_at_boundary) {
      throw InfeasibleError("Newton iteration driven to a non-positive mass (residual " +
                            std::to_string(best_sup) + ")");
    }
    throw ConvergenceError("Newton iteration did not converge after " + std::to_string(iteration) +
                               " iterations",
                           best_sup);
  }

  MassSolution solution = finish_solution(n, omega_squared, center_mass, to_std(best));
  solution.iterations = iteration;
  return solution;
}

}  // namespace polycc
