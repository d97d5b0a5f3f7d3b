#include "polycc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "polycc/errors.hpp"
#include "polycc/summation.hpp"

namespace polycc {

Snapshot relative_equilibrium_state(const Configuration& config, double omega) {
  const PlanarPoint c0 = mass_center(config);
  const PlanarPoint quarter_turn{0.0, 1.0};
  Snapshot state;
  state.reserve(config.size());
  for (const PlanarPoint& x : config.positions()) {
    state.push_back({x, omega * quarter_turn * (x - c0)});
  }
  return state;
}

std::vector<PlanarPoint> accelerations(std::span<const PlanarPoint> positions,
                                       std::span<const double> masses) {
  const std::size_t n = positions.size();
  std::vector<PlanarPoint> acc(n, PlanarPoint{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      const PlanarPoint d = positions[j] - positions[k];
      const double r = std::abs(d);
      if (r < kCoincidenceThreshold) throw CoincidentBodiesError(k + 1, j + 1, r);
      const PlanarPoint unit_pull = d / (r * r * r);
      acc[k] += masses[j] * unit_pull;
      acc[j] -= masses[k] * unit_pull;
    }
  }
  return acc;
}

std::vector<PlanarPoint> accelerations(const Configuration& config) {
  return accelerations(config.positions(), config.masses());
}

ConservedQuantities conserved_quantities(std::span<const BodyState> state,
                                         std::span<const double> masses) {
  CompensatedSum kinetic;
  CompensatedSum potential;
  CompensatedSum angular;
  CompensatedComplexSum momentum;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const auto& [x, v] = state[k];
    kinetic += 0.5 * masses[k] * std::norm(v);
    angular += masses[k] * (x.real() * v.imag() - x.imag() * v.real());
    momentum += masses[k] * v;
    for (std::size_t j = k + 1; j < state.size(); ++j) {
      potential += masses[j] * masses[k] / std::abs(state[j].position - x);
    }
  }
  return {kinetic.value() - potential.value(), angular.value(), momentum.value()};
}

std::string_view to_string(Method method) {
  return method == Method::rk4 ? "rk4" : "leapfrog";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "leapfrog") return Method::leapfrog;
  throw DomainError("unknown integration method '" + std::string(name) + "'");
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> closest_pair_below(
    std::span<const BodyState> state, double threshold, double& distance) {
  for (std::size_t k = 0; k < state.size(); ++k) {
    for (std::size_t j = k + 1; j < state.size(); ++j) {
      const double r = std::abs(state[j].position - state[k].position);
      if (r < threshold) {
        distance = r;
        return std::pair{k, j};
      }
    }
  }
  return std::nullopt;
}

std::vector<PlanarPoint> positions_of(std::span<const BodyState> state) {
  std::vector<PlanarPoint> x;
  x.reserve(state.size());
  for (const auto& body : state) x.push_back(body.position);
  return x;
}

Snapshot rk4_step(const Snapshot& s, std::span<const double> masses, double h) {
  const std::size_t n = s.size();
  auto shifted = [&](const std::vector<PlanarPoint>& dx, double scale) {
    std::vector<PlanarPoint> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = s[k].position + scale * dx[k];
    return x;
  };
  std::vector<PlanarPoint> v0(n);
  for (std::size_t k = 0; k < n; ++k) v0[k] = s[k].velocity;

  const auto a1 = accelerations(positions_of(s), masses);
  std::vector<PlanarPoint> v1 = v0;
  std::vector<PlanarPoint> v2(n), v3(n), v4(n);
  for (std::size_t k = 0; k < n; ++k) v2[k] = v0[k] + 0.5 * h * a1[k];
  const auto a2 = accelerations(shifted(v1, 0.5 * h), masses);
  for (std::size_t k = 0; k < n; ++k) v3[k] = v0[k] + 0.5 * h * a2[k];
  const auto a3 = accelerations(shifted(v2, 0.5 * h), masses);
  for (std::size_t k = 0; k < n; ++k) v4[k] = v0[k] + h * a3[k];
  const auto a4 = accelerations(shifted(v3, h), masses);

  Snapshot next(n);
  for (std::size_t k = 0; k < n; ++k) {
    next[k].position = s[k].position + (h / 6.0) * (v1[k] + 2.0 * v2[k] + 2.0 * v3[k] + v4[k]);
    next[k].velocity = v0[k] + (h / 6.0) * (a1[k] + 2.0 * a2[k] + 2.0 * a3[k] + a4[k]);
  }
  return next;
}

}  // namespace

Trajectory integrate(std::span<const BodyState> initial, std::span<const double> masses,
                     double step, std::size_t n_steps, Method method) {
  if (!std::isfinite(step) || step <= 0.0) throw DomainError("step must be positive");
  if (n_steps == 0) throw DomainError("n_steps must be positive");
  if (initial.size() != masses.size() || initial.empty()) {
    throw DomainError("state and mass counts differ");
  }
  for (double m : masses) {
    if (!std::isfinite(m) || m <= 0.0) throw DomainError("masses must be positive");
  }
  for (const auto& body : initial) {
    if (!std::isfinite(body.position.real()) || !std::isfinite(body.position.imag()) ||
        !std::isfinite(body.velocity.real()) || !std::isfinite(body.velocity.imag())) {
      throw DomainError("initial state is not finite");
    }
  }

  Trajectory traj;
  traj.masses.assign(masses.begin(), masses.end());
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);

  auto record = [&](double t, Snapshot s) {
    const auto q = conserved_quantities(s, masses);
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
    traj.energy_log.push_back(q.energy);
    traj.angular_momentum_log.push_back(q.angular_momentum);
    traj.linear_momentum_log.push_back(q.linear_momentum);
  };

  Snapshot state(initial.begin(), initial.end());
  double distance = 0.0;
  if (auto pair = closest_pair_below(state, kCloseApproachDistance, distance)) {
    traj.close_approach = CloseApproachEvent{0.0, 0, pair->first + 1, pair->second + 1, distance};
    return traj;
  }
  record(0.0, state);

  // leapfrog reuses the closing kick's accelerations for the next opening kick
  std::vector<PlanarPoint> acc;
  if (method == Method::leapfrog) acc = accelerations(positions_of(state), masses);

  const std::size_t n = state.size();
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * step;
    try {
      if (method == Method::rk4) {
        state = rk4_step(state, masses, step);
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          state[k].velocity += 0.5 * step * acc[k];
          state[k].position += step * state[k].velocity;
        }
        if (!closest_pair_below(state, kCloseApproachDistance, distance)) {
          acc = accelerations(positions_of(state), masses);
          for (std::size_t k = 0; k < n; ++k) state[k].velocity += 0.5 * step * acc[k];
        }
      }
    } catch (const CoincidentBodiesError& e) {
      // an intermediate stage hit a collision
      traj.close_approach = CloseApproachEvent{t, i, e.first(), e.second(), e.distance()};
      return traj;
    }
    if (auto pair = closest_pair_below(state, kCloseApproachDistance, distance)) {
      traj.close_approach = CloseApproachEvent{t, i, pair->first + 1, pair->second + 1, distance};
      return traj;
    }
    record(t, state);
  }
  return traj;
}

double Trajectory::relative_energy_drift() const {
  if (energy_log.empty()) return 0.0;
  const double e0 = energy_log.front();
  double worst = 0.0;
  for (double e : energy_log) worst = std::max(worst, std::abs(e - e0));
  return e0 == 0.0 ? worst : worst / std::abs(e0);
}

double Trajectory::angular_momentum_drift() const {
  if (angular_momentum_log.empty()) return 0.0;
  double worst = 0.0;
  for (double l : angular_momentum_log) worst = std::max(worst, std::abs(l - angular_momentum_log.front()));
  return worst;
}

double Trajectory::linear_momentum_drift() const {
  if (linear_momentum_log.empty()) return 0.0;
  double worst = 0.0;
  for (const auto& p : linear_momentum_log) worst = std::max(worst, std::abs(p - linear_momentum_log.front()));
  return worst;
}

double rigid_rotation_error(const Trajectory& trajectory, const Configuration& config,
                            double omega) {
  const PlanarPoint c0 = mass_center(config);
  const auto x0 = config.positions();
  double worst = 0.0;
  for (std::size_t s = 0; s < trajectory.states.size(); ++s) {
    const PlanarPoint rotation = std::polar(1.0, omega * trajectory.times[s]);
    const Snapshot& snap = trajectory.states[s];
    for (std::size_t j = 0; j < snap.size() && j < x0.size(); ++j) {
      const PlanarPoint ideal = c0 + rotation * (x0[j] - c0);
      worst = std::max(worst, std::abs(snap[j].position - ideal));
    }
  }
  return worst;
}

void write_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,body,x,y,vx,vy,energy,Lz,px,py\n";
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  for (std::size_t s = 0; s < trajectory.states.size(); ++s) {
    const double t = trajectory.times[s];
    const double e = trajectory.energy_log[s];
    const double lz = trajectory.angular_momentum_log[s];
    const PlanarPoint p = trajectory.linear_momentum_log[s];
    const Snapshot& snap = trajectory.states[s];
    for (std::size_t k = 0; k < snap.size(); ++k) {
      out << t << ',' << (k + 1) << ',' << snap[k].position.real() << ','
          << snap[k].position.imag() << ',' << snap[k].velocity.real() << ','
          << snap[k].velocity.imag() << ',' << e << ',' << lz << ',' << p.real() << ','
          << p.imag() << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace polycc
