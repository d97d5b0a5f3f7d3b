#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polycc/geometry.hpp"

namespace polycc {

struct BodyState {
  PlanarPoint position;
  PlanarPoint velocity;  // planar vector, length / time
};

using Snapshot = std::vector<BodyState>;

// Initial data for a rigid rotation at angular velocity omega (counterclockwise
// positive) about the mass center: x_j unchanged, v_j = omega * i * (x_j - c0).
// Total linear momentum is zero, so the mass center stays put.
Snapshot relative_equilibrium_state(const Configuration& config, double omega);

// a_k = sum_{j != k} m_j (x_j - x_k) / |x_j - x_k|^3.
// Throws CoincidentBodiesError when two positions coincide.
std::vector<PlanarPoint> accelerations(const Configuration& config);
std::vector<PlanarPoint> accelerations(std::span<const PlanarPoint> positions,
                                       std::span<const double> masses);

struct ConservedQuantities {
  double energy = 0.0;            // kinetic - sum m_j m_k / r_jk
  double angular_momentum = 0.0;  // sum m x cross v
  PlanarPoint linear_momentum;    // sum m v
};

ConservedQuantities conserved_quantities(std::span<const BodyState> state,
                                         std::span<const double> masses);

enum class Method { rk4, leapfrog };

std::string_view to_string(Method method);
// Throws DomainError for an unknown name.
Method parse_method(std::string_view name);

// Integration stops when any pair comes closer than this.
inline constexpr double kCloseApproachDistance = 1e-6;

struct CloseApproachEvent {
  double time = 0.0;
  std::size_t step = 0;
  std::size_t first = 0;  // 1-based body labels
  std::size_t second = 0;
  double distance = 0.0;
};

struct Trajectory {
  std::vector<double> masses;
  std::vector<double> times;
  std::vector<Snapshot> states;
  std::vector<double> energy_log;
  std::vector<double> angular_momentum_log;
  std::vector<PlanarPoint> linear_momentum_log;
  std::optional<CloseApproachEvent> close_approach;  // set when aborted early

  bool completed() const noexcept { return !close_approach.has_value(); }

  // max_t |E(t) - E(0)| / |E(0)|
  double relative_energy_drift() const;
  // max_t |L(t) - L(0)|
  double angular_momentum_drift() const;
  // max_t |P(t) - P(0)|
  double linear_momentum_drift() const;
};

// Fixed-step integration of n_steps steps, logging every snapshot. rk4 is
// the classical fourth-order scheme; leapfrog is kick-drift-kick and
// symplectic. On a close approach the trajectory is returned truncated with
// close_approach set. Throws DomainError for step <= 0, n_steps == 0 or a
// state/mass size mismatch.
Trajectory integrate(std::span<const BodyState> initial, std::span<const double> masses,
                     double step, std::size_t n_steps, Method method);

// max over snapshots and bodies of |x_j(t) - (c0 + e^{i omega t} (x_j(0) - c0))|,
// with c0 the mass center of config.
double rigid_rotation_error(const Trajectory& trajectory, const Configuration& config,
                            double omega);

// One row per (snapshot, body), header "t,body,x,y,vx,vy,energy,Lz,px,py".
// Body labels are 1-based; the conserved quantities repeat for every body of
// a snapshot.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace polycc
