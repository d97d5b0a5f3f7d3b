#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "polycc/central_config.hpp"
#include "polycc/dynamics.hpp"
#include "polycc/errors.hpp"
#include "polycc/identities.hpp"

using namespace polycc;

namespace {

constexpr double kPi = std::numbers::pi;

// Two unit masses a unit apart circling their midpoint: omega^2 = 2.
Configuration binary() { return Configuration({{-0.5, 0}, {0.5, 0}}, {1.0, 1.0}); }

double one_period_error(double step_fraction) {
  const auto config = binary();
  const double omega = std::sqrt(2.0);
  const double period = 2 * kPi / omega;
  const auto steps = static_cast<std::size_t>(step_fraction);
  const auto traj = integrate(relative_equilibrium_state(config, omega), config.masses(),
                              period / step_fraction, steps, Method::rk4);
  double worst = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    worst = std::max(worst, std::abs(traj.states.back()[k].position - config.positions()[k]));
  }
  return worst;
}

}  // namespace

TEST_CASE("relative equilibrium initial velocities") {
  const auto config = theorem_configuration(3, 1.0, 0.1);
  const auto state = relative_equilibrium_state(config, 1.0);
  CHECK(std::abs(state.back().velocity) < 1e-15);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(std::abs(state[j].velocity) - 1.0) < 1e-15);
    // counterclockwise: velocity is the position turned a quarter left
    CHECK(std::abs(state[j].velocity - PlanarPoint{0, 1} * state[j].position) < 1e-15);
  }

  const auto pair = relative_equilibrium_state(binary(), std::sqrt(2.0));
  CHECK(std::abs(std::abs(pair[0].velocity) - std::sqrt(2.0) / 2.0) < 1e-15);
  CHECK(std::abs(pair[0].velocity + pair[1].velocity) < 1e-15);

  for (const auto& body : relative_equilibrium_state(config, 0.0)) {
    CHECK(body.velocity == PlanarPoint{0, 0});
  }
}

TEST_CASE("accelerations") {
  const auto a = accelerations(binary());
  CHECK(std::abs(a[0] - PlanarPoint{1, 0}) < 1e-15);
  CHECK(std::abs(a[1] - PlanarPoint{-1, 0}) < 1e-15);

  // polygon without center: each body feels |a| = m * force sum
  for (int n = 2; n <= 12; ++n) {
    const double m = 0.8;
    const Configuration ring(regular_polygon_vertices(n), std::vector<double>(static_cast<std::size_t>(n), m));
    const auto acc = accelerations(ring);
    for (const auto& ak : acc) CHECK(std::abs(std::abs(ak) - m * csc_sum(n)) < 1e-13);
  }

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-2, 2);
  std::uniform_real_distribution<double> mass(0.1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PlanarPoint> x;
    std::vector<double> m;
    for (int k = 0; k < 6; ++k) {
      x.emplace_back(coord(rng), coord(rng));
      m.push_back(mass(rng));
    }
    const auto acc = accelerations(Configuration(x, m));
    PlanarPoint total{0, 0};
    double scale = 0.0;
    for (int k = 0; k < 6; ++k) {
      total += m[k] * acc[k];
      scale = std::max(scale, m[k] * std::abs(acc[k]));
    }
    CHECK(std::abs(total) < 1e-12 * std::max(1.0, scale));
  }

  const std::vector<PlanarPoint> same{{1, 1}, {1, 1}};
  const std::vector<double> masses{1, 1};
  CHECK_THROWS_AS(accelerations(same, masses), CoincidentBodiesError);
}

TEST_CASE("rk4 closes the binary orbit after one period") {
  CHECK(one_period_error(2000) < 1e-8);
}

TEST_CASE("rk4 step halving shows fourth-order convergence") {
  const double coarse = one_period_error(100);
  const double fine = one_period_error(200);
  const double ratio = coarse / fine;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("integrate bookkeeping and argument checks") {
  const auto config = binary();
  const auto state = relative_equilibrium_state(config, std::sqrt(2.0));
  const auto traj = integrate(state, config.masses(), 0.01, 10, Method::leapfrog);
  CHECK(traj.completed());
  CHECK(traj.times.size() == 11);
  CHECK(traj.states.size() == 11);
  CHECK(traj.energy_log.size() == 11);
  CHECK(traj.angular_momentum_log.size() == 11);
  CHECK(traj.linear_momentum_log.size() == 11);
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);

  CHECK_THROWS_AS(integrate(state, config.masses(), 0.0, 10, Method::rk4), DomainError);
  CHECK_THROWS_AS(integrate(state, config.masses(), -0.1, 10, Method::rk4), DomainError);
  CHECK_THROWS_AS(integrate(state, config.masses(), 0.1, 0, Method::rk4), DomainError);
  const std::vector<double> one_mass{1.0};
  CHECK_THROWS_AS(integrate(state, one_mass, 0.1, 10, Method::rk4), DomainError);

  CHECK(parse_method("rk4") == Method::rk4);
  CHECK(parse_method("leapfrog") == Method::leapfrog);
  CHECK_THROWS_AS(parse_method("euler"), DomainError);
}

TEST_CASE("conservation on a generic bound orbit") {
  // eccentric unit binary with a light companion far out: bounded, not rigid
  const double circular = std::sqrt(2.0) / 2.0;
  const std::vector<BodyState> state{{{-0.5, 0}, {0, -0.9 * circular}},
                                     {{0.5, 0}, {0, 0.9 * circular}},
                                     {{0, 5}, {-0.6, 0}}};
  const std::vector<double> masses{1.0, 1.0, 0.01};
  const double period = 2 * kPi / std::sqrt(2.0);

  const auto leap = integrate(state, masses, period / 2000.0, 10000, Method::leapfrog);
  REQUIRE(leap.completed());
  CHECK(leap.linear_momentum_drift() < 1e-12);
  CHECK(leap.angular_momentum_drift() < 1e-12);
  CHECK(leap.relative_energy_drift() < 1e-5);

  const auto rk = integrate(state, masses, period / 2000.0, 10000, Method::rk4);
  REQUIRE(rk.completed());
  CHECK(rk.linear_momentum_drift() < 1e-12);
  CHECK(rk.angular_momentum_drift() < 1e-8);
  CHECK(rk.relative_energy_drift() < 1e-8);
}

TEST_CASE("leapfrog energy drift on the N = 4 theorem configuration") {
  const auto config = theorem_configuration(4, 2.0, 0.5);
  const double omega = std::sqrt(2.0);
  const double period = 2 * kPi / omega;
  const auto traj = integrate(relative_equilibrium_state(config, omega), config.masses(),
                              period / 10000.0, 10000, Method::leapfrog);
  CHECK(traj.relative_energy_drift() < 1e-9);
  CHECK(traj.linear_momentum_drift() < 1e-12);
}

TEST_CASE("rigid rotation error") {
  const double omega = 1.0;
  const double period = 2 * kPi / omega;
  const auto config = theorem_configuration(3, 1.0, 0.1);
  const auto state = relative_equilibrium_state(config, omega);
  const auto traj = integrate(state, config.masses(), period / 4000.0, 4000, Method::rk4);
  const double baseline = rigid_rotation_error(traj, config, omega);
  CHECK(baseline < 1e-6);

  std::vector<double> masses(config.masses().begin(), config.masses().end());
  masses[0] *= 1.05;
  const auto heavier = config.with_masses(masses);
  const auto drift = integrate(relative_equilibrium_state(heavier, omega), heavier.masses(),
                               period / 4000.0, 4000, Method::rk4);
  CHECK(rigid_rotation_error(drift, heavier, omega) > 1e-2);

  const Configuration lonely({{0.3, -0.2}}, {2.0});
  const auto still = integrate(relative_equilibrium_state(lonely, 0.0), lonely.masses(), 0.1, 20,
                               Method::rk4);
  CHECK(rigid_rotation_error(still, lonely, 0.0) == 0.0);
}

TEST_CASE("central configurations rotate rigidly; perturbed ones do not") {
  for (int n = 2; n <= 8; ++n) {
    const auto config = theorem_configuration(n, 2.0, 0.5);
    const double omega = std::sqrt(2.0);
    const double period = 2 * kPi / omega;
    const auto traj = integrate(relative_equilibrium_state(config, omega), config.masses(),
                                period / 4000.0, 4000, Method::rk4);
    const double baseline = rigid_rotation_error(traj, config, omega);
    CHECK(baseline < 1e-5);
    CHECK(traj.linear_momentum_drift() < 1e-12);

    std::vector<double> masses(config.masses().begin(), config.masses().end());
    masses[0] *= 1.01;
    const auto perturbed = config.with_masses(masses);
    const auto off = integrate(relative_equilibrium_state(perturbed, omega), perturbed.masses(),
                               period / 4000.0, 4000, Method::rk4);
    CHECK(rigid_rotation_error(off, perturbed, omega) > 10.0 * baseline);
  }
}

TEST_CASE("close approach aborts with a partial trajectory") {
  // near-massless bodies coasting head-on meet at t = 0.5
  const std::vector<BodyState> state{{{-0.5, 0}, {1, 0}}, {{0.5, 0}, {-1, 0}}};
  const std::vector<double> masses{1e-12, 1e-12};
  for (Method method : {Method::rk4, Method::leapfrog}) {
    const auto traj = integrate(state, masses, 0.1, 20, method);
    REQUIRE_FALSE(traj.completed());
    CHECK(traj.close_approach->time == doctest::Approx(0.5));
    CHECK(traj.close_approach->first == 1);
    CHECK(traj.close_approach->second == 2);
    CHECK(traj.times.size() == 5);
  }
}

TEST_CASE("trajectory CSV export") {
  const auto config = binary();
  const auto traj = integrate(relative_equilibrium_state(config, std::sqrt(2.0)), config.masses(),
                              0.01, 3, Method::rk4);
  std::ostringstream out;
  write_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,body,x,y,vx,vy,energy,Lz,px,py");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == 8);
  std::getline(std::istringstream(out.str().substr(out.str().find('\n') + 1)), line);
  CHECK(line.rfind("0,1,-0.5,0,", 0) == 0);
}
