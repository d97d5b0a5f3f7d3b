#include "polycc/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polycc/errors.hpp"
#include "polycc/summation.hpp"

namespace polycc {

PlanarPoint root_of_unity(long long m, long long n) {
  long long r = m % n;
  if (r < 0) r += n;
  // evaluate on the upper half turn so that q^{n-r} is exactly conj(q^r)
  const bool lower = 2 * r > n;
  if (lower) r = n - r;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  const PlanarPoint q = std::polar(1.0, angle);
  return lower ? std::conj(q) : q;
}

std::vector<PlanarPoint> regular_polygon_vertices(int n) {
  if (n < 2) throw DomainError("regular polygon needs N >= 2, got " + std::to_string(n));
  std::vector<PlanarPoint> vertices;
  vertices.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) vertices.push_back(root_of_unity(j, n));
  return vertices;
}

namespace {

void validate_masses(std::span<const double> masses) {
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] <= 0.0) {
      throw DomainError("mass of body " + std::to_string(i + 1) + " must be positive and finite");
    }
  }
}

void validate_positions(std::span<const PlanarPoint> positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i].real()) || !std::isfinite(positions[i].imag())) {
      throw DomainError("position of body " + std::to_string(i + 1) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = std::abs(positions[j] - positions[i]);
      if (d < kCoincidenceThreshold) throw CoincidentBodiesError(i + 1, j + 1, d);
    }
  }
}

}  // namespace

Configuration::Configuration(std::vector<PlanarPoint> positions, std::vector<double> masses)
    : positions_(std::move(positions)), masses_(std::move(masses)) {
  if (positions_.empty()) throw DomainError("configuration has no bodies");
  if (positions_.size() != masses_.size()) {
    throw DomainError("configuration has " + std::to_string(positions_.size()) +
                      " positions but " + std::to_string(masses_.size()) + " masses");
  }
  validate_masses(masses_);
  validate_positions(positions_);
  CompensatedSum total;
  for (double m : masses_) total += m;
  total_mass_ = total.value();
}

Configuration Configuration::with_masses(std::vector<double> masses) const {
  return Configuration(positions_, std::move(masses));
}

Configuration Configuration::with_positions(std::vector<PlanarPoint> positions) const {
  return Configuration(std::move(positions), masses_);
}

Configuration polygon_plus_center_configuration(int n, std::span<const double> polygon_masses,
                                                double center_mass) {
  auto positions = regular_polygon_vertices(n);
  if (polygon_masses.size() != static_cast<std::size_t>(n)) {
    throw DomainError("expected " + std::to_string(n) + " polygon masses, got " +
                      std::to_string(polygon_masses.size()));
  }
  positions.emplace_back(0.0, 0.0);
  std::vector<double> masses(polygon_masses.begin(), polygon_masses.end());
  masses.push_back(center_mass);
  return Configuration(std::move(positions), std::move(masses));
}

Configuration polygon_plus_center_configuration(int n, double polygon_mass, double center_mass) {
  if (n < 2) throw DomainError("regular polygon needs N >= 2, got " + std::to_string(n));
  const std::vector<double> masses(static_cast<std::size_t>(n), polygon_mass);
  return polygon_plus_center_configuration(n, masses, center_mass);
}

PlanarPoint mass_center(const Configuration& config) {
  CompensatedComplexSum weighted;
  const auto x = config.positions();
  const auto m = config.masses();
  for (std::size_t j = 0; j < config.size(); ++j) weighted += m[j] * x[j];
  return weighted.value() / config.total_mass();
}

ConfigurationMetrics metrics(const Configuration& config) {
  const auto x = config.positions();
  const auto m = config.masses();
  const PlanarPoint c0 = mass_center(config);

  CompensatedSum potential;
  CompensatedSum inertia;
  for (std::size_t k = 0; k < config.size(); ++k) {
    for (std::size_t j = k + 1; j < config.size(); ++j) {
      const double r = std::abs(x[j] - x[k]);
      if (r < kCoincidenceThreshold) throw CoincidentBodiesError(k + 1, j + 1, r);
      potential += m[j] * m[k] / r;
    }
    inertia += m[k] * std::norm(x[k] - c0);
  }
  return {potential.value(), inertia.value(), c0};
}

}  // namespace polycc
