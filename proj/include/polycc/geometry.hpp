#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polycc {

// Units: G = 1 throughout. The equations of motion are written without a
// gravitational constant, so masses carry units of length^3 / time^2.

// A point of the plane read as the complex number re + i*im.
using PlanarPoint = std::complex<double>;

// Pairwise distances below this are rejected as coincident bodies.
inline constexpr double kCoincidenceThreshold = 1e-12;

// exp(2*pi*i*m/n), with m reduced mod n before the angle is formed so that
// large or negative exponents cost no accuracy.
PlanarPoint root_of_unity(long long m, long long n);

// Vertices q_j = exp(2*pi*i*j/N), j = 1..N, of the regular N-gon on the unit
// circle. Element j-1 holds q_j, so the last element is (1, 0).
// Throws DomainError for N < 2.
std::vector<PlanarPoint> regular_polygon_vertices(int n);

// Positions and strictly positive masses of a set of point bodies.
//
// Storage is zero-based; reports label bodies 1..size(). For the polygon
// family the polygon bodies come first and the central body is last.
class Configuration {
 public:
  // Throws DomainError on size mismatch, empty input, non-finite values or
  // non-positive masses, and CoincidentBodiesError when two positions are
  // closer than kCoincidenceThreshold.
  Configuration(std::vector<PlanarPoint> positions, std::vector<double> masses);

  std::size_t size() const noexcept { return positions_.size(); }
  std::span<const PlanarPoint> positions() const noexcept { return positions_; }
  std::span<const double> masses() const noexcept { return masses_; }
  double total_mass() const noexcept { return total_mass_; }

  // Same positions, new masses (validated).
  Configuration with_masses(std::vector<double> masses) const;
  // Same masses, new positions (validated).
  Configuration with_positions(std::vector<PlanarPoint> positions) const;

 private:
  std::vector<PlanarPoint> positions_;
  std::vector<double> masses_;
  double total_mass_ = 0.0;
};

// Regular N-gon bodies with the given masses, followed by a central body at
// the origin. Throws DomainError for N < 2, a wrong number of polygon masses
// or a non-positive mass.
Configuration polygon_plus_center_configuration(int n, std::span<const double> polygon_masses,
                                                double center_mass);

// Convenience overload for the equal-mass family.
Configuration polygon_plus_center_configuration(int n, double polygon_mass, double center_mass);

// c0 = sum m_j x_j / sum m_j.
PlanarPoint mass_center(const Configuration& config);

struct ConfigurationMetrics {
  double potential_U = 0.0;  // sum_{k<j} m_j m_k / |x_j - x_k|
  double inertia_I = 0.0;    // sum_j m_j |x_j - c0|^2
  PlanarPoint mass_center;   // c0
};

ConfigurationMetrics metrics(const Configuration& config);

}  // namespace polycc
