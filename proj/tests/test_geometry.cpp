#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polycc/errors.hpp"
#include "polycc/geometry.hpp"
#include "polycc/identities.hpp"

using namespace polycc;

namespace {

bool near(PlanarPoint a, PlanarPoint b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("regular polygon vertices: small cases") {
  const double s3 = std::sqrt(3.0) / 2.0;

  auto two = regular_polygon_vertices(2);
  REQUIRE(two.size() == 2);
  CHECK(near(two[0], {-1, 0}, 1e-15));
  CHECK(near(two[1], {1, 0}, 1e-15));

  auto three = regular_polygon_vertices(3);
  CHECK(near(three[0], {-0.5, s3}, 1e-15));
  CHECK(near(three[1], {-0.5, -s3}, 1e-15));
  CHECK(near(three[2], {1, 0}, 1e-15));

  auto four = regular_polygon_vertices(4);
  CHECK(near(four[0], {0, 1}, 1e-15));
  CHECK(near(four[1], {-1, 0}, 1e-15));
  CHECK(near(four[2], {0, -1}, 1e-15));
  CHECK(near(four[3], {1, 0}, 1e-15));

  CHECK_THROWS_AS(regular_polygon_vertices(1), DomainError);
  CHECK_THROWS_AS(regular_polygon_vertices(-3), DomainError);
}

TEST_CASE("regular polygon vertices lie on the unit circle and sum to zero") {
  for (int n = 2; n <= 64; ++n) {
    const auto q = regular_polygon_vertices(n);
    PlanarPoint total{0, 0};
    for (const auto& p : q) {
      CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
      total += p;
    }
    CHECK(std::abs(total) < 1e-13);
    CHECK(q.back() == PlanarPoint{1.0, 0.0});
  }
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(Configuration({{0, 0}, {1, 0}}, {1.0}), DomainError);
  CHECK_THROWS_AS(Configuration({}, {}), DomainError);
  CHECK_THROWS_AS(Configuration({{0, 0}, {1, 0}}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Configuration({{0, 0}, {1, 0}}, {1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(Configuration({{0, 0}, {NAN, 0}}, {1.0, 1.0}), DomainError);

  SUBCASE("coincident bodies carry 1-based labels") {
    try {
      Configuration({{0, 0}, {1, 0}, {1, 0.5e-12}}, {1.0, 1.0, 1.0});
      FAIL("expected CoincidentBodiesError");
    } catch (const CoincidentBodiesError& e) {
      CHECK(e.first() == 2);
      CHECK(e.second() == 3);
    }
  }
  CHECK_NOTHROW(Configuration({{0, 0}, {1, 0}, {1, 2e-12}}, {1.0, 1.0, 1.0}));

  const double bad[] = {1.0, -1.0};
  CHECK_THROWS_AS(polygon_plus_center_configuration(2, bad, 1.0), DomainError);
  CHECK_THROWS_AS(polygon_plus_center_configuration(3, 1.0, 0.0), DomainError);
  const double three[] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(polygon_plus_center_configuration(2, three, 1.0), DomainError);
}

TEST_CASE("polygon plus center construction") {
  const double two[] = {1.0, 1.0};
  const auto c2 = polygon_plus_center_configuration(2, two, 0.5);
  REQUIRE(c2.size() == 3);
  CHECK(near(c2.positions()[0], {-1, 0}, 1e-15));
  CHECK(near(c2.positions()[1], {1, 0}, 1e-15));
  CHECK(c2.positions()[2] == PlanarPoint{0, 0});
  CHECK(c2.masses()[2] == 0.5);

  const auto c3 = polygon_plus_center_configuration(3, 1.0, 2.0);
  CHECK(c3.size() == 4);
  CHECK(std::abs(mass_center(c3)) < 1e-15);

  // Oracle: weighted sum by hand. Only the extra unit of mass on q_2 survives.
  const double five[] = {1.0, 2.0, 1.0, 1.0, 1.0};
  const auto c5 = polygon_plus_center_configuration(5, five, 1.0);
  const PlanarPoint expected =
      PlanarPoint{std::cos(4 * std::numbers::pi / 5), std::sin(4 * std::numbers::pi / 5)} / 7.0;
  CHECK(near(mass_center(c5), expected, 1e-15));
  CHECK(std::abs(mass_center(c5)) > 0.1);
}

TEST_CASE("mass center") {
  const Configuration pair({{0, 0}, {4, 0}}, {1.0, 3.0});
  CHECK(near(mass_center(pair), {3, 0}, 1e-15));

  const double masses[] = {2.0, 1.0, 1.0, 1.0};
  const auto c4 = polygon_plus_center_configuration(4, masses, 1.0);
  CHECK(near(mass_center(c4), {0.0, 1.0 / 6.0}, 1e-15));

  for (int n = 2; n <= 64; ++n) {
    CHECK(std::abs(mass_center(polygon_plus_center_configuration(n, 1.3, 0.7))) < 1e-14);
  }
}

TEST_CASE("mass center is translation equivariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> mass(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PlanarPoint> x;
    std::vector<double> m;
    for (int k = 0; k < 6; ++k) {
      x.emplace_back(coord(rng), coord(rng));
      m.push_back(mass(rng));
    }
    const Configuration base(x, m);
    // power-of-two shift keeps the translated coordinates exact
    const PlanarPoint shift{0.5, -2.0};
    for (auto& p : x) p += shift;
    const Configuration moved(x, m);
    CHECK(std::abs(mass_center(moved) - (mass_center(base) + shift)) < 1e-14);
  }
}

TEST_CASE("metrics: closed forms") {
  const Configuration pair({{-1, 0}, {1, 0}}, {1.0, 1.0});
  const auto m2 = metrics(pair);
  CHECK(m2.potential_U == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m2.inertia_I == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(m2.mass_center) < 1e-16);

  const double m = 1.7;
  const double b = 0.4;
  const auto three = metrics(polygon_plus_center_configuration(2, m, b));
  CHECK(three.potential_U == doctest::Approx(m * m / 2.0 + 2.0 * m * b).epsilon(1e-15));
  CHECK(three.inertia_I == doctest::Approx(2.0 * m).epsilon(1e-15));

  // Square of unit masses: four sides of length sqrt(2) and two diagonals of
  // length 2. U / N must match the real part of the polygon force sum.
  const Configuration square(regular_polygon_vertices(4), {1.0, 1.0, 1.0, 1.0});
  const auto sq = metrics(square);
  CHECK(sq.potential_U == doctest::Approx(4.0 / std::sqrt(2.0) + 1.0).epsilon(1e-15));
  CHECK(std::abs(sq.potential_U / 4.0 - polygon_force_sum(4).real()) < 1e-15);
}

TEST_CASE("potential is invariant under rotation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> mass(0.1, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PlanarPoint> x;
    std::vector<double> m;
    for (int k = 0; k < 7; ++k) {
      x.emplace_back(coord(rng), coord(rng));
      m.push_back(mass(rng));
    }
    const Configuration base(x, m);
    const PlanarPoint rotation = std::polar(1.0, angle(rng));
    for (auto& p : x) p *= rotation;
    const double u0 = metrics(base).potential_U;
    const double u1 = metrics(Configuration(x, m)).potential_U;
    CHECK(std::abs(u1 - u0) <= 1e-12 * u0);
  }
}

TEST_CASE("root_of_unity reduces its exponent") {
  CHECK(root_of_unity(0, 7) == PlanarPoint{1.0, 0.0});
  CHECK(std::abs(root_of_unity(-1, 5) - root_of_unity(4, 5)) == 0.0);
  CHECK(std::abs(root_of_unity(1000003, 12) - root_of_unity(1000003 % 12, 12)) == 0.0);
}
