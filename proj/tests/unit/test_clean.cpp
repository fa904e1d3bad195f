#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "twistkit/clean.hpp"
#include "twistkit/errors.hpp"
#include "twistkit/twist.hpp"

using namespace twistkit;
using namespace twistkit::clean;
using std::numbers::pi;

TEST_CASE("circle radii and actions") {
  const IntersectionTable one = compute_circles(1);
  REQUIRE(one.circles.size() == 1);
  CHECK(one.circles[0].radius == doctest::Approx(pi).epsilon(1e-12));
  CHECK(one.circles[0].action == doctest::Approx(pi * pi / 2).epsilon(1e-12));

  const IntersectionTable three = compute_circles(3);
  REQUIRE(three.circles.size() == 3);
  for (int j = 1; j <= 3; ++j) CHECK(std::abs(three.circles[j - 1].radius - (2 * j - 1) * pi) < 1e-9);

  const IntersectionTable two = compute_circles(2);
  CHECK(std::abs(two.circles[1].action - two.circles[0].action - 4 * pi * pi) < 1e-9);

  CHECK(compute_circles(0).circles.empty());
  CHECK_THROWS_AS(compute_circles(-1), DegenerateInput);
}

TEST_CASE("table invariants for r up to 6") {
  for (int r = 1; r <= 6; ++r) {
    CAPTURE(r);
    const IntersectionTable t = compute_circles(r);
    REQUIRE(static_cast<int>(t.circles.size()) == r);
    const twist::TwistProfile psi = twist::make_profile(r);
    for (const CleanCircle& c : t.circles) {
      CHECK(c.radius < *psi.delta());
      CHECK(c.level == r - c.j + 1);
      // The level reached by ψ, read off the closed form on the linear piece.
      CHECK(std::abs((pi - c.radius / (2.0 * r)) - (2 * c.level - 1) * pi / (2.0 * r)) < 1e-12);
      CHECK(c.winding == HalfInteger::from_twice(2 * c.j - 1));
      const double w = 2 * r * psi(c.radius) + pi;
      CHECK(std::abs(w - 2 * pi * std::round(w / (2 * pi))) < 1e-9);
      const sphere::Geodesic g = circle_geodesic(c, 0.3 * c.j);
      CHECK(std::abs(sphere::action_of_constant_path(g.initial) - 0.5 * c.radius * c.radius) < 1e-8);
    }
    for (int j = 2; j <= r; ++j) {
      const double gap = t.circles[j - 1].action - t.circles[j - 2].action;
      CHECK(std::abs(gap - pi * pi / 2 * ((2 * j - 1) * (2 * j - 1) - (2 * j - 3) * (2 * j - 3))) < 1e-9);
      CHECK(gap > 0.0);
    }
  }
}

TEST_CASE("index table") {
  const auto rows2 = index_table(compute_circles(2));
  REQUIRE(rows2.size() == 2);
  CHECK(rows2[0].j == 1);
  CHECK(rows2[0].index_prime == 2);
  CHECK(rows2[1].j == 2);
  CHECK(rows2[1].index_prime == 4);

  const auto rows1 = index_table(compute_circles(1));
  REQUIRE(rows1.size() == 1);
  CHECK(rows1[0].index_prime == 2);

  const auto rows4 = index_table(compute_circles(4));
  for (const IndexRow& row : rows4) {
    CHECK(row.morse_index == HalfInteger::from_twice(4 * row.j - 3));
  }
  for (std::size_t i = 1; i < rows4.size(); ++i) CHECK(rows4[i].index_prime - rows4[i - 1].index_prime == 2);
}

TEST_CASE("clean intersection verification") {
  const CleanReport report = verify_clean(compute_circles(2), 8);
  CHECK(report.pass);
  REQUIRE(report.circles.size() == 2);
  for (const CircleVerdict& v : report.circles) {
    CHECK(v.min_multiplicity == 1);
    CHECK(v.max_multiplicity == 1);
    CHECK(v.jacobi_defect < 1e-4);
    CHECK(v.membership_defect < 1e-9);
  }
}

TEST_CASE("closed geodesic negative control") {
  IntersectionTable bogus;
  bogus.r = 1;
  CleanCircle c;
  c.j = 1;
  c.radius = 2 * pi;
  bogus.circles.push_back(c);
  const CleanReport report = verify_clean(bogus, 4);
  CHECK_FALSE(report.pass);
  CHECK(report.circles[0].membership_defect > 1.0);
}
