#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "twistkit/errors.hpp"
#include "twistkit/half_integer.hpp"
#include "twistkit/numerics.hpp"

using namespace twistkit;
using namespace twistkit::numerics;

TEST_CASE("smooth transition is a partition of unity") {
  CHECK(smooth_transition(-1.0) == 0.0);
  CHECK(smooth_transition(0.0) == 0.0);
  CHECK(smooth_transition(1.0) == 1.0);
  CHECK(smooth_transition(0.5) == doctest::Approx(0.5));
  for (int i = 1; i < 100; ++i) {
    const double x = i / 100.0;
    CHECK(smooth_transition(x) + smooth_transition(1.0 - x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(smooth_transition(x) >= smooth_transition(x - 0.01));
    const double h = 1e-6;
    const double fd = (smooth_transition(x + h) - smooth_transition(x - h)) / (2 * h);
    CHECK(smooth_transition_derivative(x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("golden section finds a V-shaped minimum") {
  const double t = golden_minimize([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(t == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("dip scan locates sine zeros and snaps endpoints") {
  auto f = [](double r) { return std::abs(std::sin(3.0 * M_PI * r)); };
  const auto dips = find_dips(f, 0.0, 1.0);
  REQUIRE(dips.size() == 4);
  CHECK(dips[0].at_start);
  CHECK(dips[0].time == 0.0);
  CHECK(dips[1].time == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(dips[2].time == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(dips[3].at_end);
  CHECK(dips[3].time == 1.0);
}

TEST_CASE("dip scan refuses minima in the gray zone") {
  auto f = [](double r) { return std::abs(r - 0.4) + 1e-7; };
  CHECK_THROWS_AS(find_dips(f, 0.0, 1.0), ResolutionError);
  auto g = [](double r) { return std::abs(r - 0.4) + 1e-3; };
  CHECK(find_dips(g, 0.0, 1.0).empty());
}

TEST_CASE("half-integer arithmetic") {
  const HalfInteger a = HalfInteger::from_twice(5);
  CHECK(a.to_string() == "5/2");
  CHECK((a + HalfInteger::half()).to_string() == "3");
  CHECK((-a).twice_value() == -5);
  CHECK(a.congruent_mod_one(HalfInteger::half()));
  CHECK(!a.congruent_mod_one(HalfInteger(1)));
  CHECK(HalfInteger(3) > a);
  CHECK(a.to_double() == 2.5);
}
