#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sphere_samples.hpp"
#include "twistkit/errors.hpp"
#include "twistkit/twist.hpp"

using namespace twistkit;
using namespace twistkit::twist;
using sphere::distance;
using sphere::Vec3;
using std::numbers::pi;

namespace {

void check_profile_invariants(const TwistProfile& psi) {
  CAPTURE(psi.name());
  const double top = psi.support_radius() * 1.3;
  for (int i = 0; i <= 4000; ++i) {
    const double t = top * i / 4000.0;
    CHECK(psi(t) + psi(-t) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(psi.derivative(t) <= 0.0);
    CHECK(psi.derivative(-t) <= 0.0);
    if (t >= psi.support_radius()) CHECK(psi(t) == 0.0);
    const double h = 1e-6;
    const double fd = (psi(t + h) - psi(t - h)) / (2 * h);
    CHECK(std::abs(fd - psi.derivative(t)) < 1e-6);
  }
}

std::vector<Covector> random_samples(std::mt19937_64& rng, int count, double max_speed) {
  std::vector<Covector> out;
  for (int i = 0; i < count; ++i) {
    // Every fourth sample is within 1e-3 of the zero-section.
    const double speed = (i % 4 == 0) ? std::uniform_real_distribution<double>(1e-6, 1e-3)(rng)
                                      : std::uniform_real_distribution<double>(0.0, max_speed)(rng);
    out.push_back(testgen::covector(rng, speed));
  }
  return out;
}

}  // namespace

TEST_CASE("linear profile values") {
  const TwistProfile p1 = make_profile(1);
  CHECK(p1(0.0) == pi);
  CHECK(*p1.delta() == doctest::Approx(1.5 * pi));
  CHECK(p1(1.5 * pi) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(p1(2 * pi) == 0.0);
  CHECK(p1(10.0) == 0.0);
  for (int r = 1; r <= 6; ++r) {
    const TwistProfile p = make_profile(r);
    CHECK(p(0.0) == pi);
    CHECK(p.support_radius() == doctest::Approx(2 * pi * r));
    for (int i = 0; i <= 100; ++i) {
      const double t = *p.delta() * i / 100.0;
      CHECK(p(t) == doctest::Approx(pi - t / (2.0 * r)).epsilon(1e-14));
    }
    check_profile_invariants(p);
  }
  CHECK_THROWS_AS(make_profile(0), DegenerateInput);
}

TEST_CASE("surgery and flat profiles") {
  const TwistProfile a = TwistProfile::surgery(0.4);
  CHECK(a(0.3) == doctest::Approx(pi - 0.3));
  CHECK(a(0.5) > 0.0);
  CHECK(a(0.8) == 0.0);
  check_profile_invariants(a);
  const TwistProfile f = TwistProfile::flat(0.5, 2.0);
  CHECK(f(0.2) == pi);
  CHECK(f(-0.2) == pi);
  CHECK(f(2.0) == 0.0);
  check_profile_invariants(f);
  CHECK_THROWS_AS(TwistProfile::surgery(2.0), DegenerateInput);
}

TEST_CASE("twist on special points") {
  const ModelTwist m{make_profile(1)};
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Covector far = testgen::covector(rng, std::uniform_real_distribution<double>(2 * pi, 20.0)(rng));
    CHECK(distance(twist::twist(m, far), far) == 0.0);
    const Covector zero = testgen::covector(rng, 0.0);
    const Covector image = twist::twist(m, zero);
    CHECK((image.u + zero.u).norm() == 0.0);
    CHECK(image.v.norm() == 0.0);
    const Covector at_pi = testgen::covector(rng, pi);
    CHECK(distance(twist_power(m, 2, at_pi), antipodal(at_pi)) < 1e-9);
  }
}

TEST_CASE("twist powers") {
  std::mt19937_64 rng(2);
  for (int r = 1; r <= 4; ++r) {
    const ModelTwist m{make_profile(r)};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Covector xi = testgen::covector(rng, std::uniform_real_distribution<double>(0.0, *m.profile.delta())(rng));
      worst = std::max(worst, distance(twist_power(m, 2 * r, xi), sphere::geodesic_flow(xi, -1.0)));
      CHECK(distance(twist_power(m, 0, xi), xi) == 0.0);
      CHECK(distance(twist_power(m, -1, twist_power(m, 1, xi)), xi) < 1e-10);
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("A composed with the twist is the time-one flow of Psi(|xi|)") {
  std::mt19937_64 rng(3);
  for (const TwistProfile& p : {make_profile(1), make_profile(3), TwistProfile::surgery(0.5)}) {
    const ModelTwist m{p};
    for (const Covector& xi : random_samples(rng, 40, p.support_radius() * 1.1)) {
      CHECK(distance(antipodal(twist::twist(m, xi)), twist_factor_flow(m, xi)) < 1e-8);
    }
  }
}

TEST_CASE("symplecticity checks") {
  std::mt19937_64 rng(4);
  const std::vector<Covector> samples = random_samples(rng, 1000, 2 * pi * 1.1);
  const auto identity = check_symplectic([](const Covector& x) { return x; }, samples);
  CHECK(identity.max_defect < 1e-12);
  CHECK(identity.evaluated == 1000);
  const ModelTwist m{make_profile(1)};
  const auto tw = check_symplectic([&](const Covector& x) { return twist::twist(m, x); }, samples);
  CHECK(tw.max_defect < 1e-6);
  CHECK(tw.skipped == 0);
  const auto scaled = check_symplectic([](const Covector& x) { return Covector{x.u, 2.0 * x.v}; },
                                       {testgen::covector(rng, 1.0)});
  CHECK(scaled.max_defect == doctest::Approx(1.0).epsilon(1e-6));
  const auto broken = check_symplectic(
      [](const Covector& x) -> Covector { throw ZeroSectionError(std::to_string(x.u.x())); }, samples);
  CHECK(broken.skipped == 1000);
}

TEST_CASE("square isotopy stages") {
  const ModelTwist m{TwistProfile::flat(0.5, 2.0)};
  std::mt19937_64 rng(5);
  for (const Covector& xi : random_samples(rng, 100, 2.5)) {
    CHECK(distance(square_isotopy_stage(m, 0.0, 1.0, xi), twist_power(m, 2, xi)) < 1e-12);
    CHECK(distance(square_isotopy_stage(m, 1.0, 0.0, xi), xi) < 1e-15);
    const double s = std::uniform_real_distribution<double>(0, 1)(rng);
    const double scale = std::uniform_real_distribution<double>(0, 1)(rng);
    auto stage = [&](const Covector& p) { return square_isotopy_stage(m, s, scale, p); };
    CHECK(std::abs(tangent_jacobian_determinant(stage, xi)) > 1e-3);
  }
  for (int i = 0; i < 50; ++i) {
    const Covector far = testgen::covector(rng, std::uniform_real_distribution<double>(2.0, 9.0)(rng));
    const double s = std::uniform_real_distribution<double>(0, 1)(rng);
    const double scale = std::uniform_real_distribution<double>(0, 1)(rng);
    CHECK(distance(square_isotopy_stage(m, s, scale, far), far) == 0.0);
  }
  const Covector zero = testgen::covector(rng, 0.0);
  CHECK_THROWS_AS(square_isotopy_stage(m, 0.0, 0.5, zero), AxisError);
  CHECK(distance(square_isotopy_stage(m, 0.3, 0.5, zero), zero) < 1e-15);
  CHECK(tangent_jacobian_determinant([](const Covector& p) { return p; }, testgen::covector(rng, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("twisted fibre graph formulas") {
  const ModelTwist m{TwistProfile::surgery(1.2)};
  const Eigen::Vector4d g = twisted_fiber_graph(m, Eigen::Vector2d(1.0, 0.0));
  CHECK(g(0) == 1.0);
  CHECK(g(1) == 0.0);
  CHECK(g(2) == doctest::Approx(-(pi - 1.0)).epsilon(1e-15));
  CHECK(g(3) == 0.0);
  const Eigen::Vector4d outside = twisted_fiber_graph(m, Eigen::Vector2d(0.0, 2.5));
  CHECK(outside.tail<2>().norm() == 0.0);
  CHECK_THROWS_AS(twisted_fiber_graph(m, Eigen::Vector2d::Zero()), PunctureError);
  // |p| = ε: the second-chart point lies on {(q, −q)}.
  const Eigen::Vector2d pe(1.2 * std::cos(0.7), 1.2 * std::sin(0.7));
  const Eigen::Vector4d s = second_chart_graph(m, pe);
  CHECK((s.tail<2>() + s.head<2>()).norm() < 1e-14);
}

TEST_CASE("chart coherence of the inverse twist") {
  std::mt19937_64 rng(6);
  const ModelTwist m{TwistProfile::surgery(0.6)};
  double first = 0.0;
  double second = 0.0;
  for (int i = 0; i < 100; ++i) {
    const sphere::ExponentialChart chart(testgen::unit_vector(rng));
    const double radius = std::uniform_real_distribution<double>(1e-3, 3.0)(rng);
    const double angle = std::uniform_real_distribution<double>(0, 2 * pi)(rng);
    const Eigen::Vector2d p(radius * std::cos(angle), radius * std::sin(angle));
    first = std::max(first, first_chart_defect(m, chart, p));
    const Eigen::Vector2d small = p * (2 * 0.6 * 0.99 / 3.0);
    second = std::max(second, second_chart_defect(m, chart, small));
    // The stated second-chart graph has the opposite base sign.
    const Eigen::Vector4d stated = second_chart_graph(m, small);
    if (small.norm() > 1e-2) {
      CHECK((stated.tail<2>() + (pi - m.profile(small.norm())) / small.norm() * small).norm() < 1e-14);
    }
  }
  CHECK(first < 1e-6);
  CHECK(second < 1e-6);
}
