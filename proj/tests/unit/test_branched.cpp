#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <algorithm>
#include <sstream>
#include <string>

#include "twistkit/branched.hpp"
#include "twistkit/errors.hpp"

using namespace twistkit;
using namespace twistkit::surgery;
using std::numbers::pi;

namespace {

// Loop with z₂ = 0 and z₁² − ½ = R e^{2πiks}, so the winding is k.
Path2 circle_loop(int k, double radius = 0.3) {
  return [k, radius](double s) {
    const cplx w = std::polar(radius, 2.0 * pi * k * s);
    return C2(std::sqrt(0.5 + w), 0.0);
  };
}

// Closed-form lift: on −1 < t₁ < 1 the branch function along f avoids the
// negative real axis, so the principal root continues from the north pole.
cplx principal_lift(int m, const Eigen::Vector3d& t) {
  const cplx w = branch_function(figure_eight(t));
  return std::polar(std::pow(std::abs(w), 1.0 / (m + 1)), std::arg(w) / (m + 1));
}

}  // namespace

TEST_CASE("figure eight") {
  CHECK(figure_eight({1, 0, 0}) == C2(0.0, 0.0));
  CHECK(figure_eight({-1, 0, 0}) == C2(0.0, 0.0));
  CHECK(figure_eight({0, 1, 0}) == C2(1.0, 0.0));
  const FigureEightCheck check = check_figure_eight(10000);
  CHECK(check.lagrangian_defect < 1e-9);
  CHECK(check.min_singular_value > 0.1);
  CHECK(check.min_branch_distance > 0.1);
}

TEST_CASE("linking numbers") {
  CHECK(linking_number([](double) { return C2(3.0, 0.0); }) == 0);
  for (int k = -2; k <= 3; ++k) CHECK(linking_number(circle_loop(k)) == k);
  const int once = linking_number(meridian_loop(1));
  CHECK(std::abs(once) == 1);
  CHECK(linking_number(meridian_loop(2)) == 2 * once);
  // The meridian runs clockwise around C: w goes −½ → ½ through Im w > 0.
  CHECK(once == -1);
  CHECK_THROWS_AS(linking_number([](double s) { return C2(std::sqrt(0.5) + 1e-9 * s, 0.0); }), ProximityError);
}

TEST_CASE("deck transformation") {
  for (int m = 1; m <= 6; ++m) {
    const BranchedCover cover{m};
    const C3 z(cplx(0.3, 0.1), std::sqrt(std::pow(cplx(0.4, 0.7), m + 1) + 0.5 - cplx(0.3, 0.1) * cplx(0.3, 0.1)),
               cplx(0.4, 0.7));
    CHECK(cover.rule_residual(z) < 1e-12);
    CHECK(cover.rule_residual(cover.deck(z)) < 1e-10);
    CHECK((cover.deck(z, m + 1) - z).norm() < 1e-12);
    const C3 other = z * 1.1;
    CHECK(std::abs((cover.deck(z) - cover.deck(other)).norm() - (z - other).norm()) < 1e-12);
  }
}

TEST_CASE("path lifting") {
  const BranchedCover cover{3};
  const auto constant = lift_path(cover, [](double) { return C2(1.0, 0.0); }, std::pow(cplx(0.5), 0.25));
  for (const C3& z : constant) CHECK((z - constant.front()).norm() == 0.0);

  for (int k = 0; k <= cover.m + 1; ++k) {
    CAPTURE(k);
    const Path2 loop = circle_loop(k);
    const cplx seed = std::pow(branch_function(loop(0.0)), 1.0 / (cover.m + 1));
    const auto lift = lift_path(cover, loop, seed);
    CHECK(cover.rule_residual(lift.back()) < 1e-8);
    const cplx ratio = lift.back()(2) / lift.front()(2);
    CHECK(std::abs(ratio - std::pow(cover.deck_root(), k)) < 1e-8);
    CHECK((std::abs(ratio - 1.0) < 1e-8) == (k % (cover.m + 1) == 0));
  }
  CHECK_THROWS_AS(lift_path(cover, circle_loop(1), cplx(5.0, 0.0)), DegenerateInput);
}

TEST_CASE("lifted figure eight") {
  for (int m = 1; m <= 4; ++m) {
    const BranchedCover cover{m};
    for (const Eigen::Vector3d& t : fibonacci_sphere(200)) {
      const C3 z = lifted_figure_eight(cover, t);
      CHECK(cover.rule_residual(z) < 1e-10);
      if (std::abs(t.x()) < 0.999) CHECK(std::abs(z(2) - principal_lift(m, t)) < 1e-10);
    }
    // Meridian lift endpoints: the monodromy of a winding −1 loop is σ⁻¹.
    const C3 plus = lifted_figure_eight(cover, {1, 0, 0});
    const C3 minus = lifted_figure_eight(cover, {-1, 0, 0});
    CHECK((minus - cover.deck(plus, -1)).norm() < 1e-8);
  }
}

TEST_CASE("A_m configurations") {
  for (int m : {2, 3}) {
    const AmConfiguration config = build_am_configuration(m, 800);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        CAPTURE(a);
        CAPTURE(b);
        if (a == b) {
          CHECK(config.counts[a][b] == -1);
        } else {
          CHECK(config.counts[a][b] == (std::abs(a - b) == 1 ? 1 : 0));
          if (std::abs(a - b) == 1) {
            CHECK(config.min_angles[a][b] > 1e-3);
            CHECK(config.max_residuals[a][b] < 1e-10);
          }
        }
      }
    }
  }
  const AmConfiguration single = build_am_configuration(1, 100);
  CHECK(single.counts.size() == 1);
  std::ostringstream csv;
  export_clouds_csv(single, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("sphere,sample,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 101);
}

TEST_CASE("correction profile") {
  const CorrectionProfile beta(0.2);
  CHECK(std::abs(beta.moment()) < 1e-8);
  CHECK(beta.kappa() > 0.0);
  for (int i = 0; i <= 4000; ++i) {
    const double r = 12.0 * i / 4000.0;
    CHECK(beta(r) <= 1.0);
    if (r <= 0.1 || r >= 10.0) CHECK(beta(r) == 0.0);
    if (r >= 0.2 && r <= 5.0) CHECK(beta(r) == 1.0);
  }
  // Independent moment by composite Simpson on the pieces.
  double simpson = 0.0;
  const double breaks[] = {0.0, 0.1, 0.2, 5.0, 7.5, 10.0};
  for (int p = 0; p + 1 < 6; ++p) {
    const int n = 20000;
    const double h = (breaks[p + 1] - breaks[p]) / n;
    for (int i = 0; i <= n; ++i) {
      const double r = breaks[p] + i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      simpson += w * r * beta(r) * h / 3.0;
    }
  }
  CHECK(std::abs(simpson) < 1e-7);
}

TEST_CASE("corrected form") {
  const CorrectionProfile beta(0.2);
  for (int m : {2, 3, 4}) {
    const BranchedCover cover{m};
    const auto samples = hypersurface_samples(cover, 0.2, 400);
    for (const C3& z : samples) CHECK(cover.rule_residual(z) < 1e-8 * std::max(1.0, std::pow(std::abs(z(2)), m + 1)));
    const CorrectionDefects d = correction_form_defects(beta, cover, fibonacci_sphere(500), samples);
    CHECK(d.lagrangian_defect < 1e-8);
    CHECK(d.min_pfaffian > 0.0);
    CHECK(d.skipped == 0);

    // Where β = 0 the form is the Kähler form and unitary frames give Pf = 1.
    std::vector<C3> inner;
    for (const C3& z : samples) {
      if (std::abs(z(2)) < 0.1 || std::abs(z(2)) > 10.0) inner.push_back(z);
    }
    REQUIRE_FALSE(inner.empty());
    const CorrectionDefects untouched = correction_form_defects(beta, cover, {}, inner);
    CHECK(untouched.min_pfaffian == doctest::Approx(1.0).epsilon(1e-12));
  }
}
