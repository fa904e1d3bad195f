#include "twistkit/clean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "twistkit/errors.hpp"
#include "twistkit/twist.hpp"

namespace twistkit::clean {

namespace {

constexpr double kPi = std::numbers::pi;

const sphere::Vec3 kNorth(0.0, 0.0, 1.0);

sphere::Covector circle_point(double radius, double theta) {
  return sphere::Covector::make(-kNorth, radius * sphere::Vec3(std::cos(theta), std::sin(theta), 0.0));
}

double distance_to_two_pi_z(double w) {
  return std::abs(w - 2.0 * kPi * std::round(w / (2.0 * kPi)));
}

double jacobi_defect_at(const sphere::Geodesic& c, double radius, double theta) {
  constexpr double h = 1e-5;
  constexpr int grid = 64;
  const sphere::Geodesic plus{circle_point(radius, theta + h)};
  const sphere::Geodesic minus{circle_point(radius, theta - h)};
  const sphere::JacobiTransport transport(sphere::sphere_jacobi_system(c));

  // J(0) = 0 and J′(0) = ∂_θ ċ(0), in the parallel frame.
  const sphere::Vec3 dv = radius * sphere::Vec3(-std::sin(theta), std::cos(theta), 0.0);
  Eigen::Vector4d y0;
  y0 << sphere::parallel_frame(c, 0.0).transpose() * dv, 0.0, 0.0;

  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double r = static_cast<double>(i) / grid;
    const sphere::Vec3 variation = (plus.at(r).u - minus.at(r).u) / (2.0 * h);
    const Eigen::Vector2d observed = sphere::parallel_frame(c, r).transpose() * variation;
    const Eigen::Vector2d predicted = (transport(r) * y0).tail<2>();
    worst = std::max(worst, (observed - predicted).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

IntersectionTable compute_circles(int r) {
  if (r < 0) throw DegenerateInput(fmt::format("number of twist pairs must be >= 0, got {}", r));
  IntersectionTable table;
  table.r = r;
  if (r == 0) return table;

  const twist::TwistProfile psi = twist::make_profile(r);
  const double delta = *psi.delta();
  for (int j = 1; j <= r; ++j) {
    const int k = r - j + 1;
    const double level = (2 * k - 1) * kPi / (2.0 * r);
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve([&](double t) { return psi(t) - level; }, 0.0,
                                                            psi.support_radius(), boost::math::tools::eps_tolerance<double>(52),
                                                            iterations);
    const double radius = 0.5 * (lo + hi);
    if (radius > delta) {
      throw ProfileConsistencyError(fmt::format("level {} solved at t = {} beyond the linear piece", k, radius));
    }
    CleanCircle c;
    c.j = j;
    c.level = k;
    c.radius = radius;
    c.action = 0.5 * radius * radius;
    c.index_prime = 2 * j;
    c.winding = HalfInteger::from_twice(2 * j - 1);
    table.circles.push_back(c);
  }
  return table;
}

sphere::Geodesic circle_geodesic(const CleanCircle& circle, double theta) {
  return sphere::Geodesic{circle_point(circle.radius, theta)};
}

CleanReport verify_clean(const IntersectionTable& table, int samples_per_circle, double jacobi_tolerance) {
  if (samples_per_circle < 1) throw DegenerateInput("verify_clean needs at least one sample per circle");
  if (table.r < 1) throw DegenerateInput("verify_clean needs a table with r >= 1");
  const twist::TwistProfile psi = twist::make_profile(table.r);

  CleanReport report;
  report.pass = true;
  for (const CleanCircle& circle : table.circles) {
    CircleVerdict v;
    v.j = circle.j;
    v.radius = circle.radius;
    v.samples = samples_per_circle;
    v.min_multiplicity = 1 << 20;
    for (int s = 0; s < samples_per_circle; ++s) {
      const double theta = 2.0 * kPi * s / samples_per_circle;
      const sphere::Geodesic c = circle_geodesic(circle, theta);

      const double base_gap = (c.at(1.0).u - kNorth).cwiseAbs().maxCoeff();
      const double level_gap = distance_to_two_pi_z(2.0 * table.r * psi(circle.radius) + kPi);
      v.membership_defect = std::max({v.membership_defect, base_gap, level_gap});

      int m1 = 0;
      for (const sphere::ConjugateDatum& d : sphere::conjugate_points(c)) {
        if (d.r == 1.0) m1 = d.multiplicity;
      }
      v.min_multiplicity = std::min(v.min_multiplicity, m1);
      v.max_multiplicity = std::max(v.max_multiplicity, m1);

      v.jacobi_defect = std::max(v.jacobi_defect, jacobi_defect_at(c, circle.radius, theta));
    }
    v.pass = v.membership_defect < 1e-9 && v.min_multiplicity == 1 && v.max_multiplicity == 1 &&
             v.jacobi_defect < jacobi_tolerance;
    report.pass = report.pass && v.pass;
    report.circles.push_back(v);
  }
  return report;
}

std::vector<IndexRow> index_table(const IntersectionTable& table) {
  std::vector<IndexRow> rows;
  for (const CleanCircle& circle : table.circles) {
    IndexRow row;
    row.j = circle.j;
    row.morse_index = sphere::morse_index(circle_geodesic(circle, 0.0));
    const HalfInteger shifted = row.morse_index - HalfInteger::half();  // dim C_j = 1
    if (!shifted.is_integer()) {
      throw DegenerateInput(fmt::format("i′(C_{}) = {} is not integral", circle.j, shifted.to_string()));
    }
    row.index_prime = static_cast<int>(shifted.twice_value() / 2) + 2;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace twistkit::clean
