#include "twistkit/handle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "twistkit/errors.hpp"
#include "twistkit/numerics.hpp"

namespace twistkit::surgery {

namespace {

constexpr double kPi = std::numbers::pi;

double cyclic_gap(int a, int b, int n) {
  const int d = std::abs(a - b) % n;
  return std::min(d, n - d);
}

void require_surgery_profile(const twist::TwistProfile& psi) {
  if (psi.kind() != twist::TwistProfile::Kind::Surgery) {
    throw DegenerateInput(fmt::format("surgery comparison needs the surgery profile, got {}", psi.name()));
  }
}

}  // namespace

ProfileCurve::ProfileCurve(Map point, double s_min, double s_max, double axes_beyond, std::string name)
    : point_(std::move(point)), s_min_(s_min), s_max_(s_max), axes_beyond_(axes_beyond), name_(std::move(name)) {
  if (!(s_max > s_min)) throw DegenerateInput("profile curve needs s_min < s_max");
}

double corner_primitive(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return x;
  if (x > 0.0) return x + corner_primitive(-x);
  const double upper = 0.5 * (x + 1.0);
  return 2.0 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                   [](double u) { return numerics::smooth_transition(u); }, 0.0, upper, 0, 1e-15);
}

ProfileCurve ProfileCurve::smoothed_corner(double rho) {
  if (!(rho > 0.0)) throw DegenerateInput("corner radius must be positive");
  auto point = [rho](double s) {
    return Eigen::Vector2d(rho * corner_primitive(s / rho), -rho * corner_primitive(-s / rho));
  };
  return ProfileCurve(point, -3.0 * rho, 3.0 * rho, rho, fmt::format("corner(rho={})", rho));
}

ProfileCurve ProfileCurve::surgery_curve(const twist::TwistProfile& psi) {
  require_surgery_profile(psi);
  const double eps = psi.epsilon();
  auto point = [psi, eps](double t) {
    const double cutoff = numerics::smooth_transition((kPi - psi(t) - 0.25 * eps) / (0.25 * eps));
    return Eigen::Vector2d(cutoff * t, -psi(t));
  };
  return ProfileCurve(point, 0.125 * eps, 3.0 * eps, 2.0 * eps, fmt::format("surgery({})", psi.name()));
}

ProfileCurve ProfileCurve::antipodal_arc() {
  auto point = [](double s) { return Eigen::Vector2d(std::cos(s), std::sin(s)); };
  return ProfileCurve(point, -2.0, 2.0, std::numeric_limits<double>::quiet_NaN(), "antipodal-arc");
}

ProfileCurve ProfileCurve::axes() {
  auto point = [](double s) { return s >= 0.0 ? Eigen::Vector2d(s, 0.0) : Eigen::Vector2d(0.0, s); };
  return ProfileCurve(point, -2.0, 2.0, 0.0, "axes");
}

CurveCheck check_curve(const ProfileCurve& curve, int samples) {
  if (samples < 2) throw GridError("curve check needs at least two samples");
  CurveCheck out;
  out.in_closed_fourth_quadrant = true;
  out.min_norm = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Vector2d> pts;
  double spacing = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = curve.s_min() + (curve.s_max() - curve.s_min()) * i / (samples - 1);
    const Eigen::Vector2d y = curve(s);
    if (!pts.empty()) spacing = std::max(spacing, (y - pts.back()).norm());
    pts.push_back(y);
    out.in_closed_fourth_quadrant = out.in_closed_fourth_quadrant && y.x() >= 0.0 && y.y() <= 0.0;
    out.min_norm = std::min(out.min_norm, y.norm());
    if (!std::isnan(curve.axes_beyond()) && std::abs(s) >= curve.axes_beyond()) {
      const double to_first = y.x() >= 0.0 ? std::abs(y.y()) : y.norm();
      const double to_second = y.y() <= 0.0 ? std::abs(y.x()) : y.norm();
      out.axes_defect = std::max(out.axes_defect, std::min(to_first, to_second));
    }
  }
  if (out.in_closed_fourth_quadrant && out.min_norm > 0.0) {
    // x and −x both in the closed fourth quadrant forces x = 0.
    out.no_antipodal_pair = true;
  } else {
    out.no_antipodal_pair = true;
    for (std::size_t a = 0; a < pts.size() && out.no_antipodal_pair; ++a) {
      for (std::size_t b = a; b < pts.size(); ++b) {
        if ((pts[a] + pts[b]).norm() <= spacing) {
          out.no_antipodal_pair = false;
          break;
        }
      }
    }
  }
  return out;
}

double HandlePatch::t_at(int k) const { return 2.0 * kPi * k / nt; }

Eigen::Vector4d handle_point(const Eigen::Vector2d& y, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Eigen::Vector4d(y.x() * c, y.x() * s, y.y() * c, y.y() * s);
}

HandlePatch HandlePatch::from_curve(const ProfileCurve& curve, int ns, int nt) {
  return from_curve(curve, curve.s_min(), curve.s_max(), ns, nt);
}

HandlePatch HandlePatch::from_curve(const ProfileCurve& curve, double s_min, double s_max, int ns, int nt) {
  if (ns < 2 || nt < 3) throw GridError(fmt::format("handle grid {}x{} is too small", ns, nt));
  HandlePatch patch;
  patch.embedding = [curve](double s, double t) { return handle_point(curve(s), t); };
  patch.s_min = s_min;
  patch.s_max = s_max;
  patch.ns = ns;
  patch.nt = nt;
  return patch;
}

HandlePatch with_radial_jitter(const HandlePatch& patch, double amplitude) {
  HandlePatch out = patch;
  auto base = patch.embedding;
  out.embedding = [base, amplitude](double s, double t) { return (1.0 + amplitude * std::sin(3.0 * t)) * base(s, t); };
  return out;
}

double handle_omega(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return a(0) * b(2) - a(2) * b(0) + a(1) * b(3) - a(3) * b(1);
}

double handle_lagrangian_defect(const HandlePatch& patch, double h) {
  double worst = 0.0;
  for (int i = 0; i < patch.ns; ++i) {
    const double s = patch.s_at(i);
    for (int k = 0; k < patch.nt; ++k) {
      const double t = patch.t_at(k);
      const Eigen::Vector4d ds = (patch.embedding(s + h, t) - patch.embedding(s - h, t)) / (2.0 * h);
      const Eigen::Vector4d dt = (patch.embedding(s, t + h) - patch.embedding(s, t - h)) / (2.0 * h);
      if (ds.norm() < 1e-12 || dt.norm() < 1e-12) {
        throw GridError(fmt::format("degenerate handle cell at s = {}, t = {}", s, t));
      }
      worst = std::max(worst, std::abs(handle_omega(ds, dt)));
    }
  }
  return worst;
}

double handle_axes_defect(const HandlePatch& patch, double axes_beyond) {
  double worst = 0.0;
  for (int i = 0; i < patch.ns; ++i) {
    if (std::abs(patch.s_at(i)) < axes_beyond) continue;
    for (int k = 0; k < patch.nt; ++k) {
      const Eigen::Vector4d x = patch.sample(i, k);
      worst = std::max(worst, std::min(x.head<2>().norm(), x.tail<2>().norm()));
    }
  }
  return worst;
}

Embeddedness handle_embeddedness(const HandlePatch& patch, int separation) {
  const int ns = patch.ns;
  const int nt = patch.nt;
  std::vector<Eigen::Vector4d> x(static_cast<std::size_t>(ns) * nt);
  auto at = [&](int i, int k) -> Eigen::Vector4d& { return x[static_cast<std::size_t>(i) * nt + k]; };
  for (int i = 0; i < ns; ++i) {
    for (int k = 0; k < nt; ++k) at(i, k) = patch.sample(i, k);
  }
  // Per-sample step lengths in the two grid directions.
  std::vector<double> step_s(x.size());
  std::vector<double> step_t(x.size());
  for (int i = 0; i < ns; ++i) {
    for (int k = 0; k < nt; ++k) {
      const int ip = std::min(i + 1, ns - 1);
      const int im = std::max(i - 1, 0);
      const std::size_t idx = static_cast<std::size_t>(i) * nt + k;
      step_s[idx] = std::max((at(ip, k) - at(i, k)).norm(), (at(i, k) - at(im, k)).norm());
      step_t[idx] = std::max((at(i, (k + 1) % nt) - at(i, k)).norm(), (at(i, k) - at(i, (k + nt - 1) % nt)).norm());
    }
  }

  struct Candidate {
    double d;
    int ia, ka, ib, kb;
  };
  std::vector<Candidate> candidates;
  Embeddedness out;
  out.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < x.size(); ++a) {
    const int ia = static_cast<int>(a) / nt;
    const int ka = static_cast<int>(a) % nt;
    const double spacing_a = std::max(step_s[a], step_t[a]);
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      const int ib = static_cast<int>(b) / nt;
      const int kb = static_cast<int>(b) % nt;
      const int di = std::abs(ia - ib);
      const double dk = cyclic_gap(ka, kb, nt);
      // Grid-path length between the samples; pairs reachable within a few
      // local steps are neighbours at this resolution.
      const double path = di * step_s[a] + dk * step_t[a];
      if (path <= (separation + 1) * spacing_a) continue;
      const double d = (x[a] - x[b]).norm();
      out.min_distance = std::min(out.min_distance, d);
      if (d < spacing_a + std::max(step_s[b], step_t[b])) candidates.push_back({d, ia, ka, ib, kb});
    }
  }
  if (candidates.empty()) {
    out.verdict = Embeddedness::Verdict::Embedded;
    return out;
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) { return l.d < r.d; });

  const double hs = (patch.s_max - patch.s_min) / (ns - 1);
  const double ht = 2.0 * kPi / nt;
  bool unresolved = false;
  for (const Candidate& c : candidates) {
    Eigen::Vector4d z(patch.s_at(c.ia), patch.t_at(c.ka), patch.s_at(c.ib), patch.t_at(c.kb));
    auto residual = [&](const Eigen::Vector4d& w) { return Eigen::Vector4d(patch.embedding(w(0), w(1)) - patch.embedding(w(2), w(3))); };
    Eigen::Vector4d f = residual(z);
    for (int it = 0; it < 60 && f.norm() > 1e-13; ++it) {
      Eigen::Matrix4d jac;
      for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e(j) = 1e-7;
        jac.col(j) = (residual(z + e) - residual(z - e)) / 2e-7;
      }
      const Eigen::Vector4d step = jac.completeOrthogonalDecomposition().solve(-f);
      z += step;
      f = residual(z);
      if (step.norm() < 1e-14) break;
    }
    const double di = std::abs(z(0) - z(2)) / hs;
    double dt = std::fmod(std::abs(z(1) - z(3)), 2.0 * kPi);
    dt = std::min(dt, 2.0 * kPi - dt) / ht;
    const bool far = std::max(di, dt) > separation;
    if (f.norm() < 1e-10 && far) {
      out.verdict = Embeddedness::Verdict::NotEmbedded;
      out.collision = std::make_pair(Eigen::Vector2d(z(0), z(1)), Eigen::Vector2d(z(2), z(3)));
      return out;
    }
    // A refined distance that stays positive, or a pair that slides onto the
    // diagonal, clears the candidate. Anything in between is unresolved.
    if (far && f.norm() < 1e-6) unresolved = true;
  }
  out.verdict = unresolved ? Embeddedness::Verdict::Inconclusive : Embeddedness::Verdict::Embedded;
  return out;
}

double GraphIdentity::max_defect() const {
  return std::max({first_chart, second_chart, handle_match, handle_lagrangian});
}

GraphIdentity surgery_graph_identity(const twist::TwistProfile& psi, unsigned seed) {
  require_surgery_profile(psi);
  const double eps = psi.epsilon();
  const twist::ModelTwist model{psi};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GraphIdentity out;
  for (int i = 0; i < 100; ++i) {
    sphere::Vec3 x(gauss(rng), gauss(rng), gauss(rng));
    const sphere::ExponentialChart chart(x.normalized());
    const double angle = 2.0 * kPi * unit(rng);
    const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
    const double r1 = 1e-3 + (3.0 * eps) * unit(rng);
    out.first_chart = std::max(out.first_chart, twist::first_chart_defect(model, chart, r1 * dir));
    const double r2 = 1e-3 + (2.0 * eps - 2e-3) * unit(rng);
    out.second_chart = std::max(out.second_chart, twist::second_chart_defect(model, chart, r2 * dir));
  }

  const ProfileCurve curve = ProfileCurve::surgery_curve(psi);
  const sphere::ExponentialChart chart(sphere::Vec3(0.0, 0.0, 1.0));
  const HandlePatch matched = HandlePatch::from_curve(curve, 0.5 * eps, 3.0 * eps, 40, 40);
  for (int i = 0; i < matched.ns; ++i) {
    for (int k = 0; k < matched.nt; ++k) {
      const double s = matched.s_at(i);
      const double t = matched.t_at(k);
      const Eigen::Vector2d p = s * Eigen::Vector2d(std::cos(t), std::sin(t));
      const auto [pc, qc] = chart.from_covector(twist::twist_inverse(model, chart.to_covector(p, Eigen::Vector2d::Zero())));
      Eigen::Vector4d image;
      image << pc, qc;
      out.handle_match = std::max(out.handle_match, (image - matched.sample(i, k)).cwiseAbs().maxCoeff());
    }
  }
  out.handle_lagrangian = handle_lagrangian_defect(HandlePatch::from_curve(curve, 60, 60));
  return out;
}

double line_handle_distance(const Eigen::Vector4d& x) {
  const Eigen::Vector2d p = x.head<2>();
  const Eigen::Vector2d q = x.tail<2>();
  const Eigen::Matrix2d m = p * p.transpose() + q * q.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m);
  const Eigen::Vector2d e = eig.eigenvectors().col(1);
  double best = std::numeric_limits<double>::infinity();
  for (const double sign : {1.0, -1.0}) {
    const double y1 = sign * p.dot(e);
    const double y2 = sign * q.dot(e);
    const double perp = std::sqrt(std::max(0.0, p.squaredNorm() + q.squaredNorm() - y1 * y1 - y2 * y2));
    const double along = std::abs(y1 - y2 - kPi) / std::sqrt(2.0);
    best = std::min(best, std::hypot(perp, along));
  }
  return best;
}

BraidIngredients braid_ingredients(const twist::TwistProfile& psi, int samples) {
  require_surgery_profile(psi);
  const double eps = psi.epsilon();
  const twist::ModelTwist model{psi};
  const sphere::ExponentialChart chart(sphere::Vec3(0.0, 0.0, 1.0));
  BraidIngredients out;
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    // Deterministic low-discrepancy points in the annulus ε/20 ≤ |p| ≤ ε.
    const double radius = eps * (0.05 + 0.95 * std::fmod(0.5 + i * 0.6180339887498949, 1.0));
    const double angle = 2.0 * kPi * (i + 0.5) / samples;
    const Eigen::Vector2d p = radius * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    const sphere::Covector fibre = chart.to_covector(p, Eigen::Vector2d::Zero());

    // Surgery one: τ⁻¹ of the fibre, fibre plane = (P, 0), sphere = (0, Q).
    const auto [p1, q1] = chart.from_covector(twist::twist_inverse(model, fibre));
    Eigen::Vector4d x1;
    x1 << p1, q1;
    out.surgery_one = std::max(out.surgery_one, line_handle_distance(x1));

    // Surgery two: τ of the fibre with the sphere as first factor, via the
    // symplectic swap (p, q) ↦ (−q, p).
    const auto [p2, q2] = chart.from_covector(twist::twist(model, fibre));
    Eigen::Vector4d x2;
    x2 << -q2, p2;
    out.surgery_two = std::max(out.surgery_two, line_handle_distance(x2));
  }
  return out;
}

}  // namespace twistkit::surgery
