#include "twistkit/branched.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "twistkit/errors.hpp"
#include "twistkit/numerics.hpp"

namespace twistkit::surgery {

namespace {

constexpr double kPi = std::numbers::pi;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec3 = Eigen::Vector3d;

Vec6 realify(const C3& z) {
  Vec6 out;
  for (int k = 0; k < 3; ++k) {
    out(2 * k) = z(k).real();
    out(2 * k + 1) = z(k).imag();
  }
  return out;
}

// Analytic differential of f at t applied to X ∈ R³, as (Re, Im) pairs.
Eigen::Vector4d figure_eight_differential(const Vec3& t, const Vec3& x) {
  return Eigen::Vector4d(x(1), x(0) * t(1) + t(0) * x(1), x(2), x(0) * t(2) + t(0) * x(2));
}

double omega0(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return a(0) * b(1) - a(1) * b(0) + a(2) * b(3) - a(3) * b(2);
}

std::pair<Vec3, Vec3> sphere_frame(const Vec3& t) {
  const Vec3 helper = std::abs(t.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 x = (helper - helper.dot(t) * t).normalized();
  return {x, t.cross(x)};
}

Vec3 slerp(const Vec3& a, const Vec3& b, double s) {
  const double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  if (omega < 1e-12) return a;
  return ((std::sin((1.0 - s) * omega) * a + std::sin(s * omega) * b) / std::sin(omega)).normalized();
}

// Root of z₃^{m+1} = w closest to `reference`, with the distances to the
// nearest and second-nearest roots.
struct RootChoice {
  cplx root;
  double nearest;
  double second;
};

RootChoice nearest_root(int m, cplx w, cplx reference) {
  const int n = m + 1;
  const cplx base = std::polar(std::pow(std::abs(w), 1.0 / n), std::arg(w) / n);
  const cplx zeta = std::polar(1.0, 2.0 * kPi / n);
  RootChoice best{base, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  cplx candidate = base;
  for (int k = 0; k < n; ++k) {
    const double d = std::abs(candidate - reference);
    if (d < best.nearest) {
      best.second = best.nearest;
      best.nearest = d;
      best.root = candidate;
    } else if (d < best.second) {
      best.second = d;
    }
    candidate *= zeta;
  }
  return best;
}

// f̃ near a point where z₃ ≈ reference, on the chart t(a) = normalize(t₀ + a₀e₁ + a₁e₂).
C3 local_lift(int m, const Vec3& t0, const Vec3& e1, const Vec3& e2, const Eigen::Vector2d& a, cplx reference) {
  const Vec3 t = (t0 + a(0) * e1 + a(1) * e2).normalized();
  const C2 z = figure_eight(t);
  C3 out;
  out << z(0), z(1), nearest_root(m, branch_function(z), reference).root;
  return out;
}

}  // namespace

cplx branch_function(const C2& z) { return z(0) * z(0) + z(1) * z(1) - 0.5; }

C2 figure_eight(const Eigen::Vector3d& t) {
  const cplx factor(1.0, t(0));
  return C2(t(1) * factor, t(2) * factor);
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int samples) {
  std::vector<Vec3> out;
  out.reserve(samples);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / samples;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  return out;
}

FigureEightCheck check_figure_eight(int samples, double h) {
  FigureEightCheck out;
  out.samples = samples;
  out.min_singular_value = std::numeric_limits<double>::infinity();
  out.min_branch_distance = std::numeric_limits<double>::infinity();
  auto as_real = [](const C2& z) { return Eigen::Vector4d(z(0).real(), z(0).imag(), z(1).real(), z(1).imag()); };
  for (const Vec3& t : fibonacci_sphere(samples)) {
    const auto [x, y] = sphere_frame(t);
    out.lagrangian_defect =
        std::max(out.lagrangian_defect, std::abs(omega0(figure_eight_differential(t, x), figure_eight_differential(t, y))));
    Eigen::Matrix<double, 4, 2> jac;
    for (int c = 0; c < 2; ++c) {
      const Vec3 dir = c == 0 ? x : y;
      const Vec3 plus = std::cos(h) * t + std::sin(h) * dir;
      const Vec3 minus = std::cos(h) * t - std::sin(h) * dir;
      jac.col(c) = (as_real(figure_eight(plus)) - as_real(figure_eight(minus))) / (2.0 * h);
    }
    out.min_singular_value = std::min(out.min_singular_value, Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>(jac).singularValues()(1));
    out.min_branch_distance = std::min(out.min_branch_distance, std::abs(branch_function(figure_eight(t))));
  }
  return out;
}

Path2 meridian_loop(int times) {
  if (times < 1) throw DegenerateInput("meridian loop needs times >= 1");
  return [times](double s) {
    double u = times * s;
    u -= std::floor(u);
    if (s >= 1.0) u = 1.0;
    return figure_eight(Vec3(std::cos(kPi * u), std::sin(kPi * u), 0.0));
  };
}

int linking_number(const Path2& loop, const LinkingOptions& options) {
  auto value = [&](double s) {
    const cplx w = branch_function(loop(s));
    if (std::abs(w) < options.proximity) {
      throw ProximityError(fmt::format("loop passes within {:.3e} of the branch curve at s = {}", std::abs(w), s));
    }
    return w;
  };
  double total = 0.0;
  const double h0 = 1.0 / options.initial_steps;
  double s = 0.0;
  cplx w = value(0.0);
  double h = h0;
  while (s < 1.0) {
    const double next = std::min(1.0, s + h);
    const cplx wn = value(next);
    const double increment = std::arg(wn / w);
    if (std::abs(increment) > options.max_increment) {
      h *= 0.5;
      if (h < 1e-12) throw ResolutionError(fmt::format("argument jumps by {} near s = {}", increment, s));
      continue;
    }
    total += increment;
    s = next;
    w = wn;
    h = std::min(h0, 2.0 * h);
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > options.drift) {
    throw ResolutionError(fmt::format("winding {} is not close to an integer", turns));
  }
  return static_cast<int>(rounded);
}

cplx BranchedCover::deck_root() const { return std::polar(1.0, 2.0 * kPi / (m + 1)); }

double BranchedCover::rule_residual(const C3& z) const {
  return std::abs(z(0) * z(0) + z(1) * z(1) - std::pow(z(2), m + 1) - 0.5);
}

C3 BranchedCover::deck(const C3& z, int power) const {
  C3 out = z;
  out(2) *= std::pow(deck_root(), power);
  return out;
}

std::vector<C3> lift_path(const BranchedCover& cover, const Path2& path, cplx seed_z3, const LiftOptions& options) {
  auto branch_at = [&](double s) {
    const C2 z = path(s);
    const cplx w = branch_function(z);
    if (std::abs(w) < options.proximity) {
      throw ProximityError(fmt::format("path meets the branch curve at s = {}", s));
    }
    return std::make_pair(z, w);
  };
  const auto [z0, w0] = branch_at(0.0);
  if (std::abs(std::pow(seed_z3, cover.m + 1) - w0) > 1e-8 * std::max(1.0, std::abs(w0))) {
    throw DegenerateInput("seed z3 does not satisfy the hypersurface rule at the path start");
  }
  std::vector<C3> out;
  out.push_back(C3(z0(0), z0(1), seed_z3));
  const double h0 = 1.0 / options.initial_steps;
  double s = 0.0;
  double h = h0;
  cplx current = seed_z3;
  while (s < 1.0) {
    const double next = std::min(1.0, s + h);
    const auto [z, w] = branch_at(next);
    const RootChoice choice = nearest_root(cover.m, w, current);
    if (choice.nearest >= options.ambiguity * choice.second) {
      h *= 0.5;
      if (h < options.min_step) throw ResolutionError(fmt::format("root tracking ambiguous near s = {}", s));
      continue;
    }
    current = choice.root;
    out.push_back(C3(z(0), z(1), current));
    s = next;
    h = std::min(h0, 2.0 * h);
  }
  return out;
}

C3 lifted_figure_eight(const BranchedCover& cover, const Eigen::Vector3d& t) {
  const Vec3 north = Vec3::UnitZ();
  Path2 path;
  if (t.dot(north) > -0.5) {
    path = [north, t](double s) { return figure_eight(slerp(north, t, s)); };
  } else {
    Vec3 mid(t.x(), t.y(), 0.0);
    mid = mid.norm() > 1e-6 ? mid.normalized() : Vec3::UnitX();
    path = [north, mid, t](double s) {
      return figure_eight(s < 0.5 ? slerp(north, mid, 2.0 * s) : slerp(mid, t, 2.0 * s - 1.0));
    };
  }
  LiftOptions options;
  options.initial_steps = 32;
  return lift_path(cover, path, std::pow(0.5, 1.0 / (cover.m + 1)), options).back();
}

AmConfiguration build_am_configuration(int m, int samples_per_sphere) {
  if (m < 1) throw DegenerateInput(fmt::format("A_m configuration needs m >= 1, got {}", m));
  const BranchedCover cover{m};
  const std::vector<Vec3> params = fibonacci_sphere(samples_per_sphere);
  std::vector<C3> first;
  first.reserve(params.size());
  for (const Vec3& t : params) first.push_back(lifted_figure_eight(cover, t));

  AmConfiguration config;
  config.m = m;
  config.samples_per_sphere = samples_per_sphere;
  for (int k = 0; k < m; ++k) {
    std::vector<C3> sphere;
    sphere.reserve(first.size());
    for (const C3& z : first) sphere.push_back(cover.deck(z, k));
    config.spheres.push_back(std::move(sphere));
  }

  // Nearest-neighbour spacing within L₁ (the deck maps are isometries).
  std::vector<double> spacing(first.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < first.size(); ++j) {
      if (i != j) spacing[i] = std::min(spacing[i], (first[i] - first[j]).norm());
    }
  }

  config.counts.assign(m, std::vector<int>(m, -1));
  config.min_angles.assign(m, std::vector<double>(m, 0.0));
  config.max_residuals.assign(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      std::vector<C3> points;
      double min_angle = std::numeric_limits<double>::infinity();
      double max_residual = 0.0;
      for (std::size_t i = 0; i < first.size(); ++i) {
        for (std::size_t j = 0; j < first.size(); ++j) {
          const double d = (config.spheres[a][i] - config.spheres[b][j]).norm();
          if (d > 1.5 * (spacing[i] + spacing[j])) continue;

          const auto [ei1, ei2] = sphere_frame(params[i]);
          const auto [ej1, ej2] = sphere_frame(params[j]);
          const cplx ref_i = first[i](2);
          const cplx ref_j = first[j](2);
          auto residual = [&](const Eigen::Vector4d& u) {
            const C3 za = cover.deck(local_lift(m, params[i], ei1, ei2, u.head<2>(), ref_i), a);
            const C3 zb = cover.deck(local_lift(m, params[j], ej1, ej2, u.tail<2>(), ref_j), b);
            return Vec6(realify(za - zb));
          };
          Eigen::Vector4d u = Eigen::Vector4d::Zero();
          Vec6 f = residual(u);
          Eigen::Matrix<double, 6, 4> jac;
          bool stalled = false;
          for (int it = 0; it < 50 && f.norm() > 1e-13; ++it) {
            for (int c = 0; c < 4; ++c) {
              Eigen::Vector4d e = Eigen::Vector4d::Zero();
              e(c) = 1e-7;
              jac.col(c) = (residual(u + e) - residual(u - e)) / 2e-7;
            }
            const Eigen::Vector4d step = jac.colPivHouseholderQr().solve(-f);
            u += step;
            f = residual(u);
            if (step.norm() < 1e-15) {
              stalled = true;
              break;
            }
          }
          const double res = f.norm();
          if (res >= 1e-10) {
            if (res < 1e-6 && !stalled) {
              throw CountUncertain(fmt::format("L{} ∩ L{}: refinement ended at residual {:.3e}", a + 1, b + 1, res));
            }
            continue;  // near miss
          }
          for (int c = 0; c < 4; ++c) {
            Eigen::Vector4d e = Eigen::Vector4d::Zero();
            e(c) = 1e-7;
            jac.col(c) = (residual(u + e) - residual(u - e)) / 2e-7;
          }
          const C3 za = cover.deck(local_lift(m, params[i], ei1, ei2, u.head<2>(), ref_i), a);
          bool merged = false;
          for (const C3& p : points) merged = merged || (p - za).norm() < 1e-2;
          if (!merged) points.push_back(za);
          Eigen::Matrix<double, 6, 2> ta = jac.leftCols<2>();
          Eigen::Matrix<double, 6, 2> tb = jac.rightCols<2>();
          Eigen::Matrix<double, 6, 4> both;
          both << Eigen::HouseholderQR<Eigen::Matrix<double, 6, 2>>(ta).householderQ() * Eigen::Matrix<double, 6, 2>::Identity(),
              Eigen::HouseholderQR<Eigen::Matrix<double, 6, 2>>(tb).householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
          min_angle = std::min(min_angle, Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>>(both).singularValues()(3));
          max_residual = std::max(max_residual, res);
        }
      }
      const int count = static_cast<int>(points.size());
      config.counts[a][b] = config.counts[b][a] = count;
      const double angle = count == 0 ? 0.0 : min_angle;
      config.min_angles[a][b] = config.min_angles[b][a] = angle;
      config.max_residuals[a][b] = config.max_residuals[b][a] = max_residual;
    }
  }
  return config;
}

void export_clouds_csv(const AmConfiguration& config, std::ostream& out) {
  out << "sphere,sample,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3\n";
  for (std::size_t k = 0; k < config.spheres.size(); ++k) {
    for (std::size_t i = 0; i < config.spheres[k].size(); ++i) {
      const C3& z = config.spheres[k][i];
      fmt::print(out, "{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", k + 1, i, z(0).real(), z(0).imag(),
                 z(1).real(), z(1).imag(), z(2).real(), z(2).imag());
    }
  }
}

CorrectionProfile::CorrectionProfile(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DegenerateInput(fmt::format("correction epsilon must lie in (0, 1), got {}", epsilon));
  using boost::math::quadrature::gauss_kronrod;
  const double e = epsilon_;
  auto weighted = [this](auto g) { return [this, g](double r) { return r * (this->*g)(r); }; };
  const double rise = gauss_kronrod<double, 61>::integrate(weighted(&CorrectionProfile::plateau), 0.5 * e, e, 15, 1e-15);
  const double flat = 0.5 * (1.0 / (e * e) - e * e);
  const double fall = gauss_kronrod<double, 61>::integrate(weighted(&CorrectionProfile::plateau), 1.0 / e, 1.5 / e, 15, 1e-15);
  const double lobe = gauss_kronrod<double, 61>::integrate(weighted(&CorrectionProfile::bump), 1.0 / e, 2.0 / e, 15, 1e-15);
  kappa_ = (rise + flat + fall) / lobe;
}

double CorrectionProfile::plateau(double r) const {
  const double e = epsilon_;
  if (r <= 0.5 * e) return 0.0;
  if (r < e) return numerics::smooth_transition((r - 0.5 * e) / (0.5 * e));
  if (r <= 1.0 / e) return 1.0;
  if (r < 1.5 / e) return 1.0 - numerics::smooth_transition((r - 1.0 / e) / (0.5 / e));
  return 0.0;
}

double CorrectionProfile::bump(double r) const {
  const double x = (r - 1.0 / epsilon_) * epsilon_;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (x * (1.0 - x)));
}

double CorrectionProfile::operator()(double r) const { return plateau(r) - kappa_ * bump(r); }

double CorrectionProfile::moment() const {
  using boost::math::quadrature::gauss_kronrod;
  const double e = epsilon_;
  const double breaks[] = {0.0, 0.5 * e, e, 1.0 / e, 1.5 / e, 2.0 / e};
  double total = 0.0;
  for (int i = 0; i + 1 < 6; ++i) {
    total += gauss_kronrod<double, 61>::integrate([this](double r) { return r * (*this)(r); }, breaks[i], breaks[i + 1], 15, 1e-15);
  }
  return total;
}

double corrected_omega(const CorrectionProfile& beta, const C3& z, const Vec6& a, const Vec6& b) {
  const double weight3 = 1.0 - beta(std::abs(z(2)));
  return a(0) * b(1) - a(1) * b(0) + a(2) * b(3) - a(3) * b(2) + weight3 * (a(4) * b(5) - a(5) * b(4));
}

CorrectionDefects correction_form_defects(const CorrectionProfile& beta, const BranchedCover& cover,
                                          const std::vector<Eigen::Vector3d>& sphere_points,
                                          const std::vector<C3>& hypersurface_points) {
  CorrectionDefects out;
  for (const Vec3& t : sphere_points) {
    const C3 z = lifted_figure_eight(cover, t);
    const auto [x, y] = sphere_frame(t);
    // df̃ = (df, dz₃) with dz₃ = dw / ((m+1) z₃^m), dw = 2z₁dz₁ + 2z₂dz₂.
    auto lift_differential = [&](const Vec3& dir) {
      const Eigen::Vector4d d = figure_eight_differential(t, dir);
      const cplx dz1(d(0), d(1));
      const cplx dz2(d(2), d(3));
      const cplx dz3 = (2.0 * z(0) * dz1 + 2.0 * z(1) * dz2) / (static_cast<double>(cover.m + 1) * std::pow(z(2), cover.m));
      Vec6 v;
      v << d, dz3.real(), dz3.imag();
      return v;
    };
    out.lagrangian_defect = std::max(out.lagrangian_defect, std::abs(corrected_omega(beta, z, lift_differential(x), lift_differential(y))));
  }

  out.min_pfaffian = std::numeric_limits<double>::infinity();
  for (const C3& z : hypersurface_points) {
    const C3 grad(2.0 * z(0), 2.0 * z(1), -static_cast<double>(cover.m + 1) * std::pow(z(2), cover.m));
    if (grad.norm() < 1e-12) {
      ++out.skipped;
      continue;
    }
    // Tangent space = Hermitian complement of conj(grad).
    const Eigen::Matrix3cd q = Eigen::HouseholderQR<Eigen::Vector3cd>(grad.conjugate()).householderQ();
    std::array<Vec6, 4> frame;
    for (int c = 0; c < 2; ++c) {
      const C3 u = q.col(c + 1);
      frame[2 * c] = realify(u);
      frame[2 * c + 1] = realify(cplx(0.0, 1.0) * u);
    }
    auto w = [&](int i, int j) { return corrected_omega(beta, z, frame[i], frame[j]); };
    const double pf = w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2);
    out.min_pfaffian = std::min(out.min_pfaffian, pf);
  }
  return out;
}

std::vector<C3> hypersurface_samples(const BranchedCover& cover, double epsilon, int count) {
  std::vector<C3> out;
  const double top = 3.0 / epsilon;
  for (int i = 0; i < count; ++i) {
    const double radius = top * (i + 0.5) / count;
    const cplx z3 = std::polar(radius, 2.399963229728653 * i);
    const cplx z1 = std::polar(0.7, 1.3 * i);
    const cplx z2 = std::sqrt(std::pow(z3, cover.m + 1) + 0.5 - z1 * z1);
    out.push_back(C3(z1, z2, z3));
  }
  return out;
}

}  // namespace twistkit::surgery
