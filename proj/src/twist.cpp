#include "twistkit/twist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "twistkit/errors.hpp"
#include "twistkit/numerics.hpp"

namespace twistkit::twist {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix<double, 6, 4> orthonormal_tangent_basis(const Covector& xi) {
  const Eigen::Matrix<double, 6, 4> b = sphere::tangent_basis(xi);
  Eigen::HouseholderQR<Eigen::Matrix<double, 6, 4>> qr(b);
  return qr.householderQ() * Eigen::Matrix<double, 6, 4>::Identity();
}

}  // namespace

TwistProfile TwistProfile::linear(int r) {
  if (r < 1) throw DegenerateInput(fmt::format("twist profile needs r >= 1, got {}", r));
  const double delta = 2.0 * kPi * (r - 0.25);
  TwistProfile p(Kind::Linear, delta, 2.0 * kPi * r);
  p.support_ = 2.0 * kPi * r;
  p.epsilon_ = 2.0 * kPi * r;
  p.r_ = r;
  p.delta_ = delta;
  return p;
}

TwistProfile TwistProfile::surgery(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kPi / 2.0)) {
    throw DegenerateInput(fmt::format("surgery profile needs 0 < epsilon < pi/2, got {}", epsilon));
  }
  TwistProfile p(Kind::Surgery, epsilon, 2.0 * epsilon);
  p.support_ = 2.0 * epsilon;
  p.epsilon_ = epsilon;
  return p;
}

TwistProfile TwistProfile::flat(double a, double b) {
  if (!(a > 0.0 && b > a)) throw DegenerateInput(fmt::format("flat profile needs 0 < a < b, got {}, {}", a, b));
  TwistProfile p(Kind::Flat, a, b);
  p.support_ = b;
  p.epsilon_ = b;
  return p;
}

std::string TwistProfile::name() const {
  switch (kind_) {
    case Kind::Linear: return fmt::format("linear(r={})", *r_);
    case Kind::Surgery: return fmt::format("surgery(eps={})", epsilon_);
    case Kind::Flat: return fmt::format("flat({}, {})", a_, b_);
  }
  return "unknown";
}

double TwistProfile::positive(double t) const {
  if (t >= b_) return 0.0;
  double base = kPi;
  if (kind_ == Kind::Linear) base = kPi - t / (2.0 * *r_);
  if (kind_ == Kind::Surgery) base = kPi - t;
  if (t <= a_) return base;
  return base * (1.0 - numerics::smooth_transition((t - a_) / (b_ - a_)));
}

double TwistProfile::positive_derivative(double t) const {
  if (t >= b_) return 0.0;
  double base = kPi;
  double slope = 0.0;
  if (kind_ == Kind::Linear) {
    base = kPi - t / (2.0 * *r_);
    slope = -1.0 / (2.0 * *r_);
  }
  if (kind_ == Kind::Surgery) {
    base = kPi - t;
    slope = -1.0;
  }
  if (t <= a_) return slope;
  const double x = (t - a_) / (b_ - a_);
  return slope * (1.0 - numerics::smooth_transition(x)) -
         base * numerics::smooth_transition_derivative(x) / (b_ - a_);
}

double TwistProfile::operator()(double t) const {
  return t >= 0.0 ? positive(t) : 2.0 * kPi - positive(-t);
}

double TwistProfile::derivative(double t) const {
  return t >= 0.0 ? positive_derivative(t) : positive_derivative(-t);
}

double TwistProfile::slope_ratio(double t) const {
  if (std::abs(t) < 1e-8) return derivative(0.0);
  return ((*this)(t) - kPi) / t;
}

TwistProfile make_profile(int r) { return TwistProfile::linear(r); }

Covector antipodal(const Covector& xi) { return Covector{-xi.u, -xi.v}; }

Covector twist(const ModelTwist& m, const Covector& xi) {
  const double s = xi.v.norm();
  if (s == 0.0) return Covector{-xi.u, xi.v};
  return sphere::circle_action(m.profile(s), xi);
}

Covector twist_inverse(const ModelTwist& m, const Covector& xi) {
  const double s = xi.v.norm();
  if (s == 0.0) return Covector{-xi.u, xi.v};
  return sphere::circle_action(-m.profile(s), xi);
}

Covector twist_power(const ModelTwist& m, int k, const Covector& xi) {
  Covector out = xi;
  for (int i = 0; i < std::abs(k); ++i) out = k > 0 ? twist(m, out) : twist_inverse(m, out);
  return out;
}

Covector twist_factor_flow(const ModelTwist& m, const Covector& xi, int steps) {
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  // X = Ψ′(|v|)·X_H/|v| = ((ψ(|v|) − π)/|v|)·(v, −|v|²u).
  auto field = [&](const Vec6& y) {
    const Eigen::Vector3d u = y.head<3>();
    const Eigen::Vector3d v = y.tail<3>();
    const double g = m.profile.slope_ratio(v.norm());
    Vec6 out;
    out << g * v, -g * v.squaredNorm() * u;
    return out;
  };
  Vec6 y;
  y << xi.u, xi.v;
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const Vec6 k1 = field(y);
    const Vec6 k2 = field(y + 0.5 * h * k1);
    const Vec6 k3 = field(y + 0.5 * h * k2);
    const Vec6 k4 = field(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!y.allFinite()) throw IntegrationError("twist factor flow diverged");
  return Covector{y.head<3>(), y.tail<3>()};
}

SymplecticCheck check_symplectic(const std::function<Covector(const Covector&)>& map,
                                 const std::vector<Covector>& samples, double h) {
  // "Before" is η on the central-difference velocities of the same sample
  // curves, so both sides carry the same discretization.
  const auto identity = [](const Covector& x) { return x; };
  SymplecticCheck out;
  for (const Covector& xi : samples) {
    const Eigen::Matrix<double, 6, 4> b = sphere::tangent_basis(xi);
    Eigen::Matrix<double, 6, 4> before;
    Eigen::Matrix<double, 6, 4> after;
    try {
      for (int i = 0; i < 4; ++i) {
        before.col(i) = sphere::pushforward(identity, xi, b.col(i), h);
        after.col(i) = sphere::pushforward(map, xi, b.col(i), h);
      }
    } catch (const Error&) {
      ++out.skipped;
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const double defect =
            std::abs(sphere::eta(after.col(i), after.col(j)) - sphere::eta(before.col(i), before.col(j)));
        out.max_defect = std::max(out.max_defect, defect);
      }
    }
    ++out.evaluated;
  }
  return out;
}

Covector square_isotopy_stage(const ModelTwist& m, double s, double scale, const Covector& xi) {
  return sphere::circle_action_family(s, 2.0 * scale * m.profile(xi.v.norm()), xi);
}

double tangent_jacobian_determinant(const std::function<Covector(const Covector&)>& map, const Covector& xi,
                                    double h) {
  const Eigen::Matrix<double, 6, 4> source = orthonormal_tangent_basis(xi);
  const Eigen::Matrix<double, 6, 4> target = orthonormal_tangent_basis(map(xi));
  Eigen::Matrix4d jac;
  for (int j = 0; j < 4; ++j) {
    jac.col(j) = target.transpose() * sphere::pushforward(map, xi, source.col(j), h);
  }
  return jac.determinant();
}

Eigen::Vector4d twisted_fiber_graph(const ModelTwist& m, const Eigen::Vector2d& p) {
  const double s = p.norm();
  if (s == 0.0) throw PunctureError("twisted fibre graph is undefined at p = 0");
  Eigen::Vector4d out;
  out << p, -m.profile(s) / s * p;
  return out;
}

Eigen::Vector4d second_chart_graph(const ModelTwist& m, const Eigen::Vector2d& p) {
  const double s = p.norm();
  Eigen::Vector4d out;
  if (s == 0.0) {
    out.setZero();
    return out;
  }
  out << p, -(kPi - m.profile(s)) / s * p;
  return out;
}

double first_chart_defect(const ModelTwist& m, const sphere::ExponentialChart& chart_at_x,
                          const Eigen::Vector2d& p) {
  const Covector fibre = chart_at_x.to_covector(p, Eigen::Vector2d::Zero());
  const auto [pc, qc] = chart_at_x.from_covector(twist_inverse(m, fibre));
  const Eigen::Vector4d expected = twisted_fiber_graph(m, p);
  return std::max((pc - expected.head<2>()).cwiseAbs().maxCoeff(), (qc - expected.tail<2>()).cwiseAbs().maxCoeff());
}

double second_chart_defect(const ModelTwist& m, const sphere::ExponentialChart& chart_at_x,
                           const Eigen::Vector2d& p) {
  const Covector fibre = chart_at_x.to_covector(p, Eigen::Vector2d::Zero());
  const sphere::ExponentialChart chart_at_antipode(-chart_at_x.center());
  const auto [pc, qc] = chart_at_antipode.from_covector(twist_inverse(m, fibre));
  const double s = pc.norm();
  if (s == 0.0) throw PunctureError("second chart comparison at p = 0");
  const Eigen::Vector2d expected_q = (kPi - m.profile(s)) / s * pc;
  return std::max(std::abs(s - p.norm()), (qc - expected_q).cwiseAbs().maxCoeff());
}

}  // namespace twistkit::twist
