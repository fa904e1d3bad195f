#include "twistkit/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "twistkit/errors.hpp"

namespace twistkit::sphere {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 stack(const Covector& xi) {
  Vec6 out;
  out << xi.u, xi.v;
  return out;
}

}  // namespace

Covector Covector::make(const Vec3& u, const Vec3& v) {
  Covector xi{u, v};
  if (std::abs(u.norm() - 1.0) > 1e-12 || std::abs(u.dot(v)) > 1e-12 * std::max(1.0, v.norm())) {
    throw DegenerateInput(fmt::format("({}, {}, {}; {}, {}, {}) is not a covector on the unit sphere",
                                      u.x(), u.y(), u.z(), v.x(), v.y(), v.z()));
  }
  return xi;
}

Covector Covector::project(const Vec3& u, const Vec3& v) {
  const double norm = u.norm();
  if (!(norm > 0.0)) throw DegenerateInput("cannot project the zero vector onto the sphere");
  const Vec3 un = u / norm;
  return Covector{un, v - v.dot(un) * un};
}

double Covector::constraint_defect() const {
  return std::max(std::abs(u.norm() - 1.0), std::abs(u.dot(v)) / std::max(1.0, v.norm()));
}

double distance(const Covector& a, const Covector& b) {
  return std::max((a.u - b.u).cwiseAbs().maxCoeff(), (a.v - b.v).cwiseAbs().maxCoeff());
}

Covector geodesic_flow(const Covector& xi, double t) {
  const double s = xi.v.norm();
  if (s == 0.0) return xi;
  const double w = s * t;
  const double c = std::cos(w);
  const double sn = std::sin(w);
  return Covector{c * xi.u + sn * xi.v / s, -s * sn * xi.u + c * xi.v};
}

Covector circle_action(double t, const Covector& xi) {
  const Vec3 axis = xi.u.cross(xi.v);
  const double norm = axis.norm();
  if (norm == 0.0) throw ZeroSectionError("circle action is undefined on the zero-section");
  const Eigen::AngleAxisd rot(t, axis / norm);
  return Covector{rot * xi.u, rot * xi.v};
}

Covector circle_action_family(double s, double t, const Covector& xi) {
  const Vec3 axis = s * xi.u + (1.0 - s) * xi.u.cross(xi.v);
  const double norm = axis.norm();
  if (norm == 0.0) {
    const double turns = t / (2.0 * std::numbers::pi);
    if (std::abs(turns - std::round(turns)) < 1e-12) return xi;
    throw AxisError(fmt::format("rotation axis vanishes at s={}, t={}, u=({}, {}, {}), v=0", s, t,
                                xi.u.x(), xi.u.y(), xi.u.z()));
  }
  const Eigen::AngleAxisd rot(t, axis / norm);
  return Covector{rot * xi.u, rot * xi.v};
}

std::pair<Vec3, Vec3> geodesic_vector_field(const Covector& xi) {
  return {xi.v, -xi.v.squaredNorm() * xi.u};
}

std::pair<Covector, Covector> reparametrized_flow_check(const std::function<double(double)>& psi_prime,
                                                        const Covector& xi, double t) {
  auto field = [&](const Vec6& y) {
    const Covector p{y.head<3>(), y.tail<3>()};
    const double scale = psi_prime(0.5 * p.v.squaredNorm());
    const auto [du, dv] = geodesic_vector_field(p);
    Vec6 out;
    out << scale * du, scale * dv;
    return out;
  };
  const double rate = std::abs(t * psi_prime(0.5 * xi.v.squaredNorm())) * std::max(1.0, xi.v.norm());
  const int steps = std::max(200, static_cast<int>(std::ceil(rate / 1e-3)));
  const double h = t / steps;
  Vec6 y = stack(xi);
  for (int i = 0; i < steps; ++i) {
    const Vec6 k1 = field(y);
    const Vec6 k2 = field(y + 0.5 * h * k1);
    const Vec6 k3 = field(y + 0.5 * h * k2);
    const Vec6 k4 = field(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!y.allFinite()) throw IntegrationError("reparametrized flow diverged");
  const Covector left{y.head<3>(), y.tail<3>()};
  const Covector right = geodesic_flow(xi, t * psi_prime(0.5 * xi.v.squaredNorm()));
  return {left, right};
}

JacobiTransport::JacobiTransport(JacobiSystem system) : system_(std::move(system)) {
  if (system_.n < 1 || !(system_.step > 0.0)) throw DegenerateInput("invalid Jacobi system");
  const int steps = static_cast<int>(std::ceil(1.0 / system_.step - 1e-9));
  const double h = 1.0 / steps;
  const int dim = 2 * system_.n;
  nodes_.reserve(steps + 1);
  nodes_.push_back(Eigen::MatrixXd::Identity(dim, dim));
  for (int k = 0; k < steps; ++k) {
    nodes_.push_back(step_from(nodes_.back(), k * h, h));
    const double defect = maslov::symplectic_defect(nodes_.back());
    max_defect_ = std::max(max_defect_, defect);
    if (defect > 1e-6) {
      throw IntegrationError(fmt::format("Jacobi transport lost symplecticity at r={:.6g}: defect {:.3e}",
                                         (k + 1) * h, defect));
    }
  }
}

Eigen::MatrixXd JacobiTransport::step_from(const Eigen::MatrixXd& a, double r, double h) const {
  const int n = system_.n;
  auto generator = [&](double t) {
    const Eigen::MatrixXd rm = system_.curvature(t);
    if (rm.rows() != n || rm.cols() != n) throw DegenerateInput("curvature matrix has the wrong size");
    if ((rm - rm.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, rm.cwiseAbs().maxCoeff())) {
      throw DegenerateInput(fmt::format("curvature matrix is not symmetric at r={}", t));
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topRightCorner(n, n) = rm;
    m.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    return m;
  };
  const Eigen::MatrixXd m0 = generator(r);
  const Eigen::MatrixXd mh = generator(r + 0.5 * h);
  const Eigen::MatrixXd m1 = generator(r + h);
  const Eigen::MatrixXd k1 = m0 * a;
  const Eigen::MatrixXd k2 = mh * (a + 0.5 * h * k1);
  const Eigen::MatrixXd k3 = mh * (a + 0.5 * h * k2);
  const Eigen::MatrixXd k4 = m1 * (a + h * k3);
  return a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::MatrixXd JacobiTransport::operator()(double r) const {
  const int steps = static_cast<int>(nodes_.size()) - 1;
  const double h = 1.0 / steps;
  const int k = std::clamp(static_cast<int>(std::lround(r / h)), 0, steps);
  const double offset = r - k * h;
  if (offset == 0.0) return nodes_[k];
  return step_from(nodes_[k], k * h, offset);
}

maslov::SymplecticPath JacobiTransport::as_path() const {
  auto self = std::make_shared<const JacobiTransport>(*this);
  return [self](double r) { return (*self)(r); };
}

Eigen::MatrixXd jacobi_transport(const JacobiSystem& system, double r) {
  if (r < 0.0 || r > 1.0) throw DegenerateInput(fmt::format("transport parameter {} outside [0, 1]", r));
  return JacobiTransport(system)(r);
}

Eigen::Matrix<double, 3, 2> parallel_frame(const Geodesic& c, double r) {
  const Covector p = c.at(r);
  const double s = p.v.norm();
  if (s == 0.0) throw DegenerateInput("geodesic with zero speed has no tangent frame");
  Eigen::Matrix<double, 3, 2> e;
  e.col(0) = p.v / s;
  e.col(1) = p.u.cross(p.v / s);
  return e;
}

JacobiSystem sphere_jacobi_system(const Geodesic& c) {
  JacobiSystem sys;
  sys.n = 2;
  sys.curvature = [c](double r) {
    const Eigen::Matrix<double, 3, 2> e = parallel_frame(c, r);
    const Vec3 velocity = c.at(r).v;
    const Eigen::Vector2d comp = e.transpose() * velocity;
    Eigen::MatrixXd rm = -(velocity.squaredNorm() * Eigen::Matrix2d::Identity() - comp * comp.transpose());
    return Eigen::MatrixXd(0.5 * (rm + rm.transpose()));
  };
  // RK4 error grows like (h|ċ|)⁴; keep h|ċ| ≤ π·10⁻³ so long geodesics resolve
  // their endpoint conjugate points as well as short ones.
  sys.step = std::min(1e-3, 1e-3 * std::numbers::pi / std::max(c.speed(), 1e-300));
  return sys;
}

std::vector<ConjugateDatum> conjugate_points(const Geodesic& c) {
  const JacobiTransport transport(sphere_jacobi_system(c));
  std::vector<ConjugateDatum> out;
  for (const maslov::NullityRecord& rec : maslov::lower_block_nullities(transport.as_path(), 2)) {
    if (rec.at_start) continue;
    out.push_back({rec.r, rec.dim});
  }
  return out;
}

HalfInteger morse_index(const Geodesic& c) {
  std::int64_t twice = 0;
  for (const ConjugateDatum& d : conjugate_points(c)) {
    twice += (d.r == 1.0) ? d.multiplicity : 2 * d.multiplicity;
  }
  return HalfInteger::from_twice(twice);
}

double energy(const Geodesic& c) { return 0.5 * c.initial.v.squaredNorm(); }

double action_of_constant_path(const Covector& xi) {
  auto integrand = [&](double t) {
    const Covector p = geodesic_flow(xi, t);
    const auto [du, dv] = geodesic_vector_field(p);
    (void)dv;
    return p.v.dot(du);  // θ(X) = ⟨v, du⟩
  };
  double error = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, 1e-14, &error);
  if (!(error <= 1e-10 * std::max(1.0, std::abs(integral)))) {
    throw IntegrationError(fmt::format("action quadrature error estimate {:.3e}", error));
  }
  return -0.5 * xi.v.squaredNorm() + integral;
}

std::pair<maslov::LagrangianPath, maslov::LagrangianPath> index_path_data(const Covector& xi) {
  if (xi.v.norm() == 0.0) throw DegenerateInput("index path data needs a nonzero covector");
  const JacobiTransport transport(sphere_jacobi_system(Geodesic{xi}));
  return maslov::jacobi_pair(transport.as_path(), 2);
}

maslov::LagrangianPath flow_pullback_path(const Covector& xi, double h) {
  if (xi.v.norm() == 0.0) throw DegenerateInput("index path data needs a nonzero covector");
  const Geodesic c{xi};
  const Eigen::Matrix<double, 3, 2> e0 = parallel_frame(c, 0.0);
  return maslov::LagrangianPath(2, 0.0, 1.0, [c, e0, h](double r) {
    const Covector moved = c.at(r);
    const Eigen::Matrix<double, 3, 2> er = tangent_frame(moved.u);
    auto back = [r](const Covector& p) { return geodesic_flow(p, -r); };
    Eigen::MatrixXd basis(4, 2);
    for (int i = 0; i < 2; ++i) {
      Vec6 w = Vec6::Zero();
      w.tail<3>() = er.col(i);
      const Vec6 image = pushforward(back, moved, w, h);
      basis.block<2, 1>(0, i) = e0.transpose() * image.tail<3>();
      basis.block<2, 1>(2, i) = e0.transpose() * image.head<3>();
    }
    return basis;
  });
}

Eigen::Matrix<double, 3, 2> tangent_frame(const Vec3& u) {
  Eigen::Index axis = 0;
  u.cwiseAbs().minCoeff(&axis);
  Vec3 a = Vec3::Zero();
  a(axis) = 1.0;
  Eigen::Matrix<double, 3, 2> e;
  e.col(0) = (a - a.dot(u) * u).normalized();
  e.col(1) = u.cross(e.col(0));
  return e;
}

Eigen::Matrix<double, 6, 4> tangent_basis(const Covector& xi) {
  const Eigen::Matrix<double, 3, 2> e = tangent_frame(xi.u);
  Eigen::Matrix<double, 6, 4> b = Eigen::Matrix<double, 6, 4>::Zero();
  for (int i = 0; i < 2; ++i) {
    b.block<3, 1>(0, i) = e.col(i);
    b.block<3, 1>(3, i) = -e.col(i).dot(xi.v) * xi.u;
    b.block<3, 1>(3, 2 + i) = e.col(i);
  }
  return b;
}

double eta(const Eigen::Matrix<double, 6, 1>& x, const Eigen::Matrix<double, 6, 1>& y) {
  return x.tail<3>().dot(y.head<3>()) - y.tail<3>().dot(x.head<3>());
}

Covector retract(const Covector& xi, const Eigen::Matrix<double, 6, 1>& w) {
  return Covector::project(xi.u + w.head<3>(), xi.v + w.tail<3>());
}

Eigen::Matrix<double, 6, 1> pushforward(const std::function<Covector(const Covector&)>& map,
                                        const Covector& xi, const Eigen::Matrix<double, 6, 1>& w,
                                        double h) {
  const Vec6 plus = stack(map(retract(xi, h * w)));
  const Vec6 minus = stack(map(retract(xi, -h * w)));
  return (plus - minus) / (2.0 * h);
}

ExponentialChart::ExponentialChart(const Vec3& x, const Eigen::Matrix<double, 3, 2>& frame)
    : x_(x), e_(frame) {
  if (std::abs(x.norm() - 1.0) > 1e-12 || (frame.transpose() * frame - Eigen::Matrix2d::Identity()).norm() > 1e-12 ||
      (frame.transpose() * x).norm() > 1e-12) {
    throw DegenerateInput("exponential chart needs a unit point and an orthonormal tangent frame");
  }
}

ExponentialChart::ExponentialChart(const Vec3& x) : ExponentialChart(x, tangent_frame(x)) {}

Vec3 ExponentialChart::base_point(const Eigen::Vector2d& q) const {
  const double rho = q.norm();
  if (rho == 0.0) return x_;
  return std::cos(rho) * x_ + std::sin(rho) / rho * (e_ * q);
}

Eigen::Matrix<double, 3, 2> ExponentialChart::base_differential(const Eigen::Vector2d& q) const {
  const double rho = q.norm();
  if (rho < 1e-8) return e_ - x_ * q.transpose();
  const Eigen::Vector2d qh = q / rho;
  const Eigen::Matrix2d radial = qh * qh.transpose();
  return -std::sin(rho) * x_ * qh.transpose() + std::cos(rho) * e_ * radial +
         std::sin(rho) / rho * e_ * (Eigen::Matrix2d::Identity() - radial);
}

Covector ExponentialChart::to_covector(const Eigen::Vector2d& p, const Eigen::Vector2d& q) const {
  if (!(q.norm() < std::numbers::pi)) {
    throw DegenerateInput(fmt::format("chart coordinate |q| = {} outside the injectivity radius", q.norm()));
  }
  const Eigen::Matrix<double, 3, 2> d = base_differential(q);
  const Vec3 v = d * (d.transpose() * d).ldlt().solve(p);
  return Covector::project(base_point(q), v);
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> ExponentialChart::from_covector(const Covector& xi) const {
  const Eigen::Vector2d w = e_.transpose() * xi.u;
  const double rho = std::atan2(w.norm(), xi.u.dot(x_));
  if (rho > std::numbers::pi - 1e-9) throw DegenerateInput("covector sits over the antipode of the chart center");
  const Eigen::Vector2d q = w.norm() == 0.0 ? Eigen::Vector2d::Zero() : Eigen::Vector2d(rho * w / w.norm());
  const Eigen::Vector2d p = base_differential(q).transpose() * xi.v;
  return {p, q};
}

}  // namespace twistkit::sphere
