#include "twistkit/sampling.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace twistkit::sampling {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Eigen::MatrixXd symmetric(Rng& rng, int n, double scale) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd symplectic_matrix(Rng& rng, int n, double scale) {
  const Eigen::MatrixXd omega = maslov::SymplecticSpace(n).form();
  return Eigen::MatrixXd((omega * symmetric(rng, 2 * n, scale)).exp());
}

sphere::Vec3 unit_vector(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  sphere::Vec3 x;
  do {
    x << g(rng), g(rng), g(rng);
  } while (x.norm() < 1e-3);
  return x.normalized();
}

sphere::Covector covector(Rng& rng, double speed) {
  const sphere::Vec3 u = unit_vector(rng);
  sphere::Vec3 w;
  do {
    w = unit_vector(rng);
    w -= w.dot(u) * u;
  } while (w.norm() < 1e-6);
  return sphere::Covector::make(u, speed * w.normalized());
}

maslov::LagrangianPath graph_path(Rng& rng, int n, double scale) {
  const Eigen::MatrixXd p = symplectic_matrix(rng, n, 0.7);
  const Eigen::MatrixXd s0 = symmetric(rng, n, scale);
  const Eigen::MatrixXd s1 = symmetric(rng, n, 2.0 * scale);
  const Eigen::MatrixXd s2 = symmetric(rng, n, scale);
  return maslov::LagrangianPath(n, 0.0, 1.0, [=](double t) {
    Eigen::MatrixXd g(2 * n, n);
    g.topRows(n) = Eigen::MatrixXd::Identity(n, n);
    g.bottomRows(n) = s0 + t * s1 + t * t * s2;
    return Eigen::MatrixXd(p * g);
  });
}

maslov::SymplecticPath shear_path(Rng& rng, int n, double scale) {
  const Eigen::MatrixXd s = symmetric(rng, n, scale);
  const Eigen::MatrixXd t = symmetric(rng, n, scale);
  const Eigen::MatrixXd base = symplectic_matrix(rng, n, 0.5);
  return [s, t, base, n](double r) {
    Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    Eigen::MatrixXd upper = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    lower.bottomLeftCorner(n, n) = r * s;
    upper.topRightCorner(n, n) = std::sin(r) * t;
    return Eigen::MatrixXd(base * lower * upper);
  };
}

}  // namespace twistkit::sampling
