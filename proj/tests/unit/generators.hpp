#pragma once

// Hand-rolled random generators for property tests. Everything is driven by a
// caller-owned std::mt19937_64 so failures reproduce from the printed seed.

#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "twistkit/maslov.hpp"

namespace testgen {

inline Eigen::MatrixXd standard_omega(int n) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  f.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  f.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return f;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::MatrixXd symmetric(std::mt19937_64& rng, int n, double scale) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
  return 0.5 * (m + m.transpose());
}

/// exp(Ω·S) for a random symmetric S: a random element of Sp(2n).
inline Eigen::MatrixXd symplectic_matrix(std::mt19937_64& rng, int n, double scale) {
  return Eigen::MatrixXd((standard_omega(n) * symmetric(rng, 2 * n, scale)).exp());
}

/// Lower and upper shears [[1,0],[S,1]], [[1,T],[0,1]] are symplectic for
/// symmetric S, T; their product along t is a cheap symplectic path.
inline twistkit::maslov::SymplecticPath shear_path(std::mt19937_64& rng, int n, double scale) {
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

/// t ↦ P·graph(S(t)) with S(t) = S₀ + t·S₁ + t²·S₂ symmetric and P symplectic.
inline twistkit::maslov::LagrangianPath graph_path(std::mt19937_64& rng, int n, double a, double b,
                                                   double scale) {
  const Eigen::MatrixXd p = symplectic_matrix(rng, n, 0.7);
  const Eigen::MatrixXd s0 = symmetric(rng, n, scale);
  const Eigen::MatrixXd s1 = symmetric(rng, n, 2.0 * scale);
  const Eigen::MatrixXd s2 = symmetric(rng, n, scale);
  return twistkit::maslov::LagrangianPath(n, a, b, [=](double t) {
    Eigen::MatrixXd g(2 * n, n);
    g.topRows(n) = Eigen::MatrixXd::Identity(n, n);
    g.bottomRows(n) = s0 + t * s1 + t * t * s2;
    return Eigen::MatrixXd(p * g);
  });
}

/// Ȧ = [[0,R],[1,0]]A with constant R: A(r) = exp(r·M), closed form.
inline twistkit::maslov::SymplecticPath constant_jacobi(const Eigen::MatrixXd& r_matrix) {
  const int n = static_cast<int>(r_matrix.rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = r_matrix;
  m.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return [m](double r) { return Eigen::MatrixXd((r * m).exp()); };
}

}  // namespace testgen
