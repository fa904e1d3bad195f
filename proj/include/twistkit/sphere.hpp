#pragma once

// The cotangent bundle of the round two-sphere, embedded as
// T*S² = {(u, v) ∈ R³ × R³ : |u| = 1, ⟨u, v⟩ = 0}
// with η = Σ dvᵢ ∧ duᵢ, θ = Σ vᵢ duᵢ and H = ½|v|².

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twistkit/half_integer.hpp"
#include "twistkit/maslov.hpp"

namespace twistkit::sphere {

using Vec3 = Eigen::Vector3d;

struct Covector {
  Vec3 u;
  Vec3 v;

  /// Validated constructor: | |u| − 1 | ≤ 1e-12 and |⟨u,v⟩| ≤ 1e-12·max(1,|v|).
  static Covector make(const Vec3& u, const Vec3& v);
  /// Normalizes u and removes the u-component of v.
  static Covector project(const Vec3& u, const Vec3& v);

  double speed() const { return v.norm(); }
  double constraint_defect() const;
};

/// Max-norm distance in R⁶.
double distance(const Covector& a, const Covector& b);

/// Closed-form geodesic flow (Hamiltonian flow of ½|v|²).
Covector geodesic_flow(const Covector& xi, double t);

/// Rotation of (u, v) by angle t about u×v/|u×v|. Throws ZeroSectionError at v = 0.
Covector circle_action(double t, const Covector& xi);

/// Rotation by angle t about s·u + (1−s)·u×v. s = 0 is circle_action, s = 1 the
/// fibrewise rotation. The axis vanishes only for s = 0, v = 0; there a full
/// turn is accepted and anything else throws AxisError.
Covector circle_action_family(double s, double t, const Covector& xi);

/// Hamiltonian vector field of ½|v|²: (v, −|v|² u).
std::pair<Vec3, Vec3> geodesic_vector_field(const Covector& xi);

/// Both sides of φ_t^{Ψ(H)}(ξ) = φ^H_{tΨ′(H(ξ))}(ξ) for H = ½|v|²: the first
/// by RK4 integration of Ψ′(H)·X_H, the second from the closed-form flow.
std::pair<Covector, Covector> reparametrized_flow_check(const std::function<double(double)>& psi_prime,
                                                        const Covector& xi, double t);

/// Linearized flow data along a geodesic: Ȧ = [[0, R], [1, 0]] A, A(0) = 1.
struct JacobiSystem {
  int n = 1;
  std::function<Eigen::MatrixXd(double)> curvature;  // R(r), symmetric n×n
  double step = 1e-3;
};

/// RK4 solution of a JacobiSystem on [0, 1], stored on the step grid. Dense
/// evaluation takes one RK4 step from the nearest node, which also serves
/// arguments slightly outside [0, 1].
class JacobiTransport {
 public:
  /// Throws DegenerateInput for non-symmetric R and IntegrationError when the
  /// symplectic defect of a node exceeds 1e-6.
  explicit JacobiTransport(JacobiSystem system);

  Eigen::MatrixXd operator()(double r) const;
  int n() const { return system_.n; }
  double max_symplectic_defect() const { return max_defect_; }
  maslov::SymplecticPath as_path() const;

 private:
  Eigen::MatrixXd step_from(const Eigen::MatrixXd& a, double r, double h) const;

  JacobiSystem system_;
  std::vector<Eigen::MatrixXd> nodes_;
  double max_defect_ = 0.0;
};

/// A(r) for a single r ∈ [0, 1].
Eigen::MatrixXd jacobi_transport(const JacobiSystem& system, double r);

struct Geodesic {
  Covector initial;  // c(0) = u, ċ(0) = v; parametrized over [0, 1]

  double speed() const { return initial.speed(); }
  Covector at(double r) const { return geodesic_flow(initial, r); }
};

/// Orthonormal frame of T_{c(r)}S² parallel along the geodesic: (ċ/|ċ|, u × ċ/|ċ|).
Eigen::Matrix<double, 3, 2> parallel_frame(const Geodesic& c, double r);

/// Jacobi system of the round sphere along c in the parallel frame,
/// R_ij = −(|ċ|²δ_ij − ⟨e_i, ċ⟩⟨e_j, ċ⟩).
JacobiSystem sphere_jacobi_system(const Geodesic& c);

struct ConjugateDatum {
  double r = 0.0;
  int multiplicity = 0;
};

/// All r ∈ (0, 1] where c(0) and c(r) are conjugate, with multiplicities.
std::vector<ConjugateDatum> conjugate_points(const Geodesic& c);

/// m(c) = Σ_{0<r<1} m(c, r) + ½ m(c, 1).
HalfInteger morse_index(const Geodesic& c);

/// e(c) = ½|ċ|².
double energy(const Geodesic& c);

/// −H(ξ) + ∫₀¹ θ(X_H)(φ_t ξ) dt by adaptive Gauss–Kronrod quadrature.
double action_of_constant_path(const Covector& xi);

/// (λ_ξ, λ′_ξ) with λ_ξ ≡ vertical and λ′_ξ(r) = [Dφ₋ᵣ(vertical)]_ξ, in the
/// trivialization at ξ given by parallel_frame at r = 0: coordinates
/// (p, q) = (⟨dv, eᵢ⟩, ⟨du, eᵢ⟩). λ′ is computed by Jacobi transport.
std::pair<maslov::LagrangianPath, maslov::LagrangianPath> index_path_data(const Covector& xi);

/// λ′_ξ(r) computed instead by central differences of the closed-form flow
/// (independent of the Jacobi equation). Used as a cross-check.
maslov::LagrangianPath flow_pullback_path(const Covector& xi, double h = 1e-6);

/// Tangent basis of T*S² at ξ: (eᵢ, −⟨eᵢ, v⟩u), (0, eᵢ) for an orthonormal
/// frame eᵢ of T_uS². Columns are 6-vectors (du; dv).
Eigen::Matrix<double, 6, 4> tangent_basis(const Covector& xi);

/// η(X, Y) = ⟨X_v, Y_u⟩ − ⟨Y_v, X_u⟩ for 6-vectors (du; dv).
double eta(const Eigen::Matrix<double, 6, 1>& x, const Eigen::Matrix<double, 6, 1>& y);

/// Point on T*S² obtained by moving from ξ along the 6-vector w and projecting.
Covector retract(const Covector& xi, const Eigen::Matrix<double, 6, 1>& w);

/// Central-difference pushforward of the tangent vector w at ξ under `map`.
Eigen::Matrix<double, 6, 1> pushforward(const std::function<Covector(const Covector&)>& map,
                                        const Covector& xi, const Eigen::Matrix<double, 6, 1>& w,
                                        double h);

/// Cotangent lift of exp_x: (p, q) ∈ R² × B_π ↦ covector at exp_x(q), with q
/// the base coordinate in the frame E of T_xS² and p the fibre coordinate
/// dual to q. The same chart serves for every x.
class ExponentialChart {
 public:
  ExponentialChart(const Vec3& x, const Eigen::Matrix<double, 3, 2>& frame);
  /// Uses an arbitrary orthonormal frame at x.
  explicit ExponentialChart(const Vec3& x);

  const Vec3& center() const { return x_; }
  const Eigen::Matrix<double, 3, 2>& frame() const { return e_; }

  Vec3 base_point(const Eigen::Vector2d& q) const;
  /// Differential of q ↦ base_point(q), 3×2.
  Eigen::Matrix<double, 3, 2> base_differential(const Eigen::Vector2d& q) const;
  /// Covector (u, v) for chart coordinates (p, q), |q| < π.
  Covector to_covector(const Eigen::Vector2d& p, const Eigen::Vector2d& q) const;
  /// Inverse of to_covector away from the antipode of x. Returns (p, q).
  std::pair<Eigen::Vector2d, Eigen::Vector2d> from_covector(const Covector& xi) const;

 private:
  Vec3 x_;
  Eigen::Matrix<double, 3, 2> e_;
};

/// Some orthonormal frame of T_uS².
Eigen::Matrix<double, 3, 2> tangent_frame(const Vec3& u);

}  // namespace twistkit::sphere
