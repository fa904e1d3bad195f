#pragma once

// Symplectic linear algebra on R^{2n} and the Maslov index for pairs of
// Lagrangian paths, evaluated through relative crossing forms.
//
// Conventions. Coordinates are (x_1..x_n, y_1..y_n) and the symplectic form is
// ω(a, b) = aᵀ Ω b with Ω = [[0, 1], [−1, 0]], so ω(e_i, e_{n+i}) = 1. The
// crossing form of a path Λ(t) at t₀ is Q(v) = d/dt ω(v, w(t)) where
// v + w(t) ∈ Λ(t) and w(t) lies in the complement Ω·Λ(t₀). With this sign the
// counter-clockwise rotation e^{is}(R × 0) in R² has positive crossings, and
// μ(λ, λ') = ½ sign Γ(a) + Σ_interior sign Γ(t) + ½ sign Γ(b) where
// Γ = Q_λ − Q_λ' restricted to λ ∩ λ'.

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "twistkit/half_integer.hpp"
#include "twistkit/numerics.hpp"

namespace twistkit::maslov {

/// R^{2n} with its standard symplectic form.
class SymplecticSpace {
 public:
  explicit SymplecticSpace(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  /// Ω = [[0, 1], [−1, 0]] (block form). Ω² = −1.
  const Eigen::MatrixXd& form() const { return form_; }
  double omega(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(form_ * b); }

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) { return a.n_ == b.n_; }

 private:
  int n_;
  Eigen::MatrixXd form_;
};

/// Linear Lagrangian subspace, stored as a column-orthonormal 2n×n basis.
class LagrangianFrame {
 public:
  /// Orthonormalizes `basis` and checks rank n and isotropy.
  /// Throws DegenerateInput for rank-deficient or non-isotropic input.
  static LagrangianFrame from_basis(const Eigen::MatrixXd& basis, double isotropy_tol = 1e-8);

  /// Rⁿ × 0.
  static LagrangianFrame horizontal(int n);
  /// 0 × Rⁿ.
  static LagrangianFrame vertical(int n);

  int n() const { return static_cast<int>(basis_.cols()); }
  SymplecticSpace space() const { return SymplecticSpace(n()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// ‖basisᵀ Ω basis‖_max for the stored orthonormal basis.
  double isotropy_defect() const;

 private:
  explicit LagrangianFrame(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}
  Eigen::MatrixXd basis_;
};

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankThreshold = 1e-8;

/// Singular values (descending) of the 2n×2n matrix [λ | λ'].
Eigen::VectorXd concatenated_singular_values(const LagrangianFrame& a, const LagrangianFrame& b);

/// dim(λ ∩ λ') = 2n − rank[λ | λ'], rank decided at kRankThreshold·σ_max.
int intersection_dimension(const LagrangianFrame& a, const LagrangianFrame& b);

/// Largest principal angle between two Lagrangian subspaces (radians).
double subspace_distance(const LagrangianFrame& a, const LagrangianFrame& b);

/// A path of Lagrangian subspaces given by a closed-form rule for a spanning
/// 2n×n basis. The rule must be smooth and defined on a neighborhood of
/// [a, b]: crossing forms are evaluated by central differences that may step
/// slightly past the endpoints.
class LagrangianPath {
 public:
  using Rule = std::function<Eigen::MatrixXd(double)>;

  LagrangianPath(int n, double a, double b, Rule rule);

  static LagrangianPath constant(const LagrangianFrame& frame, double a, double b);

  int n() const { return n_; }
  double start() const { return a_; }
  double end() const { return b_; }

  /// Raw basis from the rule (not orthonormalized).
  Eigen::MatrixXd basis_at(double t) const { return (*rule_)(t); }
  /// Validated orthonormal frame.
  LagrangianFrame at(double t) const { return LagrangianFrame::from_basis(basis_at(t)); }

  /// Same rule on a sub-interval.
  LagrangianPath restricted(double a, double b) const;
  /// t ↦ Ψ(t)·λ(t) for a path Ψ in Sp(2n).
  LagrangianPath conjugated(const std::function<Eigen::MatrixXd(double)>& symplectic_path) const;

 private:
  int n_;
  double a_;
  double b_;
  std::shared_ptr<const Rule> rule_;
};

struct CrossingRecord {
  double time = 0.0;
  int intersection_dim = 0;
  int crossing_form_signature = 0;
  bool is_endpoint = false;
};

struct CrossingOptions {
  numerics::DipScanOptions scan{};
  double derivative_step = 1e-5;   // central-difference step (Richardson-extrapolated once)
  double degeneracy_tol = 1e-6;    // relative bound below which a crossing-form eigenvalue is zero
};

/// All crossings of the pair on its common interval, each with the signature
/// of its relative crossing form. Throws DegenerateCrossing for non-regular
/// crossings and ResolutionError when a dimension jump cannot be isolated.
std::vector<CrossingRecord> crossings(const LagrangianPath& lambda, const LagrangianPath& lambda_prime,
                                      const CrossingOptions& options = {});

/// Maslov index μ(λ, λ') of a pair of paths on a common interval.
HalfInteger maslov_index_pair(const LagrangianPath& lambda, const LagrangianPath& lambda_prime,
                              const CrossingOptions& options = {});

/// Crossing-form matrix of a single path at t (n×n, in the orthonormal basis
/// of λ(t) returned by `at(t)`).
Eigen::MatrixXd crossing_form(const LagrangianPath& path, double t, double step = 1e-5);

/// A path r ↦ A(r) in Sp(2n) on [0, 1] with A(0) = 1.
using SymplecticPath = std::function<Eigen::MatrixXd(double)>;

struct NullityRecord {
  double r = 0.0;
  int dim = 0;
  bool at_start = false;
  bool at_end = false;
};

/// Parameters r ∈ [0, 1] where Rⁿ×0 meets A(r)⁻¹(Rⁿ×0), i.e. where the
/// lower-left block of A(r) is singular, with the dimension of the meet.
std::vector<NullityRecord> lower_block_nullities(const SymplecticPath& transport, int n,
                                                 const numerics::DipScanOptions& scan = {});

/// Σ-of-dimensions formula for λ = Rⁿ×0, λ' = A(r)⁻¹(Rⁿ×0):
/// ½ dim at 0 + Σ_{0<r<1} dim + ½ dim at 1. Uses only intersection
/// dimensions (nullity of the lower-left block of A), never crossing forms.
HalfInteger maslov_via_conjugate_points(const SymplecticPath& transport, int n,
                                        const numerics::DipScanOptions& scan = {});

/// The pair (Rⁿ×0, r ↦ A(r)⁻¹(Rⁿ×0)) on [0, 1].
std::pair<LagrangianPath, LagrangianPath> jacobi_pair(const SymplecticPath& transport, int n);

/// Coherent index i(γ_x) = μ(λ_x, λ'_x) − ½ dim L.
HalfInteger coherent_index_from_frame_data(const LagrangianPath& lambda,
                                           const LagrangianPath& lambda_prime, int dim_l,
                                           const CrossingOptions& options = {});

/// Offset i_H(γ) − i'(C) at a critical point of the local perturbation h on a
/// clean circle (four-dimensional local model), determined by the sign of
/// h''. Computed as ½ − μ(λ, λ') for λ(s) = {(r, r·s·h'')}×R×0 and
/// λ' = R×0×0×R in coordinates (z, x₁, x₂, x₃), ω = dz∧dx₁ + dx₂∧dx₃.
HalfInteger local_morse_offset(double second_derivative);

/// Symplectic defect ‖AᵀΩA − Ω‖_max / max(1, ‖A‖_max²).
double symplectic_defect(const Eigen::MatrixXd& a);

}  // namespace twistkit::maslov
