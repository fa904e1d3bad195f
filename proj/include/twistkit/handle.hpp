#pragma once

// Lagrangian handles in (R⁴, dx₁∧dx₃ + dx₂∧dx₄) swept out by rotating a
// plane curve C: (y₁, y₂) ↦ (y₁ cos t, y₁ sin t, y₂ cos t, y₂ sin t).

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "twistkit/twist.hpp"

namespace twistkit::surgery {

class ProfileCurve {
 public:
  using Map = std::function<Eigen::Vector2d(double)>;

  /// `point` on [s_min, s_max]. Outside |s| ≥ axes_beyond the curve is
  /// expected to lie on (R⁺×0) ∪ (0×R⁻); NaN means no such claim.
  ProfileCurve(Map point, double s_min, double s_max, double axes_beyond, std::string name);

  /// Corner of the axes smoothed inside |s| < ρ: c(s) = ρ(g(s/ρ), −g(−s/ρ))
  /// with g′(x) = S((x+1)/2). Lies in the closed fourth quadrant and avoids 0,
  /// so no x with −x also on C.
  static ProfileCurve smoothed_corner(double rho);
  /// c(t) = (ϱ(π − ψ(t))·t, −ψ(t)) for t > 0, with the cutoff ϱ = 0 on
  /// [0, ε/4] and 1 on [ε/2, ∞), for the surgery profile ψ.
  static ProfileCurve surgery_curve(const twist::TwistProfile& psi);
  /// Unit-circle arc of angular length 4, which contains antipodal pairs.
  static ProfileCurve antipodal_arc();
  /// The unsmoothed corner (s, 0) for s ≥ 0 and (0, s) for s < 0.
  static ProfileCurve axes();

  Eigen::Vector2d operator()(double s) const { return point_(s); }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }
  double axes_beyond() const { return axes_beyond_; }
  const std::string& name() const { return name_; }

 private:
  Map point_;
  double s_min_;
  double s_max_;
  double axes_beyond_;
  std::string name_;
};

/// g(x) = ∫_{−1}^{x} S((y+1)/2) dy; g(x) = 0 for x ≤ −1 and x for x ≥ 1.
double corner_primitive(double x);

struct CurveCheck {
  double axes_defect = 0.0;  // max distance to the axes for |s| ≥ axes_beyond
  bool in_closed_fourth_quadrant = false;
  double min_norm = 0.0;     // > 0 means the origin is avoided
  bool no_antipodal_pair = false;
};

CurveCheck check_curve(const ProfileCurve& curve, int samples);

struct HandlePatch {
  std::function<Eigen::Vector4d(double, double)> embedding;  // (s, t)
  double s_min = 0.0;
  double s_max = 0.0;
  int ns = 0;
  int nt = 0;

  double s_at(int i) const { return s_min + (s_max - s_min) * i / (ns - 1); }
  double t_at(int k) const;
  Eigen::Vector4d sample(int i, int k) const { return embedding(s_at(i), t_at(k)); }

  static HandlePatch from_curve(const ProfileCurve& curve, int ns, int nt);
  static HandlePatch from_curve(const ProfileCurve& curve, double s_min, double s_max, int ns, int nt);
};

Eigen::Vector4d handle_point(const Eigen::Vector2d& y, double t);

/// Multiplies every sample by 1 + amplitude·sin 3t (a non-Lagrangian distortion).
HandlePatch with_radial_jitter(const HandlePatch& patch, double amplitude);

/// ω = dx₁∧dx₃ + dx₂∧dx₄ on 4-vectors.
double handle_omega(const Eigen::Vector4d& a, const Eigen::Vector4d& b);

/// max |ω(∂_s, ∂_t)| over the grid, with central differences of step h.
/// Throws GridError where a difference quotient vanishes.
double handle_lagrangian_defect(const HandlePatch& patch, double h = 1e-5);

/// max over samples with |s| ≥ axes_beyond of the distance to (R²×0) ∪ (0×R²).
double handle_axes_defect(const HandlePatch& patch, double axes_beyond);

struct Embeddedness {
  enum class Verdict { Embedded, NotEmbedded, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  double min_distance = 0.0;  // over non-neighbouring sample pairs
  /// (s, t) parameters of a certified collision.
  std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> collision;
};

/// Compares every pair of samples more than `separation` grid steps apart (in
/// s or cyclically in t) against the local grid spacing. Close pairs are
/// refined by Gauss–Newton on |H(a) − H(b)|; only a refined residual below
/// 1e-10 certifies a collision, otherwise the verdict is Inconclusive.
Embeddedness handle_embeddedness(const HandlePatch& patch, int separation = 3);

struct GraphIdentity {
  double first_chart = 0.0;       // τ⁻¹(T*_x) vs (p, −ψ p/|p|) in the chart at x
  double second_chart = 0.0;      // same in the chart at A(x), geometric sign
  double handle_match = 0.0;      // handle samples vs chart images where ϱ = 1
  double handle_lagrangian = 0.0;
  double max_defect() const;
};

/// Formula-level check that τ⁻¹(T*_x S²) is the surgered handle, at 100
/// random fibre points and on a handle grid. Needs the surgery profile.
GraphIdentity surgery_graph_identity(const twist::TwistProfile& psi, unsigned seed = 0);

/// Distance of a point of R⁴ to the handle of the line y₁ − y₂ = π.
double line_handle_distance(const Eigen::Vector4d& x);

struct BraidIngredients {
  int samples = 0;
  double surgery_one = 0.0;  // τ⁻¹(fibre) in the chart at x
  double surgery_two = 0.0;  // τ(fibre) after swapping the roles of the planes
};

/// Both clouds are compared with the handle of y₁ − y₂ = π on the linear
/// piece of ψ, where ψ(t) = π − t.
BraidIngredients braid_ingredients(const twist::TwistProfile& psi, int samples = 400);

}  // namespace twistkit::surgery
