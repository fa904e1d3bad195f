#pragma once

// Model Dehn twists on T*S²: τ(ξ) = σ(e^{iψ(|ξ|)})(ξ) off the zero-section and
// the antipodal map on it, for profiles ψ with ψ(t) + ψ(−t) = 2π.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistkit/sphere.hpp"

namespace twistkit::twist {

using sphere::Covector;

class TwistProfile {
 public:
  enum class Kind { Linear, Surgery, Flat };

  /// ψ = π − t/2r on [0, δ], δ = 2π(r − ¼), blended monotonically to 0 at 2πr.
  static TwistProfile linear(int r);
  /// ψ = π − t on [0, ε], positive on (ε, 2ε), 0 beyond. Needs 0 < ε < π/2.
  static TwistProfile surgery(double epsilon);
  /// ψ = π on [0, a], blended monotonically to 0 at b.
  static TwistProfile flat(double a, double b);

  /// ψ(t) for all real t, extended by ψ(−t) = 2π − ψ(t).
  double operator()(double t) const;
  double derivative(double t) const;
  /// (ψ(t) − π)/t, continuous at t = 0.
  double slope_ratio(double t) const;

  Kind kind() const { return kind_; }
  std::string name() const;
  double support_radius() const { return support_; }
  /// ε: 2πr for the linear profile, ε for the surgery profile, b for flat.
  double epsilon() const { return epsilon_; }
  std::optional<int> r() const { return r_; }
  std::optional<double> delta() const { return delta_; }

 private:
  TwistProfile(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  double positive(double t) const;
  double positive_derivative(double t) const;

  Kind kind_;
  double a_;  // end of the closed-form piece
  double b_;  // end of the blend zone
  double support_ = 0.0;
  double epsilon_ = 0.0;
  std::optional<int> r_;
  std::optional<double> delta_;
};

/// Alias of TwistProfile::linear.
TwistProfile make_profile(int r);

struct ModelTwist {
  TwistProfile profile;
};

Covector antipodal(const Covector& xi);

Covector twist(const ModelTwist& m, const Covector& xi);
Covector twist_inverse(const ModelTwist& m, const Covector& xi);
/// k-fold composite; negative k composes the inverse.
Covector twist_power(const ModelTwist& m, int k, const Covector& xi);

/// Time-one map of the Hamiltonian flow of Ψ(|ξ|), Ψ′ = ψ − π, by RK4. The
/// factorization A∘τ = this map witnesses smoothness across the zero-section.
Covector twist_factor_flow(const ModelTwist& m, const Covector& xi, int steps = 2000);

struct SymplecticCheck {
  double max_defect = 0.0;
  int evaluated = 0;
  int skipped = 0;
};

/// Max |η(DF·X, DF·Y) − η(X, Y)| over tangent basis pairs at each sample.
/// X, Y and DF·X, DF·Y are central-difference velocities (step h) of the same
/// retraction curves and of their images. Samples where `map` throws are
/// skipped and counted.
SymplecticCheck check_symplectic(const std::function<Covector(const Covector&)>& map,
                                 const std::vector<Covector>& samples, double h = 1e-5);

/// σ^{(s)}(e^{2i·scale·ψ(|ξ|)})(ξ). (s, scale) = (0, 1) is τ², (1, 0) the identity.
Covector square_isotopy_stage(const ModelTwist& m, double s, double scale, const Covector& xi);

/// Determinant of the central-difference Jacobian of a map T*S² → T*S² in
/// orthonormal tangent bases at ξ and at its image.
double tangent_jacobian_determinant(const std::function<Covector(const Covector&)>& map, const Covector& xi,
                                    double h = 1e-6);

/// (p, −ψ(|p|)·p/|p|): chart image of τ⁻¹(T*_x S²) under the exponential chart at x.
Eigen::Vector4d twisted_fiber_graph(const ModelTwist& m, const Eigen::Vector2d& p);

/// (p, −(π − ψ(|p|))·p/|p|), the stated graph of τ⁻¹(T*_x S²) in the chart at
/// A(x). Geometric evaluation gives the opposite sign of the base component;
/// see second_chart_defect.
Eigen::Vector4d second_chart_graph(const ModelTwist& m, const Eigen::Vector2d& p);

/// |f_x⁻¹(τ⁻¹(ξ)) − twisted_fiber_graph| for the fibre covector ξ at x with
/// chart coordinate p.
double first_chart_defect(const ModelTwist& m, const sphere::ExponentialChart& chart_at_x,
                          const Eigen::Vector2d& p);

/// Same comparison in the exponential chart at A(x), against the graph
/// (p′, +(π − ψ(|p′|))·p′/|p′|) obtained by direct evaluation.
double second_chart_defect(const ModelTwist& m, const sphere::ExponentialChart& chart_at_x,
                           const Eigen::Vector2d& p);

}  // namespace twistkit::twist
