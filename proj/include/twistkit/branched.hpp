#pragma once

// The affine hypersurface z₁² + z₂² = z₃^{m+1} + ½ as an (m+1)-fold cover of
// C² branched along C = {z₁² + z₂² = ½}, the Lagrangian figure-eight
// f(t) = (t₂(1 + it₁), t₃(1 + it₁)) and its lifts.

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace twistkit::surgery {

using cplx = std::complex<double>;
using C2 = Eigen::Vector2cd;
using C3 = Eigen::Vector3cd;
using Path2 = std::function<C2(double)>;  // s ∈ [0, 1]

/// z₁² + z₂² − ½; C is its zero set.
cplx branch_function(const C2& z);

C2 figure_eight(const Eigen::Vector3d& t);

struct FigureEightCheck {
  int samples = 0;
  double lagrangian_defect = 0.0;   // max |ω₀(df X, df Y)| for orthonormal X, Y
  double min_singular_value = 0.0;  // of df on tangent planes (immersion)
  double min_branch_distance = 0.0; // min |z₁² + z₂² − ½| over the image
};

/// Samples S² on a Fibonacci lattice; df by central differences of step h.
FigureEightCheck check_figure_eight(int samples, double h = 1e-6);

/// Unit vectors on a Fibonacci lattice of S².
std::vector<Eigen::Vector3d> fibonacci_sphere(int samples);

/// f∘γ for the meridian γ(s) = (cos πs, sin πs, 0) from (1,0,0) to (−1,0,0),
/// traversed `times` times. Closed because f(±1, 0, 0) = 0.
Path2 meridian_loop(int times = 1);

struct LinkingOptions {
  int initial_steps = 256;
  double proximity = 1e-6;     // min |z₁² + z₂² − ½| allowed along the loop
  double max_increment = 0.5;  // radians of arg per accepted step
  double drift = 0.1;
};

/// Winding number of s ↦ z₁(s)² + z₂(s)² − ½ around 0, by summed argument
/// increments with adaptive subdivision. Throws ProximityError near C and
/// ResolutionError if the total is further than `drift` from an integer.
int linking_number(const Path2& loop, const LinkingOptions& options = {});

struct BranchedCover {
  int m = 1;

  cplx deck_root() const;  // e^{2πi/(m+1)}
  double rule_residual(const C3& z) const;
  C3 deck(const C3& z, int power = 1) const;
};

struct LiftOptions {
  int initial_steps = 128;
  double ambiguity = 0.25;  // nearest root must be closer than this × second nearest
  double min_step = 1e-10;
  double proximity = 1e-9;
};

/// Continues z₃ along the path from `seed_z3` by nearest-root selection
/// among the m+1 roots of z₁² + z₂² − ½, halving the step when the choice is
/// ambiguous. Returns the lifted samples in order.
std::vector<C3> lift_path(const BranchedCover& cover, const Path2& path, cplx seed_z3, const LiftOptions& options = {});

/// Lift f̃ of the figure-eight at t, continued from the north pole
/// (0, 0, 1) where z₃ = 2^{−1/(m+1)} along the great circle to t (any
/// other path gives the same value since S² is simply connected).
C3 lifted_figure_eight(const BranchedCover& cover, const Eigen::Vector3d& t);

struct AmConfiguration {
  int m = 0;
  int samples_per_sphere = 0;
  std::vector<std::vector<C3>> spheres;            // L_k = σ^{k−1}(L₁)
  std::vector<std::vector<int>> counts;            // −1 on the diagonal
  std::vector<std::vector<double>> min_angles;     // transversality margin per pair
  std::vector<std::vector<double>> max_residuals;  // Newton residual per pair
};

/// Builds the lifted spheres and counts pairwise intersections: candidate
/// pairs closer than the local sample spacing are refined by Gauss–Newton on
/// the two sphere parametrizations, refined points within 1e-2 are merged,
/// and a point counts only with residual < 1e-10. Throws CountUncertain when a
/// refinement neither converges nor clearly separates.
AmConfiguration build_am_configuration(int m, int samples_per_sphere = 1500);

/// Rows "sphere,sample,re z1,im z1,re z2,im z2,re z3,im z3" with a header.
void export_clouds_csv(const AmConfiguration& config, std::ostream& out);

/// β = plateau − κ·bump: 0 on [0, ε/2], 1 on [ε, 1/ε], a negative lobe on
/// (1/ε, 2/ε) and 0 beyond; κ makes ∫₀^∞ rβ(r) dr vanish.
class CorrectionProfile {
 public:
  explicit CorrectionProfile(double epsilon = 0.2);

  double operator()(double r) const;
  double epsilon() const { return epsilon_; }
  double kappa() const { return kappa_; }
  /// ∫₀^∞ rβ(r) dr by adaptive quadrature over the pieces.
  double moment() const;

 private:
  double plateau(double r) const;
  double bump(double r) const;

  double epsilon_;
  double kappa_ = 0.0;
};

struct CorrectionDefects {
  double lagrangian_defect = 0.0;  // max |ω′(X, Y)| on configuration spheres
  double min_pfaffian = 0.0;       // min Pf of ω′ on unitary tangent frames of H
  int skipped = 0;
};

/// ω′ = ω − β(|z₃|)·(i/2) dz₃∧dz̄₃. The Lagrangian defect uses the lifted
/// figure-eight (at `sphere_points`); the Pfaffian uses `hypersurface_points`.
CorrectionDefects correction_form_defects(const CorrectionProfile& beta, const BranchedCover& cover,
                                          const std::vector<Eigen::Vector3d>& sphere_points,
                                          const std::vector<C3>& hypersurface_points);

/// ω′ on real 6-vectors (Re z₁, Im z₁, Re z₂, Im z₂, Re z₃, Im z₃) at z.
double corrected_omega(const CorrectionProfile& beta, const C3& z, const Eigen::Matrix<double, 6, 1>& a,
                       const Eigen::Matrix<double, 6, 1>& b);

/// Points of H with |z₃| spread over (0, 3/ε): z₃ on a spiral, z₁ on a
/// circle, z₂ solved from the rule.
std::vector<C3> hypersurface_samples(const BranchedCover& cover, double epsilon, int count);

}  // namespace twistkit::surgery
