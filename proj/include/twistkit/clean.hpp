#pragma once

// Intersection of the twisted fibre τ^{2r}(T*_x S²) with the antipodal fibre
// T*_{A(x)} S²: r circles of radii (2j−1)π, their actions and indices.

#include <utility>
#include <vector>

#include "twistkit/half_integer.hpp"
#include "twistkit/sphere.hpp"

namespace twistkit::clean {

struct CleanCircle {
  int j = 0;              // position in the action ordering
  int level = 0;          // k = r − j + 1, so that ψ(radius) = (2k−1)π/2r
  double radius = 0.0;    // (2j−1)π
  double action = 0.0;    // ½·radius²
  int index_prime = 0;    // i′(C_j) after the global shift, i.e. 2j
  HalfInteger winding;    // j − ½
};

struct IntersectionTable {
  int r = 0;
  std::vector<CleanCircle> circles;
};

/// Solves ψ(t) = (2k−1)π/2r on the linear piece of the profile for r twists.
/// r = 0 is the untwisted pair of disjoint fibres and gives an empty table.
/// Throws ProfileConsistencyError if a root leaves [0, δ].
IntersectionTable compute_circles(int r);

struct CircleVerdict {
  int j = 0;
  double radius = 0.0;
  int samples = 0;
  bool pass = false;
  /// max over samples of |base(φ₁ξ) − x| and of the distance of 2rψ(|ξ|) + π to 2πℤ.
  double membership_defect = 0.0;
  int min_multiplicity = 0;
  int max_multiplicity = 0;
  /// max |variation field − Jacobi solution| over samples and r ∈ [0, 1].
  double jacobi_defect = 0.0;
};

struct CleanReport {
  bool pass = false;
  std::vector<CircleVerdict> circles;
};

/// Checks, at `samples_per_circle` points ξ on each circle (covectors at A(x)
/// with |ξ| = radius): ξ lies on both Lagrangians, m(c_ξ, 1) = 1, and the
/// rotation of ξ about the x-axis realizes the Jacobi field vanishing at both
/// ends, to `jacobi_tolerance`. x is the north pole.
CleanReport verify_clean(const IntersectionTable& table, int samples_per_circle, double jacobi_tolerance = 1e-4);

/// Geodesic from A(x) to x winding j − ½ times, in direction θ.
sphere::Geodesic circle_geodesic(const CleanCircle& circle, double theta);

struct IndexRow {
  int j = 0;
  HalfInteger morse_index;  // i(C_j) = m(c_ξ)
  int index_prime = 0;      // i(C_j) − ½ dim C_j + 2
};

/// i(C_j) from conjugate points along a sample geodesic, i′ = i − ½, then the
/// global shift by +2 so that i′(C_1) = 2.
std::vector<IndexRow> index_table(const IntersectionTable& table);

}  // namespace twistkit::clean
