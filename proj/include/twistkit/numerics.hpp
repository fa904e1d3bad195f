#pragma once

#include <functional>
#include <vector>

namespace twistkit::numerics {

/// C^∞ transition: 0 for x ≤ 0, 1 for x ≥ 1, built from exp(−1/x).
/// Satisfies smooth_transition(x) + smooth_transition(1 − x) = 1.
double smooth_transition(double x);

/// Derivative of smooth_transition.
double smooth_transition_derivative(double x);

/// Minimizes a unimodal (or V-shaped) function on [lo, hi] by golden-section
/// search until the bracket is narrower than `width`. Returns the argmin.
double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double width);

/// Options for locating the isolated zeros of a nonnegative function.
struct DipScanOptions {
  int samples = 4000;            // uniform grid points over [a, b]
  double threshold = 1e-8;       // value below which a refined minimum is a zero
  double refine_width = 1e-10;   // golden-section bracket width
  double endpoint_snap = 1e-7;   // zeros closer than this to a or b are endpoint zeros
  double gray_factor = 100.0;    // minima in [threshold, gray_factor*threshold) are unresolved
};

struct Dip {
  double time = 0.0;       // refined location (snapped to a or b for endpoint zeros)
  double raw_time = 0.0;   // refined location before snapping
  double value = 0.0;      // f(raw_time)
  bool at_start = false;
  bool at_end = false;
};

/// Finds the zeros of a nonnegative function such as the smallest singular
/// value of a matrix path. Every grid-local minimum is refined; refined minima
/// below `threshold` are reported. Throws ResolutionError for minima that land
/// in the gray zone above the threshold.
std::vector<Dip> find_dips(const std::function<double(double)>& f, double a, double b,
                           const DipScanOptions& options = {});

}  // namespace twistkit::numerics
