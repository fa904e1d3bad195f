#include "twistkit/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "twistkit/errors.hpp"

namespace twistkit::numerics {

namespace {

double flat_exp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double flat_exp_derivative(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

}  // namespace

double smooth_transition(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = flat_exp(x);
  const double b = flat_exp(1.0 - x);
  return a / (a + b);
}

double smooth_transition_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = flat_exp(x);
  const double b = flat_exp(1.0 - x);
  const double da = flat_exp_derivative(x);
  const double db = -flat_exp_derivative(1.0 - x);
  const double s = a + b;
  return (da * s - a * (da + db)) / (s * s);
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double width) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  // The endpoints of the final bracket may beat its interior on V-shaped minima.
  const double mid = 0.5 * (lo + hi);
  double best = mid;
  double fbest = f(mid);
  for (double t : {lo, hi, c, d}) {
    const double ft = f(t);
    if (ft < fbest) {
      fbest = ft;
      best = t;
    }
  }
  return best;
}

std::vector<Dip> find_dips(const std::function<double(double)>& f, double a, double b,
                           const DipScanOptions& options) {
  const int n = std::max(options.samples, 3);
  std::vector<double> ts(n + 1);
  std::vector<double> fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    ts[i] = (i == n) ? b : a + (b - a) * static_cast<double>(i) / n;
    fs[i] = f(ts[i]);
  }

  std::vector<Dip> dips;
  for (int i = 0; i <= n; ++i) {
    const bool left_ok = (i == 0) || fs[i] <= fs[i - 1];
    const bool right_ok = (i == n) || fs[i] <= fs[i + 1];
    if (!left_ok || !right_ok) continue;
    // A plateau of equal values would otherwise produce repeated candidates.
    if (i > 0 && fs[i] == fs[i - 1] && fs[i] >= options.threshold) continue;

    const double lo = ts[std::max(i - 1, 0)];
    const double hi = ts[std::min(i + 1, n)];
    double t = golden_minimize(f, lo, hi, options.refine_width);
    double ft = f(t);
    if (fs[i] < ft) {
      t = ts[i];
      ft = fs[i];
    }
    if (ft >= options.threshold) {
      if (ft < options.gray_factor * options.threshold) {
        throw ResolutionError(fmt::format(
            "dimension jump near t={:.12g} unresolved: refined minimum {:.3e} lies between "
            "the rank threshold {:.1e} and {:.1e}",
            t, ft, options.threshold, options.gray_factor * options.threshold));
      }
      continue;
    }
    Dip dip;
    dip.raw_time = t;
    dip.value = ft;
    dip.time = t;
    if (t - a < options.endpoint_snap) {
      dip.time = a;
      dip.at_start = true;
    } else if (b - t < options.endpoint_snap) {
      dip.time = b;
      dip.at_end = true;
    }
    dips.push_back(dip);
  }

  std::sort(dips.begin(), dips.end(), [](const Dip& x, const Dip& y) { return x.time < y.time; });
  std::vector<Dip> merged;
  for (const Dip& d : dips) {
    if (!merged.empty() && d.time - merged.back().time < options.endpoint_snap) {
      Dip& last = merged.back();
      const bool start = last.at_start || d.at_start;
      const bool end = last.at_end || d.at_end;
      if (d.value < last.value) last = d;
      last.at_start = start;
      last.at_end = end;
      if (start) last.time = a;
      if (end) last.time = b;
      continue;
    }
    merged.push_back(d);
  }
  return merged;
}

}  // namespace twistkit::numerics
