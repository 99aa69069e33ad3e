#pragma once

// Internal helpers: one-dimensional maximisation by sampling plus golden-section polish.

#include <algorithm>
#include <cmath>
#include <vector>

namespace rittlab::detail {

template <class F>
double golden_max(F f, double a, double b, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max({f(a), f(b), f1, f2});
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

// Max of f over the sampled parameters, then golden-section refinement around
// the `refine` largest local maxima.
template <class F>
double sampled_max(F f, const std::vector<double>& ts, int refine = 16) {
  std::vector<double> v(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) v[i] = f(ts[i]);
  double best = *std::max_element(v.begin(), v.end());
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool left = i == 0 || v[i] >= v[i - 1];
    const bool right = i + 1 == v.size() || v[i] >= v[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (peaks.size() > static_cast<std::size_t>(refine)) peaks.resize(refine);
  for (auto i : peaks) {
    const double a = ts[i == 0 ? 0 : i - 1], b = ts[i + 1 == ts.size() ? i : i + 1];
    if (b > a) best = std::max(best, golden_max(f, a, b));
  }
  return best;
}

}  // namespace rittlab::detail
