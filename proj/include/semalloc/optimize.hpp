#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

// Derivative-free 1-D maximization used by the schedulers.
namespace semalloc {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a maximum of fn on [lo, hi]. Stops once the
// bracket is narrower than rel_tol * max(|lo|, |hi|).
template <typename Fn>
Maximum golden_section_maximize(const Fn& fn, double lo, double hi, double rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int iter = 0; iter < 200; ++iter) {
    if (b - a <= rel_tol * std::max(std::abs(a), std::abs(b))) break;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    }
  }
  return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

// Evaluates fn on a uniform grid of `points` values spanning [lo, hi], then
// polishes the best grid point with golden-section search over its two
// neighbouring cells. Never returns worse than the best grid value.
template <typename Fn>
Maximum grid_golden_maximize(const Fn& fn, double lo, double hi, int points, double rel_tol) {
  if (!(hi > lo)) return {hi, fn(hi)};
  points = std::max(points, 3);
  const double step = (hi - lo) / (points - 1);
  Maximum best{lo, fn(lo)};
  int best_i = 0;
  for (int i = 1; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * i;
    const double v = fn(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double a = best_i == 0 ? lo : lo + step * (best_i - 1);
  const double b = best_i + 1 >= points ? hi : lo + step * (best_i + 1);
  const Maximum polished = golden_section_maximize(fn, a, b, rel_tol);
  return polished.value > best.value ? polished : best;
}

}  // namespace semalloc
