#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace kent::detail {

/// Bisection for g(x) = target on [lo, hi] where g is monotone (either
/// direction). Runs until the bracket stops shrinking in floating point.
template <class G>
double bisect_monotone(G&& g, double lo, double hi, double target) {
  double glo = g(lo) - target;
  double ghi = g(hi) - target;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  const bool increasing = glo < ghi;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid) - target;
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == increasing) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return std::abs(glo) <= std::abs(ghi) ? lo : hi;
}

/// Golden-section minimisation of a unimodal function on [a, b].
template <class G>
std::pair<double, double> golden_min(G&& g, double a, double b, int iterations = 80) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < iterations && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  return gc < gd ? std::pair{c, gc} : std::pair{d, gd};
}

inline int sign_of(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace kent::detail
