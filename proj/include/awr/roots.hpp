#pragma once

#include <cmath>
#include <cstddef>

namespace awr {

inline constexpr std::size_t kMaxBisectionIterations = 200;
inline constexpr double kResidualTolerance = 1e-12;

/// Bracketed bisection. `f(lo)` and `f(hi)` must not share a strict sign.
/// Iterates until the bracket collapses to adjacent doubles, an exact zero is
/// hit, or the iteration cap is reached; returns whichever end of the final
/// bracket has the smaller residual.
template <class F>
double bisect(const F& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  // Round-off can push both ends to the same side of a root sitting on an endpoint.
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  const bool lo_negative = f_lo < 0.0;
  for (std::size_t it = 0; it < kMaxBisectionIterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == lo_negative) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

/// Doubles `start` until `f(x) >= 0`. `f` must be increasing and eventually
/// nonnegative; used to open brackets on half-lines.
template <class F>
double grow_until_nonnegative(const F& f, double start) {
  double x = start;
  for (std::size_t it = 0; it < 2048 && f(x) < 0.0; ++it) x *= 2.0;
  return x;
}

}  // namespace awr
