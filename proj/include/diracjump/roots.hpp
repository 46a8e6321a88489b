#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace diracjump::roots {

/// n points from lo to hi inclusive, n >= 2.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Bisection on a sign-change bracket, run until the interval cannot shrink further in double
/// precision or `abs_tol` is reached.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double abs_tol = 0.0) {
  if (f_lo == 0.0) return lo;
  const bool neg_lo = f_lo < 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == neg_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Golden-section minimization of f on [lo, hi]; returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iterations = 200) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iterations && hi - lo > 0.0; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
    if (!(x1 > lo && x2 < hi && x1 < x2)) break;
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Indices i such that ys[i] and ys[i+1] bracket a root (strict sign change, or ys[i] == 0).
std::vector<std::size_t> sign_changes(std::span<const double> ys);

/// Indices of interior grid points where |ys| has a local minimum without a sign change in the
/// neighbouring intervals; candidates for tangent roots.
std::vector<std::size_t> tangent_candidates(std::span<const double> ys);

/// Sorts and merges values closer than `tol`.
std::vector<double> dedupe_sorted(std::vector<double> values, double tol);

}  // namespace diracjump::roots
