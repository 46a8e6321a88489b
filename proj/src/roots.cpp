#include "diracjump/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace diracjump::roots {

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("uniform_grid needs at least two points");
  std::vector<double> xs(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

std::vector<std::size_t> sign_changes(std::span<const double> ys) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const double a = ys[i], b = ys[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0 || (a < 0.0) != (b < 0.0)) {
      if (b == 0.0 && a != 0.0) continue;  // picked up at i+1
      out.push_back(i);
    }
  }
  if (!ys.empty() && ys.back() == 0.0) out.push_back(ys.size() - 1);
  return out;
}

std::vector<std::size_t> tangent_candidates(std::span<const double> ys) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    const double a = ys[i - 1], b = ys[i], c = ys[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    const bool same_sign = (a < 0.0) == (b < 0.0) && (b < 0.0) == (c < 0.0) && b != 0.0;
    if (same_sign && std::abs(b) <= std::abs(a) && std::abs(b) <= std::abs(c)) out.push_back(i);
  }
  return out;
}

std::vector<double> dedupe_sorted(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  }
  return out;
}

}  // namespace diracjump::roots
