#include "diracjump/spectral.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <thread>

#include "diracjump/roots.hpp"

namespace diracjump {
namespace {

constexpr cplx I{0.0, 1.0};

void require_equal_velocities(const Junction& j) {
  if (!j.equal_velocities())
    throw Error(ErrorKind::VelocityMismatch, "named spectral equations assume v_l == v_r");
}

void require_in_gap(const Junction& j, double energy) {
  const double w = j.min_gap();
  if (!(std::abs(energy) < w)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy " << energy << " outside the open gap window (" << -w << ", " << w << ")";
    throw Error(ErrorKind::OutsideWindow, msg.str());
  }
}

// sqrt(x) for x >= 0, i sqrt(-x) below.
cplx continued_sqrt(double x) { return x >= 0.0 ? cplx(std::sqrt(x), 0.0) : I * std::sqrt(-x); }

double term_scale(const kernels::GapResidualCoefficients& c, double e) {
  const double ul = std::sqrt(c.left_gap - e), ur = std::sqrt(c.right_gap - e);
  const double wl = std::sqrt(c.left_gap + e), wr = std::sqrt(c.right_gap + e);
  return std::max({std::abs(c.c_uu * ul * ur), std::abs(c.c_ww * wl * wr),
                   std::abs(c.c_uw * ul * wr), std::abs(c.c_wu * wl * ur)});
}

// Open gap window shrunk by 1e-12 of its width on each side; empty when the gap is closed.
std::optional<std::pair<double, double>> gap_grid_span(const Junction& j) {
  const double w = j.min_gap();
  if (!(w > 0.0)) return std::nullopt;
  const double eps = 1e-12 * (2.0 * w);
  return std::pair{-w + eps, w - eps};
}

struct RootScan {
  std::vector<double> energies;
};

// Sign-change bracketing plus the tangent-root fallback on a precomputed grid.
template <class F, class Scale>
std::vector<double> scan_roots(const std::vector<double>& xs, const std::vector<double>& ys, F&& f,
                               Scale&& scale, double width) {
  std::vector<double> found;
  for (std::size_t i : roots::sign_changes(ys)) {
    if (ys[i] == 0.0) {
      found.push_back(xs[i]);
      continue;
    }
    found.push_back(roots::bisect(f, xs[i], xs[i + 1], ys[i]));
  }
  // A pair of roots closer than the grid spacing, or a tangent root, hides behind a local
  // extremum of the signed residual.
  for (std::size_t i : roots::tangent_candidates(ys)) {
    if (std::abs(ys[i]) > 1e-3 * scale(xs[i])) continue;
    const double s = ys[i] < 0.0 ? -1.0 : 1.0;
    const auto [e, value] = roots::golden_min([&](double x) { return s * f(x); }, xs[i - 1], xs[i + 1]);
    if (value < 0.0) {
      found.push_back(roots::bisect(f, xs[i - 1], e, ys[i - 1]));
      found.push_back(roots::bisect(f, e, xs[i + 1], f(e)));
    } else if (value <= 1e-9 * scale(e)) {
      found.push_back(e);
    }
  }
  return roots::dedupe_sorted(std::move(found), 1e-9 * width);
}

}  // namespace

kernels::GapResidualCoefficients spectral_coefficients(const NamedExtension& named,
                                                       const Junction& junction) {
  require_equal_velocities(junction);
  const double v = junction.left.velocity();
  const double sl = junction.left.root(), sr = junction.right.root();
  const double g = named.strength();

  kernels::GapResidualCoefficients c{junction.left.gap(), junction.right.gap(), 0, 0, 0, 0};
  switch (named.family()) {
    case Family::EquallyMixed:
      c.c_ww = g / v;
      c.c_uw = sl;
      c.c_wu = sr;
      break;
    case Family::InvertedMixed:
      c.c_uu = -v * g * sl * sr;
      c.c_uw = sl;
      c.c_wu = sr;
      break;
    case Family::PureScalar: {
      const double sh = std::sinh(g / v), ch = std::cosh(g / v);
      c.c_uu = std::sqrt(sl) * std::sqrt(sr) * sh;
      c.c_ww = c.c_uu;
      c.c_uw = sl * ch;
      c.c_wu = sr * ch;
      break;
    }
    case Family::PureVector: {
      const double ml = junction.left.mass(), mr = junction.right.mass();
      const double cs = std::cos(g / v), sn = std::sin(g / v);
      c.c_uw = ml * ml * cs;
      c.c_wu = mr * mr * cs;
      c.c_ww = mr * ml * sn;
      c.c_uu = -mr * ml * sn;
      break;
    }
  }
  return c;
}

double spectral_residual(const NamedExtension& named, const Junction& junction, double energy) {
  const auto c = spectral_coefficients(named, junction);
  require_in_gap(junction, energy);
  return kernels::gap_residual(c, energy);
}

double spectral_term_scale(const NamedExtension& named, const Junction& junction, double energy) {
  const auto c = spectral_coefficients(named, junction);
  require_in_gap(junction, energy);
  return term_scale(c, energy);
}

std::vector<BoundState> find_bound_states(const NamedExtension& named, const Junction& junction,
                                          std::size_t grid_n, kernels::Backend backend) {
  if (grid_n < 16) throw Error(ErrorKind::InvalidArgument, "bound-state grid needs >= 16 points");
  const auto c = spectral_coefficients(named, junction);
  const auto span = gap_grid_span(junction);
  if (!span) return {};

  const std::vector<double> xs = roots::uniform_grid(span->first, span->second, grid_n);
  std::vector<double> ys(grid_n);
  kernels::gap_residual_batch(c, xs, ys, backend);

  auto f = [&](double e) { return kernels::gap_residual(c, e); };
  auto scale = [&](double e) { return term_scale(c, e); };
  std::vector<BoundState> out;
  for (double e : scan_roots(xs, ys, f, scale, span->second - span->first))
    out.push_back({e, named, std::abs(f(e)), scale(e)});
  return out;
}

std::vector<double> equal_mass_energy(const NamedExtension& named, double m, double v) {
  if (!(m > 0.0) || !(v > 0.0) || !std::isfinite(m) || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, "equal-mass closed forms need m > 0 and v > 0");
  const double g = named.strength();
  const double gap = m * v * v;
  const double root = std::sqrt(1.0 + gap * gap);
  switch (named.family()) {
    case Family::EquallyMixed: {
      const double d = g / (v * root);
      return {gap * (4.0 - d * d) / (4.0 + d * d)};
    }
    case Family::InvertedMixed: {
      const double l = v * root * g;
      return {-gap * (4.0 - l * l) / (4.0 + l * l)};
    }
    case Family::PureScalar: {
      const double e = gap / std::cosh(g / v);
      return {-e, e};
    }
    case Family::PureVector: {
      // Only the branch solving sqrt(m^2 v^4 - E^2) cos + E sin = 0 before squaring.
      const double sn = std::sin(g / v);
      if (std::abs(sn) <= 1e-15) return {};
      return {-(sn > 0.0 ? 1.0 : -1.0) * gap * std::cos(g / v)};
    }
  }
  return {};
}

cplx general_bound_residual(const ExtensionParams& ext, const Junction& junction, double energy) {
  require_in_gap(junction, energy);
  const double ml = junction.left.gap(), mr = junction.right.gap();
  const double sl = junction.left.root(), sr = junction.right.root();
  const double a0 = ext.a0(), a3 = ext.a3();
  const double s = std::sin(ext.alpha()), c = std::cos(ext.alpha());
  const double e = energy;

  const cplx lm = continued_sqrt(e - ml), rm = continued_sqrt(e - mr);
  const double lp = std::sqrt(e + ml), rp = std::sqrt(e + mr);
  const double x = a3 + s - ml * (a0 + c);
  const double z = a3 - s + mr * (a0 + c);
  const double y = ml * mr * (a0 + c) + a0 - c + (ml * (a3 - s) - mr * (a3 + s));

  return sr * rm * (lp * x - I * (a0 + c) * sl * lm) - sl * lm * rp * z + I * lp * rp * y;
}

std::vector<BoundState> find_bound_states(const ExtensionParams& ext, const Junction& junction,
                                          std::size_t grid_n) {
  if (grid_n < 16) throw Error(ErrorKind::InvalidArgument, "bound-state grid needs >= 16 points");
  const auto span = gap_grid_span(junction);
  if (!span) return {};

  const std::vector<double> xs = roots::uniform_grid(span->first, span->second, grid_n);
  std::vector<cplx> ds(grid_n);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < grid_n; ++i) {
    ds[i] = general_bound_residual(ext, junction, xs[i]);
    max_re = std::max(max_re, std::abs(ds[i].real()));
    max_im = std::max(max_im, std::abs(ds[i].imag()));
  }
  const bool use_imag = max_im >= max_re;
  std::vector<double> ys(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) ys[i] = use_imag ? ds[i].imag() : ds[i].real();

  auto f = [&](double e) {
    const cplx d = general_bound_residual(ext, junction, e);
    return use_imag ? d.imag() : d.real();
  };
  auto scale = [&](double e) {
    // Largest of the three additive groups of D.
    const double ml = junction.left.gap(), mr = junction.right.gap();
    const double b = std::sqrt(e + ml) * std::sqrt(e + mr);
    return std::max({std::abs(general_bound_residual(ext, junction, e)), b,
                     std::sqrt(std::abs(e - ml)) * std::sqrt(e + mr)});
  };
  std::vector<BoundState> out;
  for (double e : scan_roots(xs, ys, f, scale, span->second - span->first))
    out.push_back({e, ext, std::abs(general_bound_residual(ext, junction, e)), scale(e)});
  return out;
}

SweepTable sweep_strength(Family family, const Junction& junction, StrengthRange range,
                          std::size_t n, std::optional<double> comparison_mass,
                          std::size_t grid_n, unsigned threads) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "strength sweep needs n >= 2");
  if (!(range.lo < range.hi))
    throw Error(ErrorKind::InvalidArgument, "strength range needs lo < hi");
  // Both ends must obey the family's sign; the grid in between then does too.
  NamedExtension(family, range.lo);
  NamedExtension(family, range.hi);
  require_equal_velocities(junction);

  SweepTable table;
  table.family = family;
  table.comparison_mass = comparison_mass.value_or(junction.left.mass());
  if (!(table.comparison_mass >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "comparison mass must be non-negative");
  table.strengths = roots::uniform_grid(range.lo, range.hi, n);
  table.roots.assign(n, {});
  table.equal_mass.assign(n, {});

  const double v = junction.left.velocity();
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const NamedExtension named(family, table.strengths[i]);
      for (const BoundState& b : find_bound_states(named, junction, grid_n))
        table.roots[i].push_back(b.energy);
      if (table.comparison_mass > 0.0)
        table.equal_mass[i] = equal_mass_energy(named, table.comparison_mass, v);
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t step = (n + threads - 1) / threads;
    for (std::size_t lo = 0; lo < n; lo += step) pool.emplace_back(work, lo, std::min(n, lo + step));
  }
  return table;
}

std::vector<CurveCrossing> locate_crossings(const SweepTable& table, const Junction& junction,
                                            std::size_t grid_n) {
  const double v = junction.left.velocity();
  const double tiny = 1e-9 * std::max(junction.max_gap(), 1e-300);

  // Difference of the j-th curves at strength s, if both have the expected number of roots.
  auto difference = [&](double s, std::size_t j, std::size_t count) -> std::optional<double> {
    const NamedExtension named(table.family, s);
    const auto states = find_bound_states(named, junction, grid_n);
    const auto eq = equal_mass_energy(named, table.comparison_mass, v);
    if (states.size() != count || eq.size() != count) return std::nullopt;
    return states[j].energy - eq[j];
  };

  std::vector<CurveCrossing> out;
  for (std::size_t i = 0; i + 1 < table.strengths.size(); ++i) {
    const auto& r0 = table.roots[i];
    const auto& r1 = table.roots[i + 1];
    const auto& e0 = table.equal_mass[i];
    const auto& e1 = table.equal_mass[i + 1];
    const std::size_t k = r0.size();
    if (k == 0 || r1.size() != k || e0.size() != k || e1.size() != k) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const double d0 = r0[j] - e0[j], d1 = r1[j] - e1[j];
      if (std::abs(d0) <= tiny && std::abs(d1) <= tiny) continue;
      if (d0 != 0.0 && (d0 < 0.0) == (d1 < 0.0)) continue;

      double lo = table.strengths[i], hi = table.strengths[i + 1], dlo = d0;
      for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto dm = difference(mid, j, k);
        if (!dm) break;
        if (*dm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((*dm < 0.0) == (dlo < 0.0)) {
          lo = mid;
          dlo = *dm;
        } else {
          hi = mid;
        }
      }
      const double s = 0.5 * (lo + hi);
      const auto eq = equal_mass_energy(NamedExtension(table.family, s), table.comparison_mass, v);
      out.push_back({s, eq.size() == k ? eq[j] : std::numeric_limits<double>::quiet_NaN()});
    }
  }
  return out;
}

}  // namespace diracjump
