#include "diracjump/scattering.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "diracjump/matching.hpp"
#include "diracjump/roots.hpp"

namespace diracjump {
namespace {

constexpr cplx I{0.0, 1.0};

// sqrt((E - gap) / (E + gap)), continued to +i sqrt((gap - E) / (E + gap)) below the gap.
cplx spinor_ratio(double energy, double gap) {
  return std::sqrt(cplx((energy - gap) / (energy + gap), 0.0));
}

struct SystemParts {
  Eigen::Matrix2cd m;
  Eigen::Vector2cd b;
};

SystemParts build_system(const MatchingMatrix& t, double energy, Direction direction) {
  const cplx sl = spinor_ratio(energy, t.junction.left.gap());
  const cplx sr = spinor_ratio(energy, t.junction.right.gap());
  const Eigen::Vector2cd transmitted_left = t.entries * Eigen::Vector2cd(1.0, -sl);
  SystemParts s;
  if (direction == Direction::FromLeft) {
    // T (1, sl) + r T (1, -sl) = t (1, sr)
    s.m.col(0) = transmitted_left;
    s.m.col(1) = -Eigen::Vector2cd(1.0, sr);
    s.b = -(t.entries * Eigen::Vector2cd(1.0, sl));
  } else {
    // (1, -sr) + r (1, sr) = t T (1, -sl)
    s.m.col(0) = Eigen::Vector2cd(1.0, sr);
    s.m.col(1) = -transmitted_left;
    s.b = -Eigen::Vector2cd(1.0, -sr);
  }
  return s;
}

// r = numerator / denominator as a function of energy; used by the zero finder.
struct ReflectionTerms {
  cplx numerator;
  cplx denominator;
};

template <class TermsFn>
ReflectionZeros find_zeros_impl(TermsFn&& terms, const EnergyWindow& window, std::size_t grid_n) {
  if (grid_n < 2) throw Error(ErrorKind::InvalidArgument, "grid_n must be at least 2");
  const std::vector<double> xs = roots::uniform_grid(window.emin, window.emax, grid_n);

  std::vector<double> re(grid_n), im(grid_n), mod_r(grid_n);
  double num_scale = 0.0, den_scale = 0.0;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const ReflectionTerms rt = terms(xs[i]);
    re[i] = rt.numerator.real();
    im[i] = rt.numerator.imag();
    mod_r[i] = std::abs(rt.numerator) / std::abs(rt.denominator);
    num_scale = std::max(num_scale, std::abs(rt.numerator));
    den_scale = std::max(den_scale, std::abs(rt.denominator));
  }

  ReflectionZeros result;
  if (num_scale <= 1e-12 * den_scale) {
    result.identically_transparent = true;
    return result;
  }

  constexpr double kAcceptR = 1e-8;
  auto abs_r = [&](double e) {
    const ReflectionTerms rt = terms(e);
    return std::abs(rt.numerator) / std::abs(rt.denominator);
  };

  std::vector<double> found;
  auto scan_component = [&](const std::vector<double>& ys, auto part) {
    double scale = 0.0;
    for (double y : ys) scale = std::max(scale, std::abs(y));
    if (scale <= 1e-12 * den_scale) return;  // component vanishes identically
    for (std::size_t i : roots::sign_changes(ys)) {
      double e = xs[i];
      if (ys[i] != 0.0) {
        e = roots::bisect([&](double x) { return part(terms(x).numerator); }, xs[i], xs[i + 1],
                          ys[i]);
      }
      if (abs_r(e) <= kAcceptR) found.push_back(e);
    }
  };
  scan_component(re, [](cplx z) { return z.real(); });
  scan_component(im, [](cplx z) { return z.imag(); });

  // Touching zeros of |r| that neither component brackets.
  for (std::size_t i : roots::tangent_candidates(mod_r)) {
    if (mod_r[i] > 1e-2) continue;
    const auto [e, value] = roots::golden_min(abs_r, xs[i - 1], xs[i + 1]);
    if (value <= kAcceptR) found.push_back(e);
  }

  result.energies = roots::dedupe_sorted(std::move(found), 1e-8 * (window.emax - window.emin));
  return result;
}

}  // namespace

void require_scattering_energy(const Junction& junction, double energy, double edge_margin) {
  const double edge = junction.max_gap();
  if (!(energy > edge * (1.0 + edge_margin)) || !(energy > 0.0) || !std::isfinite(energy)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy " << energy << " is not above max(m_l v_l^2, m_r v_r^2) = " << edge;
    throw Error(ErrorKind::BelowThreshold, msg.str());
  }
}

void validate_window(const EnergyWindow& window, const Junction& junction) {
  if (!std::isfinite(window.emin) || !std::isfinite(window.emax) || !(window.emin < window.emax))
    throw Error(ErrorKind::InvalidArgument, "energy window needs finite emin < emax");
  if (window.kind == EnergyWindow::Kind::Scattering) {
    require_scattering_energy(junction, window.emin);
  } else {
    const double w = junction.min_gap();
    if (!(window.emin >= -w && window.emax <= w))
      throw Error(ErrorKind::OutsideWindow, "bound window must lie inside (-min gap, +min gap)");
  }
}

ClosedFormTerms closed_form_terms(const ExtensionParams& ext, const Junction& junction, double energy) {
  require_scattering_energy(junction, energy);
  const double ml = junction.left.gap(), mr = junction.right.gap();
  const double sl = junction.left.root(), sr = junction.right.root();
  const double a0 = ext.a0(), a3 = ext.a3();
  const double s = std::sin(ext.alpha()), c = std::cos(ext.alpha());
  const double e = energy;

  const double lm = std::sqrt(e - ml), lp = std::sqrt(e + ml);
  const double rm = std::sqrt(e - mr), rp = std::sqrt(e + mr);

  const double x = a3 + s - ml * (a0 + c);
  const double z = a3 - s + mr * (a0 + c);
  const double y = ml * mr * (a0 + c) + a0 - c + (ml * (a3 - s) - mr * (a3 + s));

  ClosedFormTerms out;
  out.numerator = -sr * rm * (lp * x + I * (a0 + c) * std::sqrt(sl * sl * (e - ml))) -
                  sl * lm * rp * z - I * lp * rp * y;
  out.denominator = sr * rm * (lp * x - I * (a0 + c) * std::sqrt(sl * sl * (e - ml))) -
                    sl * lm * rp * z + I * lp * rp * y;
  out.transmission_factor = std::sqrt(sl * sr) * std::sqrt((e - ml) * (e + mr));
  return out;
}

ScatteringAmplitudes amplitudes_closed(const ExtensionParams& ext, const Junction& junction,
                                       double energy) {
  const ClosedFormTerms k = closed_form_terms(ext, junction, energy);
  const double vfac = 2.0 * std::sqrt(junction.left.velocity() / junction.right.velocity());
  // a2 = 0: sqrt(a1^2 + a2^2) e^{-i atan(a2 / a1)} reduces to a1.
  return {k.numerator / k.denominator, vfac * ext.a1() * k.transmission_factor / k.denominator,
          Direction::FromLeft, energy};
}

cplx system_determinant(const MatchingMatrix& t, double energy, Direction direction) {
  return build_system(t, energy, direction).m.determinant();
}

ScatteringAmplitudes amplitudes_solve(const MatchingMatrix& t, double energy, Direction direction) {
  require_scattering_energy(t.junction, energy);
  const SystemParts s = build_system(t, energy, direction);
  const double norm = s.m.cwiseAbs().maxCoeff();
  const cplx det = s.m.determinant();
  if (!(std::abs(det) > 1e-12 * norm * norm)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "matching system is singular at E = " << energy;
    throw Error(ErrorKind::SingularSystem, msg.str());
  }
  const Eigen::Vector2cd sol = s.m.partialPivLu().solve(s.b);
  return {sol(0), sol(1), direction, energy};
}

double flux_transmission(const Junction& junction, double energy, const ScatteringAmplitudes& amps) {
  require_scattering_energy(junction, energy);
  const double ml = junction.left.gap(), mr = junction.right.gap();
  const double vl = junction.left.velocity(), vr = junction.right.velocity();
  const double t2 = std::norm(amps.t);
  const double ratio = std::sqrt((energy + ml) * (energy - mr)) / std::sqrt((energy - ml) * (energy + mr));
  if (amps.direction == Direction::FromLeft) return t2 * ratio * (vr / vl);
  return t2 / ratio * (vl / vr);
}

ReflectionZeros find_reflection_zeros(const MatchingMatrix& t, const EnergyWindow& window,
                                      std::size_t grid_n) {
  validate_window(window, t.junction);
  if (window.kind != EnergyWindow::Kind::Scattering)
    throw Error(ErrorKind::InvalidArgument, "reflection zeros need a scattering window");
  const double gl = t.junction.left.gap(), gr = t.junction.right.gap();
  auto terms = [&](double e) {
    const double sl = std::sqrt((e - gl) / (e + gl));
    const double sr = std::sqrt((e - gr) / (e + gr));
    const cplx alpha = t(0, 0) - sl * t(0, 1), beta = t(1, 0) - sl * t(1, 1);
    const cplx gamma = t(0, 0) + sl * t(0, 1), delta = t(1, 0) + sl * t(1, 1);
    return ReflectionTerms{delta - sr * gamma, sr * alpha - beta};
  };
  return find_zeros_impl(terms, window, grid_n);
}

ReflectionZeros find_reflection_zeros(const ExtensionParams& ext, const Junction& junction,
                                      const EnergyWindow& window, std::size_t grid_n) {
  validate_window(window, junction);
  if (window.kind != EnergyWindow::Kind::Scattering)
    throw Error(ErrorKind::InvalidArgument, "reflection zeros need a scattering window");
  auto terms = [&](double e) {
    const ClosedFormTerms k = closed_form_terms(ext, junction, e);
    return ReflectionTerms{k.numerator, k.denominator};
  };
  return find_zeros_impl(terms, window, grid_n);
}

ReflectionZeros find_reflection_zeros(const NamedExtension& named, const Junction& junction,
                                      const EnergyWindow& window, std::size_t grid_n) {
  return find_reflection_zeros(named_matrix(named, junction), window, grid_n);
}

std::vector<double> zero_momentum_resonances(const Junction& junction) {
  const double l = junction.left.gap(), r = junction.right.gap();
  return roots::dedupe_sorted({-l + 0.0, l, -r + 0.0, r}, 0.0);
}

double TransmissionLowerBound::operator()(double e) const {
  const double v2 = v * v;
  const double q = std::sqrt(e - v2 * ml) * std::sqrt(e + v2 * ml) * std::sqrt(e - v2 * mr) *
                   std::sqrt(e + v2 * mr);
  const double mm = ml * ml * mr * mr;
  const double msum = ml * ml + mr * mr;
  return 8.0 * mm * q / (4.0 * mm * q + e * e * msum * msum);
}

HighEnergyTransmission high_energy_transmission(const NamedExtension& named, const Junction& junction) {
  if (!junction.equal_velocities())
    throw Error(ErrorKind::VelocityMismatch, "high-energy limits assume v_l == v_r");
  const double v = junction.left.velocity();
  const double sl = junction.left.root(), sr = junction.right.root();
  const double g = named.strength();
  HighEnergyTransmission out;
  switch (named.family()) {
    case Family::EquallyMixed:
      out.asymptote = 4.0 * v * v * sl * sr / (v * v * (sl + sr) * (sl + sr) + g * g);
      break;
    case Family::InvertedMixed:
      out.asymptote = 4.0 * sl * sr / ((sl + sr) * (sl + sr) + v * v * sl * sl * sr * sr * g * g);
      break;
    case Family::PureScalar: {
      const double sech = 1.0 / std::cosh(g / v);
      out.asymptote = 4.0 * sl * sr / ((sl + sr) * (sl + sr)) * sech * sech;
      break;
    }
    case Family::PureVector:
      out.lower_bound = TransmissionLowerBound{junction.left.mass(), junction.right.mass(), v};
      out.never_vanishes = true;
      break;
  }
  return out;
}

ScatteringSweep scattering_sweep(const MatchingMatrix& t, std::span<const double> energies,
                                 Direction direction, kernels::Backend backend, unsigned threads) {
  for (double e : energies) require_scattering_energy(t.junction, e);

  const std::size_t n = energies.size();
  ScatteringSweep out;
  out.energy.assign(energies.begin(), energies.end());
  for (auto* col : {&out.re_r, &out.im_r, &out.abs_r2, &out.re_t, &out.im_t, &out.t_flux,
                    &out.unitarity_defect})
    col->assign(n, 0.0);
  std::vector<double> abs_den(n);

  kernels::AmplitudeCoefficients coeffs{};
  for (int k = 0; k < 4; ++k) {
    coeffs.t_re[k] = t.entries(k / 2, k % 2).real();
    coeffs.t_im[k] = t.entries(k / 2, k % 2).imag();
  }
  coeffs.left_gap = t.junction.left.gap();
  coeffs.right_gap = t.junction.right.gap();
  coeffs.velocity_ratio = t.junction.right.velocity() / t.junction.left.velocity();
  coeffs.from_right = direction == Direction::FromRight;

  auto run_chunk = [&](std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    kernels::AmplitudeColumns cols{
        {out.re_r.data() + lo, len},  {out.im_r.data() + lo, len},
        {out.abs_r2.data() + lo, len}, {out.re_t.data() + lo, len},
        {out.im_t.data() + lo, len},  {out.t_flux.data() + lo, len},
        {abs_den.data() + lo, len}};
    kernels::amplitude_batch(coeffs, energies.subspan(lo, len), cols, backend);
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    run_chunk(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t step = (n + threads - 1) / threads;
    for (std::size_t lo = 0; lo < n; lo += step) pool.emplace_back(run_chunk, lo, std::min(n, lo + step));
  }

  const double tscale = t.entries.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(abs_den[i] > 1e-12 * tscale) || !std::isfinite(out.abs_r2[i])) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "matching system is singular at E = " << energies[i];
      throw Error(ErrorKind::SingularSystem, msg.str());
    }
    out.unitarity_defect[i] = out.abs_r2[i] + out.t_flux[i] - 1.0;
  }
  return out;
}

}  // namespace diracjump
