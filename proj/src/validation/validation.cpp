#include "diracjump/validation.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "diracjump/matching.hpp"

namespace diracjump {
namespace {

constexpr cplx I{0.0, 1.0};

double signed_x(Side side, double t) { return side == Side::Right ? t : -t; }

double simpson_norm(Side side, EigSign sign, const Medium& medium, std::size_t n) {
  const double length = 20.0 / medium.decay_rate();
  const double h = length / static_cast<double>(n);
  auto density = [&](double t) {
    const SpinorSample s = deficiency_spinor(side, sign, medium, signed_x(side, t));
    return std::norm(s.upper) + std::norm(s.lower);
  };
  double sum = density(0.0) + density(length);
  for (std::size_t i = 1; i < n; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * density(h * static_cast<double>(i));
  return sum * h / 3.0;
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Junction random_junction(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> mass(0.0, 3.0);
  std::uniform_real_distribution<double> log_v(std::log(0.3), std::log(3.0));
  return make_junction(mass(gen), mass(gen), std::exp(log_v(gen)), std::exp(log_v(gen)));
}

}  // namespace

ResidualReport eigen_residual(Side side, EigSign sign, const Medium& medium, std::size_t grid_n) {
  if (grid_n < 64) throw Error(ErrorKind::InvalidArgument, "eigen_residual needs grid_n >= 64");
  const double v = medium.velocity();
  const double gap = medium.gap();
  const double length = 8.0 * v / medium.root();
  const double h = length / static_cast<double>(grid_n);
  const cplx eig = sign == EigSign::Plus ? I : -I;

  auto at = [&](std::size_t i) {
    return deficiency_spinor(side, sign, medium, signed_x(side, h * static_cast<double>(i)));
  };
  // d/dx along the signed coordinate; on the left side grid index grows towards -x.
  const double dx = side == Side::Right ? h : -h;

  double worst = 0.0;
  for (std::size_t i = 1; i < grid_n; ++i) {
    const SpinorSample lo = at(i - 1), mid = at(i), hi = at(i + 1);
    const cplx da = (hi.upper - lo.upper) / (2.0 * dx);
    const cplx db = (hi.lower - lo.lower) / (2.0 * dx);
    const cplx ra = -I * v * db + gap * mid.upper - eig * mid.upper;
    const cplx rb = -I * v * da - gap * mid.lower - eig * mid.lower;
    worst = std::max(worst, std::sqrt(std::norm(ra) + std::norm(rb)));
  }

  const std::size_t norm_n = grid_n % 2 == 0 ? grid_n : grid_n + 1;
  const double norm_error = std::abs(simpson_norm(side, sign, medium, norm_n) - 1.0);
  const GridSpec grid = side == Side::Right ? GridSpec{0.0, length, grid_n}
                                            : GridSpec{-length, 0.0, grid_n};
  return {worst, grid, norm_error};
}

std::vector<double> residual_ratios(Side side, EigSign sign, const Medium& medium, std::size_t n0,
                                    int doublings) {
  std::vector<double> out;
  double prev = eigen_residual(side, sign, medium, n0).max_pointwise_residual;
  std::size_t n = n0;
  for (int k = 0; k < doublings; ++k) {
    n *= 2;
    const double cur = eigen_residual(side, sign, medium, n).max_pointwise_residual;
    out.push_back(prev / cur);
    prev = cur;
  }
  return out;
}

std::pair<int, int> deficiency_indices(const Junction& junction) {
  // One solution per side and sign, each decaying at rate sqrt(1 + m^2 v^4) / v.
  int plus = 0, minus = 0;
  for (const Medium* m : {&junction.left, &junction.right}) {
    if (m->decay_rate() > 0.0) {
      ++plus;
      ++minus;
    }
  }
  return {plus, minus};
}

DeterminantCheck check_determinant(const UnitaryMatrix& u, const Junction& junction) {
  DeterminantCheck out;
  out.offdiag_gap = std::abs(std::abs(u(0, 1)) - std::abs(u(1, 0)));
  out.degenerate = std::abs(u(0, 1)) < 1e-12 || std::abs(u(1, 0)) < 1e-12;
  if (out.degenerate) return out;

  const MatchingMatrix t = matching_from_unitary(u, junction);
  const double vratio = junction.left.velocity() / junction.right.velocity();
  const cplx det = t.det();
  out.modulus_error = std::abs(std::abs(det) / vratio - 1.0);
  const cplx expected = vratio * std::conj(u(1, 0)) / std::conj(u(0, 1));
  out.ratio_error = std::abs(det - expected) / vratio;
  return out;
}

DeterminantAudit determinant_audit(std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "determinant_audit needs samples >= 1");
  DeterminantAudit audit;
  audit.samples = samples;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal;

  for (std::size_t i = 0; i < samples; ++i) {
    auto gen = sample_engine(seed, i);
    const Junction junction = random_junction(gen);
    const double alpha = angle(gen);
    double a[4];
    double r = 0.0;
    for (double& x : a) {
      x = normal(gen);
      r += x * x;
    }
    r = std::sqrt(r);
    for (double& x : a) x /= r;

    try {
      const auto check = check_determinant(UnitaryMatrix::from_chart(alpha, a[0], a[1], a[2], a[3]),
                                           junction);
      audit.degenerate += check.degenerate ? 1 : 0;
      audit.max_modulus_error = std::max(audit.max_modulus_error, check.modulus_error);
      audit.max_ratio_error = std::max(audit.max_ratio_error, check.ratio_error);
      audit.max_offdiag_gap = std::max(audit.max_offdiag_gap, check.offdiag_gap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularBoundaryMatrix) throw;
      ++audit.singular;
    }

    // The same direction on the a2 = 0 slice, with the rounding of the determinant measured
    // against |T11 T22| + |T12 T21|, which grows like 1 / a1^2 near decoupling.
    const double vratio = junction.left.velocity() / junction.right.velocity();
    const double s = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[3] * a[3]);
    if (std::abs(a[1]) / s >= 1e-12) {
      const ExtensionParams ext(alpha, a[0] / s, a[1] / s, a[3] / s);
      const MatchingMatrix t = matching_closed_form(ext, junction);
      const double scale = std::abs(t(0, 0) * t(1, 1)) + std::abs(t(0, 1) * t(1, 0));
      audit.max_closed_form_rounding =
          std::max(audit.max_closed_form_rounding, std::abs(t.det() - vratio) / scale);
    }

    // Absolute identity away from the decoupling limit: a rejection-sampled slice point.
    double b[3];
    do {
      double r3 = 0.0;
      for (double& x : b) {
        x = normal(gen);
        r3 += x * x;
      }
      r3 = std::sqrt(r3);
      for (double& x : b) x /= r3;
    } while (std::abs(b[1]) < kClosedFormMinA1);
    const cplx det = matching_closed_form(ExtensionParams(alpha, b[0], b[1], b[2]), junction).det();
    audit.max_closed_form_det_error =
        std::max(audit.max_closed_form_det_error, std::abs(det - vratio) / vratio);
    audit.max_closed_form_imag = std::max(audit.max_closed_form_imag, std::abs(det.imag()));
  }
  return audit;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

ValidationReport run_validation_suite(const Junction& junction, std::size_t samples,
                                      std::uint64_t seed, const ValidationTolerances& tol) {
  ValidationReport report;
  auto upper = [&](std::string name, double value, double bound) {
    report.checks.push_back({std::move(name), value, bound, std::isfinite(value) && value <= bound});
  };

  struct Spinor {
    const char* name;
    Side side;
    EigSign sign;
    const Medium* medium;
  };
  const Spinor spinors[] = {
      {"left+", Side::Left, EigSign::Plus, &junction.left},
      {"left-", Side::Left, EigSign::Minus, &junction.left},
      {"right+", Side::Right, EigSign::Plus, &junction.right},
      {"right-", Side::Right, EigSign::Minus, &junction.right},
  };
  for (const Spinor& s : spinors) {
    const std::string prefix = std::string("eigen_residual.") + s.name;
    upper(prefix + ".residual_n1024",
          eigen_residual(s.side, s.sign, *s.medium, 1024).max_pointwise_residual, tol.residual);
    upper(prefix + ".norm_error_n4096", eigen_residual(s.side, s.sign, *s.medium, 4096).norm_error,
          tol.norm);
    const auto ratios = residual_ratios(s.side, s.sign, *s.medium, 256, 3);
    for (std::size_t k = 0; k < ratios.size(); ++k) {
      const double q = ratios[k];
      report.checks.push_back({prefix + ".ratio_" + std::to_string(256u << k), q, tol.ratio_lo,
                               q >= tol.ratio_lo && q <= tol.ratio_hi});
    }
  }

  const auto [plus, minus] = deficiency_indices(junction);
  report.checks.push_back({"deficiency_indices", static_cast<double>(10 * plus + minus), 22.0,
                           plus == 2 && minus == 2});

  const DeterminantAudit audit = determinant_audit(samples, seed);
  upper("determinant.modulus", audit.max_modulus_error, tol.determinant);
  upper("determinant.ratio", audit.max_ratio_error, tol.determinant);
  upper("determinant.offdiag_modulus", audit.max_offdiag_gap, tol.determinant);
  upper("determinant.closed_form", audit.max_closed_form_det_error, tol.determinant);
  upper("determinant.closed_form_imag", audit.max_closed_form_imag, tol.determinant);
  upper("determinant.closed_form_rounding", audit.max_closed_form_rounding, tol.rounding);
  return report;
}

}  // namespace diracjump
