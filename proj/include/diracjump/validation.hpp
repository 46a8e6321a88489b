#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diracjump/types.hpp"

namespace diracjump {

struct GridSpec {
  double x_min;
  double x_max;
  std::size_t n;  // intervals
};

struct ResidualReport {
  double max_pointwise_residual;
  GridSpec grid;
  double norm_error;
};

/// Applies H^dagger = -i v sigma_x d/dx + m v^2 sigma_z to a deficiency spinor with central
/// differences on [0, 8 v / sqrt(1 + m^2 v^4)] (mirrored for the left side) and reports
/// max |H^dagger psi -+ i psi| over interior points, plus |int |psi|^2 - 1| by Simpson's rule.
ResidualReport eigen_residual(Side side, EigSign sign, const Medium& medium, std::size_t grid_n);

/// Residual ratios r(n) / r(2n) over `doublings` successive doublings starting at n0.
std::vector<double> residual_ratios(Side side, EigSign sign, const Medium& medium, std::size_t n0,
                                    int doublings);

/// Number of square-integrable deficiency solutions for +i and for -i.
std::pair<int, int> deficiency_indices(const Junction& junction);

/// Determinant identities for one (U, junction) draw.
struct DeterminantCheck {
  bool degenerate = false;        // U12 = 0 or U21 = 0: decoupled, no T and no identities to check
  double modulus_error = 0.0;     // | |det T| v_r / v_l - 1 |
  double ratio_error = 0.0;       // |det T - (v_l/v_r) conj(U21)/conj(U12)| v_r / v_l
  double offdiag_gap = 0.0;       // | |U12| - |U21| |
};

/// Throws SingularBoundaryMatrix when the boundary matrix at 0+ is numerically singular.
DeterminantCheck check_determinant(const UnitaryMatrix& u, const Junction& junction);

inline constexpr double kClosedFormMinA1 = 0.05;

struct DeterminantAudit {
  std::size_t samples = 0;
  std::size_t degenerate = 0;
  std::size_t singular = 0;  // draws rejected with SingularBoundaryMatrix
  double max_modulus_error = 0.0;
  double max_ratio_error = 0.0;
  double max_offdiag_gap = 0.0;
  // a2 = 0 closed form with |a1| >= kClosedFormMinA1: |det T - v_l/v_r| v_r / v_l and |Im det T|
  double max_closed_form_det_error = 0.0;
  double max_closed_form_imag = 0.0;
  // Whole slice: |det T - v_l/v_r| / (|T11 T22| + |T12 T21|), the cancellation-free defect
  double max_closed_form_rounding = 0.0;
};

/// Random unitaries (uniform alpha, a uniform on the 3-sphere) on random junctions, plus the
/// a2 = 0 closed form.  Masses uniform in [0, 3], velocities log-uniform in [0.3, 3].
/// Each sample has its own generator seeded from (seed, index).
DeterminantAudit determinant_audit(std::size_t samples, std::uint64_t seed);

struct ValidationTolerances {
  double residual = 1e-4;       // max eigen residual at n = 1024
  double ratio_lo = 3.5;        // residual ratio per doubling
  double ratio_hi = 4.5;
  double norm = 1e-8;           // at n = 4096
  double determinant = 1e-10;
  double rounding = 1e-11;      // determinant defect relative to its cancellation scale
};

struct ValidationCheck {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
};

/// Eigen residuals of all four deficiency spinors, deficiency indices and the determinant audit.
ValidationReport run_validation_suite(const Junction& junction, std::size_t samples,
                                      std::uint64_t seed, const ValidationTolerances& tol = {});

}  // namespace diracjump
