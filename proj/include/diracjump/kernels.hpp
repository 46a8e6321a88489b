#pragma once
// Batch kernels for the data-parallel inner loops: gap-residual grid scans and scattering sweeps.
//
// Every kernel has a scalar reference and an AVX2 variant that performs the same IEEE operations
// in the same order (no FMA), so all backends agree bit for bit.

#include <span>
#include <string_view>

namespace diracjump::kernels {

enum class Backend { Auto, Scalar, Avx2 };

bool avx2_available() noexcept;
/// Auto -> the best backend this CPU supports; an unavailable explicit choice falls back to Scalar.
Backend resolve(Backend requested) noexcept;
std::string_view to_string(Backend backend) noexcept;

/// f(E) = c_uu u_l u_r + c_ww w_l w_r + c_uw u_l w_r + c_wu w_l u_r
/// with u_s = sqrt(gap_s - E), w_s = sqrt(gap_s + E).  Every named spectral equation has this form.
struct GapResidualCoefficients {
  double left_gap;
  double right_gap;
  double c_uu;
  double c_ww;
  double c_uw;
  double c_wu;
};

double gap_residual(const GapResidualCoefficients& c, double energy) noexcept;

void gap_residual_batch(const GapResidualCoefficients& c, std::span<const double> energies,
                        std::span<double> out, Backend backend = Backend::Auto);

/// Matching matrix entries plus media data needed to solve the plane-wave matching at energy E.
struct AmplitudeCoefficients {
  double t_re[4];  // row-major T11, T12, T21, T22
  double t_im[4];
  double left_gap;
  double right_gap;
  double velocity_ratio;  // v_r / v_l
  bool from_right;
};

/// Structure-of-arrays output; each span must hold energies.size() values.
struct AmplitudeColumns {
  std::span<double> re_r;
  std::span<double> im_r;
  std::span<double> abs_r2;
  std::span<double> re_t;
  std::span<double> im_t;
  std::span<double> t_flux;
  std::span<double> abs_den;  // |sr (T11 - sl T12) - (T21 - sl T22)|, zero at a pole
};

void amplitude_batch(const AmplitudeCoefficients& c, std::span<const double> energies,
                     const AmplitudeColumns& out, Backend backend = Backend::Auto);

}  // namespace diracjump::kernels
