// Scalar reference kernels.  The operation order here is the contract the SIMD variants follow.

#include <cmath>

#include "kernels_impl.hpp"

namespace diracjump::kernels {

double gap_residual(const GapResidualCoefficients& c, double energy) noexcept {
  const double ul = std::sqrt(c.left_gap - energy);
  const double ur = std::sqrt(c.right_gap - energy);
  const double wl = std::sqrt(c.left_gap + energy);
  const double wr = std::sqrt(c.right_gap + energy);
  double acc = c.c_uu * (ul * ur);
  acc = acc + c.c_ww * (wl * wr);
  acc = acc + c.c_uw * (ul * wr);
  acc = acc + c.c_wu * (wl * ur);
  return acc;
}

namespace detail {

void gap_residual_scalar(const GapResidualCoefficients& c, const double* e, double* out,
                         std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = gap_residual(c, e[i]);
}

void amplitude_scalar(const AmplitudeCoefficients& c, const double* e, const AmplitudeColumns& out,
                      std::size_t offset, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = offset + k;
    const double energy = e[i];
    const double sl = std::sqrt((energy - c.left_gap) / (energy + c.left_gap));
    const double sr = std::sqrt((energy - c.right_gap) / (energy + c.right_gap));

    // alpha = T11 - sl T12, beta = T21 - sl T22, gamma = T11 + sl T12, delta = T21 + sl T22
    const double al_re = c.t_re[0] - sl * c.t_re[1];
    const double al_im = c.t_im[0] - sl * c.t_im[1];
    const double be_re = c.t_re[2] - sl * c.t_re[3];
    const double be_im = c.t_im[2] - sl * c.t_im[3];
    const double ga_re = c.t_re[0] + sl * c.t_re[1];
    const double ga_im = c.t_im[0] + sl * c.t_im[1];
    const double de_re = c.t_re[2] + sl * c.t_re[3];
    const double de_im = c.t_im[2] + sl * c.t_im[3];

    const double den_re = sr * al_re - be_re;
    const double den_im = sr * al_im - be_im;
    const double den2 = den_re * den_re + den_im * den_im;

    double r_re, r_im, t_re, t_im, weight;
    if (!c.from_right) {
      // r = (delta - sr gamma) / den, t = gamma + r alpha
      const double num_re = de_re - sr * ga_re;
      const double num_im = de_im - sr * ga_im;
      r_re = (num_re * den_re + num_im * den_im) / den2;
      r_im = (num_im * den_re - num_re * den_im) / den2;
      t_re = ga_re + (r_re * al_re - r_im * al_im);
      t_im = ga_im + (r_re * al_im + r_im * al_re);
      weight = (c.velocity_ratio * sr) / sl;
    } else {
      // t = 2 sr / den, r = t alpha - 1
      const double two_sr = sr + sr;
      t_re = (two_sr * den_re) / den2;
      t_im = -(two_sr * den_im) / den2;
      r_re = (t_re * al_re - t_im * al_im) - 1.0;
      r_im = t_re * al_im + t_im * al_re;
      weight = sl / (c.velocity_ratio * sr);
    }
    const double r2 = r_re * r_re + r_im * r_im;
    const double t2 = t_re * t_re + t_im * t_im;
    out.re_r[i] = r_re;
    out.im_r[i] = r_im;
    out.abs_r2[i] = r2;
    out.re_t[i] = t_re;
    out.im_t[i] = t_im;
    out.t_flux[i] = t2 * weight;
    out.abs_den[i] = std::sqrt(den2);
  }
}

}  // namespace detail
}  // namespace diracjump::kernels
