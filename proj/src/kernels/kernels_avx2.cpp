// AVX2 variants, compiled per function with target("avx2") and dispatched at runtime.
// FMA is deliberately not enabled: each lane must round exactly like the scalar reference.

#include "kernels_impl.hpp"

#if DIRACJUMP_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace diracjump::kernels::detail {

#define DJ_AVX2 __attribute__((target("avx2")))

DJ_AVX2 void gap_residual_avx2(const GapResidualCoefficients& c, const double* e, double* out,
                               std::size_t n) noexcept {
  const __m256d gl = _mm256_set1_pd(c.left_gap);
  const __m256d gr = _mm256_set1_pd(c.right_gap);
  const __m256d cuu = _mm256_set1_pd(c.c_uu);
  const __m256d cww = _mm256_set1_pd(c.c_ww);
  const __m256d cuw = _mm256_set1_pd(c.c_uw);
  const __m256d cwu = _mm256_set1_pd(c.c_wu);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(e + i);
    const __m256d ul = _mm256_sqrt_pd(_mm256_sub_pd(gl, x));
    const __m256d ur = _mm256_sqrt_pd(_mm256_sub_pd(gr, x));
    const __m256d wl = _mm256_sqrt_pd(_mm256_add_pd(gl, x));
    const __m256d wr = _mm256_sqrt_pd(_mm256_add_pd(gr, x));
    __m256d acc = _mm256_mul_pd(cuu, _mm256_mul_pd(ul, ur));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cww, _mm256_mul_pd(wl, wr)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cuw, _mm256_mul_pd(ul, wr)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cwu, _mm256_mul_pd(wl, ur)));
    _mm256_storeu_pd(out + i, acc);
  }
  gap_residual_scalar(c, e + i, out + i, n - i);
}

DJ_AVX2 void amplitude_avx2(const AmplitudeCoefficients& c, const double* e,
                            const AmplitudeColumns& out, std::size_t n) noexcept {
  const __m256d gl = _mm256_set1_pd(c.left_gap);
  const __m256d gr = _mm256_set1_pd(c.right_gap);
  const __m256d t11r = _mm256_set1_pd(c.t_re[0]), t11i = _mm256_set1_pd(c.t_im[0]);
  const __m256d t12r = _mm256_set1_pd(c.t_re[1]), t12i = _mm256_set1_pd(c.t_im[1]);
  const __m256d t21r = _mm256_set1_pd(c.t_re[2]), t21i = _mm256_set1_pd(c.t_im[2]);
  const __m256d t22r = _mm256_set1_pd(c.t_re[3]), t22i = _mm256_set1_pd(c.t_im[3]);
  const __m256d vratio = _mm256_set1_pd(c.velocity_ratio);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(e + i);
    const __m256d sl = _mm256_sqrt_pd(_mm256_div_pd(_mm256_sub_pd(x, gl), _mm256_add_pd(x, gl)));
    const __m256d sr = _mm256_sqrt_pd(_mm256_div_pd(_mm256_sub_pd(x, gr), _mm256_add_pd(x, gr)));

    const __m256d al_re = _mm256_sub_pd(t11r, _mm256_mul_pd(sl, t12r));
    const __m256d al_im = _mm256_sub_pd(t11i, _mm256_mul_pd(sl, t12i));
    const __m256d be_re = _mm256_sub_pd(t21r, _mm256_mul_pd(sl, t22r));
    const __m256d be_im = _mm256_sub_pd(t21i, _mm256_mul_pd(sl, t22i));
    const __m256d ga_re = _mm256_add_pd(t11r, _mm256_mul_pd(sl, t12r));
    const __m256d ga_im = _mm256_add_pd(t11i, _mm256_mul_pd(sl, t12i));
    const __m256d de_re = _mm256_add_pd(t21r, _mm256_mul_pd(sl, t22r));
    const __m256d de_im = _mm256_add_pd(t21i, _mm256_mul_pd(sl, t22i));

    const __m256d den_re = _mm256_sub_pd(_mm256_mul_pd(sr, al_re), be_re);
    const __m256d den_im = _mm256_sub_pd(_mm256_mul_pd(sr, al_im), be_im);
    const __m256d den2 =
        _mm256_add_pd(_mm256_mul_pd(den_re, den_re), _mm256_mul_pd(den_im, den_im));

    __m256d r_re, r_im, t_re, t_im, weight;
    if (!c.from_right) {
      const __m256d num_re = _mm256_sub_pd(de_re, _mm256_mul_pd(sr, ga_re));
      const __m256d num_im = _mm256_sub_pd(de_im, _mm256_mul_pd(sr, ga_im));
      r_re = _mm256_div_pd(
          _mm256_add_pd(_mm256_mul_pd(num_re, den_re), _mm256_mul_pd(num_im, den_im)), den2);
      r_im = _mm256_div_pd(
          _mm256_sub_pd(_mm256_mul_pd(num_im, den_re), _mm256_mul_pd(num_re, den_im)), den2);
      t_re = _mm256_add_pd(ga_re,
                           _mm256_sub_pd(_mm256_mul_pd(r_re, al_re), _mm256_mul_pd(r_im, al_im)));
      t_im = _mm256_add_pd(ga_im,
                           _mm256_add_pd(_mm256_mul_pd(r_re, al_im), _mm256_mul_pd(r_im, al_re)));
      weight = _mm256_div_pd(_mm256_mul_pd(vratio, sr), sl);
    } else {
      const __m256d two_sr = _mm256_add_pd(sr, sr);
      t_re = _mm256_div_pd(_mm256_mul_pd(two_sr, den_re), den2);
      t_im = _mm256_div_pd(_mm256_xor_pd(_mm256_mul_pd(two_sr, den_im), sign_mask), den2);
      r_re = _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(t_re, al_re), _mm256_mul_pd(t_im, al_im)),
                           one);
      r_im = _mm256_add_pd(_mm256_mul_pd(t_re, al_im), _mm256_mul_pd(t_im, al_re));
      weight = _mm256_div_pd(sl, _mm256_mul_pd(vratio, sr));
    }
    const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(r_re, r_re), _mm256_mul_pd(r_im, r_im));
    const __m256d t2 = _mm256_add_pd(_mm256_mul_pd(t_re, t_re), _mm256_mul_pd(t_im, t_im));
    _mm256_storeu_pd(out.re_r.data() + i, r_re);
    _mm256_storeu_pd(out.im_r.data() + i, r_im);
    _mm256_storeu_pd(out.abs_r2.data() + i, r2);
    _mm256_storeu_pd(out.re_t.data() + i, t_re);
    _mm256_storeu_pd(out.im_t.data() + i, t_im);
    _mm256_storeu_pd(out.t_flux.data() + i, _mm256_mul_pd(t2, weight));
    _mm256_storeu_pd(out.abs_den.data() + i, _mm256_sqrt_pd(den2));
  }
  amplitude_scalar(c, e, out, i, n - i);
}

#undef DJ_AVX2

}  // namespace diracjump::kernels::detail

#endif
