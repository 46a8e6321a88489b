#include <stdexcept>

#include "kernels_impl.hpp"

namespace diracjump::kernels {

bool avx2_available() noexcept {
#if DIRACJUMP_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend resolve(Backend requested) noexcept {
  switch (requested) {
    case Backend::Scalar: return Backend::Scalar;
    case Backend::Auto:
    case Backend::Avx2: return avx2_available() ? Backend::Avx2 : Backend::Scalar;
  }
  return Backend::Scalar;
}

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

void gap_residual_batch(const GapResidualCoefficients& c, std::span<const double> energies,
                        std::span<double> out, Backend backend) {
  if (out.size() < energies.size()) throw std::invalid_argument("gap_residual_batch: output too small");
#if DIRACJUMP_HAVE_AVX2_KERNELS
  if (resolve(backend) == Backend::Avx2) {
    detail::gap_residual_avx2(c, energies.data(), out.data(), energies.size());
    return;
  }
#endif
  detail::gap_residual_scalar(c, energies.data(), out.data(), energies.size());
}

void amplitude_batch(const AmplitudeCoefficients& c, std::span<const double> energies,
                     const AmplitudeColumns& out, Backend backend) {
  const std::size_t n = energies.size();
  for (auto col : {out.re_r, out.im_r, out.abs_r2, out.re_t, out.im_t, out.t_flux, out.abs_den}) {
    if (col.size() < n) throw std::invalid_argument("amplitude_batch: output column too small");
  }
#if DIRACJUMP_HAVE_AVX2_KERNELS
  if (resolve(backend) == Backend::Avx2) {
    detail::amplitude_avx2(c, energies.data(), out, n);
    return;
  }
#endif
  detail::amplitude_scalar(c, energies.data(), out, 0, n);
}

}  // namespace diracjump::kernels
