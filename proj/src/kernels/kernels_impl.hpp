#pragma once

#include <cstddef>

#include "diracjump/kernels.hpp"

namespace diracjump::kernels::detail {

void gap_residual_scalar(const GapResidualCoefficients& c, const double* e, double* out,
                         std::size_t n) noexcept;
void amplitude_scalar(const AmplitudeCoefficients& c, const double* e, const AmplitudeColumns& out,
                      std::size_t offset, std::size_t n) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
#define DIRACJUMP_HAVE_AVX2_KERNELS 1
void gap_residual_avx2(const GapResidualCoefficients& c, const double* e, double* out,
                       std::size_t n) noexcept;
void amplitude_avx2(const AmplitudeCoefficients& c, const double* e, const AmplitudeColumns& out,
                    std::size_t n) noexcept;
#else
#define DIRACJUMP_HAVE_AVX2_KERNELS 0
#endif

}  // namespace diracjump::kernels::detail
