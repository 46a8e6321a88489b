#include <doctest.h>

#include <cstring>
#include <vector>

#include "diracjump/kernels.hpp"
#include "gen.hpp"

using namespace diracjump;
using namespace diracjump::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

GapResidualCoefficients random_gap_coefficients(testsupport::Gen& g) {
  return {g.uniform(0.01, 3), g.uniform(0.01, 3), g.normal(), g.normal(), g.normal(), g.normal()};
}

struct AmplitudeOutput {
  std::vector<double> re_r, im_r, abs_r2, re_t, im_t, t_flux, abs_den;
  explicit AmplitudeOutput(std::size_t n)
      : re_r(n), im_r(n), abs_r2(n), re_t(n), im_t(n), t_flux(n), abs_den(n) {}
  AmplitudeColumns columns() { return {re_r, im_r, abs_r2, re_t, im_t, t_flux, abs_den}; }
  bool operator==(const AmplitudeOutput& o) const {
    return same_bits(re_r, o.re_r) && same_bits(im_r, o.im_r) && same_bits(abs_r2, o.abs_r2) &&
           same_bits(re_t, o.re_t) && same_bits(im_t, o.im_t) && same_bits(t_flux, o.t_flux) &&
           same_bits(abs_den, o.abs_den);
  }
};

}  // namespace

TEST_CASE("backend resolution") {
  CHECK(resolve(Backend::Scalar) == Backend::Scalar);
  CHECK(resolve(Backend::Auto) == (avx2_available() ? Backend::Avx2 : Backend::Scalar));
  if (!avx2_available()) CHECK(resolve(Backend::Avx2) == Backend::Scalar);
  CHECK(to_string(Backend::Avx2) == "avx2");
}

TEST_CASE("gap residual batch matches the scalar reference bit for bit") {
  testsupport::Gen g(101);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 517u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const GapResidualCoefficients c = random_gap_coefficients(g);
      const double w = std::min(c.left_gap, c.right_gap);
      std::vector<double> e(n);
      for (double& x : e) x = g.uniform(-w, w);
      std::vector<double> scalar(n), simd(n), single(n);
      gap_residual_batch(c, e, scalar, Backend::Scalar);
      gap_residual_batch(c, e, simd, Backend::Avx2);
      for (std::size_t i = 0; i < n; ++i) single[i] = gap_residual(c, e[i]);
      CHECK(same_bits(scalar, simd));
      CHECK(same_bits(scalar, single));
    }
  }
}

TEST_CASE("amplitude batch matches the scalar reference bit for bit") {
  testsupport::Gen g(202);
  for (std::size_t n : {0u, 1u, 2u, 4u, 6u, 13u, 100u, 259u}) {
    for (int rep = 0; rep < 20; ++rep) {
      AmplitudeCoefficients c{};
      for (int k = 0; k < 4; ++k) {
        c.t_re[k] = g.normal();
        c.t_im[k] = g.normal();
      }
      c.left_gap = g.uniform(0, 3);
      c.right_gap = g.uniform(0, 3);
      c.velocity_ratio = g.log_uniform(0.3, 3);
      c.from_right = g.coin();
      const double edge = std::max(c.left_gap, c.right_gap);
      std::vector<double> e(n);
      for (double& x : e) x = edge + g.log_uniform(1e-6, 20);
      AmplitudeOutput scalar(n), simd(n);
      amplitude_batch(c, e, scalar.columns(), Backend::Scalar);
      amplitude_batch(c, e, simd.columns(), Backend::Avx2);
      CHECK(scalar == simd);
    }
  }
}

TEST_CASE("batch kernels check output sizes") {
  const GapResidualCoefficients c{1, 1, 1, 1, 1, 1};
  std::vector<double> e(4), out(3);
  CHECK_THROWS(gap_residual_batch(c, e, out));
}
