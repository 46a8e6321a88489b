#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "diracjump/matching.hpp"
#include "diracjump/scattering.hpp"
#include "diracjump/spectral.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace diracjump;
using testsupport::Gen;

namespace {

constexpr int kDraws = 1000;
constexpr double pi = std::numbers::pi;

double max_entry(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Junction equal_velocity(Gen& g) { return g.equal_velocity_junction(); }

}  // namespace

TEST_CASE("modulus of the determinant is the velocity ratio") {
  Gen g(1);
  int used = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const UnitaryMatrix u = g.unitary();
    if (std::abs(u(0, 1)) < 1e-3) continue;
    const MatchingMatrix t = matching_from_unitary(u, j);
    const double ratio = j.left.velocity() / j.right.velocity();
    CHECK(std::abs(std::abs(t.det()) / ratio - 1.0) <= 1e-10);
    ++used;
  }
  CHECK(used > 990);
}

TEST_CASE("closed form determinant is real and equals the velocity ratio") {
  Gen g(2);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension(0.05);
    const cplx d = matching_closed_form(e, j).det();
    const double ratio = j.left.velocity() / j.right.velocity();
    CHECK(std::abs(d.real() - ratio) <= 1e-10);
    CHECK(std::abs(d.imag()) <= 1e-10);
  }
}

TEST_CASE("deficiency route and closed form agree") {
  Gen g(3);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension();
    const Mat2 a = matching_from_unitary(UnitaryMatrix::from_extension(e), j).entries;
    const Mat2 b = matching_closed_form(e, j).entries;
    CHECK(max_entry(a - b) <= 1e-8 * std::max(1.0, max_entry(b)));
  }
}

TEST_CASE("closed form conserves current and round trips") {
  Gen g(4);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension(0.05);
    const MatchingMatrix t = matching_closed_form(e, j);
    CHECK(current_defect(t) <= 1e-10 * std::max(1.0, max_entry(t.entries) * max_entry(t.entries)));
    const MatchingMatrix back = matching_closed_form(extension_from_matching(t), j);
    CHECK(max_entry(back.entries - t.entries) <= 1e-8 * std::max(1.0, max_entry(t.entries)));
  }
}

TEST_CASE("flux unitarity in both directions") {
  Gen g(5);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension();
    const double energy = g.scattering_energy(j);
    const MatchingMatrix t = matching_closed_form(e, j);
    for (Direction d : {Direction::FromLeft, Direction::FromRight}) {
      const ScatteringAmplitudes a = amplitudes_solve(t, energy, d);
      CHECK(std::abs(std::norm(a.r) + flux_transmission(j, energy, a) - 1.0) <= 1e-10);
    }
    const ScatteringAmplitudes c = amplitudes_closed(e, j, energy);
    CHECK(std::abs(std::norm(c.r) + flux_transmission(j, energy, c) - 1.0) <= 1e-10);
  }
}

TEST_CASE("closed form amplitudes match the linear solve and the plane-wave oracle") {
  Gen g(6);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension();
    const double energy = g.scattering_energy(j);
    const MatchingMatrix t = matching_closed_form(e, j);
    const ScatteringAmplitudes c = amplitudes_closed(e, j, energy);
    const ScatteringAmplitudes s = amplitudes_solve(t, energy, Direction::FromLeft);
    CHECK(std::abs(c.r - s.r) <= 1e-8);
    CHECK(std::abs(c.t - s.t) <= 1e-8);
    const auto o = testsupport::plane_wave_amplitudes(t, energy, true);
    CHECK(std::abs(cplx(o.r) - s.r) <= 1e-8);
    CHECK(std::abs(cplx(o.t) - s.t) <= 1e-8);
  }
}

TEST_CASE("a2 rotation changes only the phase of the amplitudes") {
  Gen g(7);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = g.junction();
    const ExtensionParams e = g.extension(0.05);
    const double phi = g.uniform(0, 2 * pi);
    const UnitaryMatrix u = UnitaryMatrix::from_chart(e.alpha(), e.a0(), e.a1() * std::cos(phi),
                                                      e.a1() * std::sin(phi), e.a3());
    const double energy = g.scattering_energy(j);
    const auto rotated = amplitudes_solve(matching_from_unitary(u, j), energy, Direction::FromLeft);
    const auto plain = amplitudes_closed(e, j, energy);
    CHECK(std::abs(std::abs(rotated.t) - std::abs(plain.t)) <= 1e-9);
    CHECK(std::abs(std::abs(rotated.r) - std::abs(plain.r)) <= 1e-9);
  }
}

TEST_CASE("poles coincide for left and right incidence") {
  Gen g(8);
  int seen = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = equal_velocity(g);
    const ExtensionParams e = g.extension(0.05);
    const MatchingMatrix t = matching_closed_form(e, j);
    for (const BoundState& b : find_bound_states(e, j, 256)) {
      const double scale = 1.0 + max_entry(t.entries);
      CHECK(std::abs(system_determinant(t, b.energy, Direction::FromLeft)) <= 1e-8 * scale);
      CHECK(std::abs(system_determinant(t, b.energy, Direction::FromRight)) <= 1e-8 * scale);
      ++seen;
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("mass swap leaves the first three spectral equations unchanged") {
  Gen g(9);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = equal_velocity(g);
    const Family f = static_cast<Family>(g.index(3));
    const NamedExtension n(f, g.strength(f));
    const double w = j.min_gap();
    const double e = g.uniform(-w, w) * (1 - 1e-9);
    const double a = spectral_residual(n, j, e), b = spectral_residual(n, j.swapped(), e);
    CHECK(std::abs(a - b) <= 1e-12 * spectral_term_scale(n, j, e));
  }
}

TEST_CASE("spectral residual matches the term-by-term equation") {
  Gen g(10);
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = equal_velocity(g);
    const Family f = g.family();
    const NamedExtension n(f, g.strength(f));
    const double w = j.min_gap();
    const double e = g.uniform(-w, w) * (1 - 1e-9);
    const testsupport::ld lit = testsupport::literal_spectral(f, n.strength(), j.left.mass(), j.right.mass(),
                                                              j.left.velocity(), e);
    CHECK(std::abs(spectral_residual(n, j, e) - static_cast<double>(lit)) <=
          1e-12 * spectral_term_scale(n, j, e));
  }
}

TEST_CASE("bound states satisfy the spectral equation") {
  Gen g(11);
  int seen = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = equal_velocity(g);
    const Family f = g.family();
    const NamedExtension n(f, g.strength(f));
    double last = -j.min_gap();
    for (const BoundState& b : find_bound_states(n, j)) {
      CHECK(std::abs(b.energy) < j.min_gap());
      CHECK(b.energy >= last);
      last = b.energy;
      CHECK(std::abs(spectral_residual(n, j, b.energy)) <= 1e-10 * spectral_term_scale(n, j, b.energy));
      ++seen;
    }
  }
  CHECK(seen > 500);
}

TEST_CASE("near-equal masses approach the equal-mass energies") {
  Gen g(12);
  for (int i = 0; i < kDraws; ++i) {
    const double m = g.uniform(0.2, 3), v = g.log_uniform(0.5, 2);
    const Family f = g.family();
    const NamedExtension n(f, g.strength(f));
    std::vector<double> expected = equal_mass_energy(n, m, v);
    const double gap = m * v * v;
    std::erase_if(expected, [&](double e) { return std::abs(e) >= gap * (1 - 1e-3); });
    std::sort(expected.begin(), expected.end());
    std::vector<double> found;
    for (const BoundState& b : find_bound_states(n, make_junction(m, m * (1 + 1e-6), v, v)))
      if (std::abs(b.energy) < gap * (1 - 1e-3)) found.push_back(b.energy);
    INFO(to_string(f), " ", m, " ", v, " ", n.strength());
    REQUIRE(found.size() == expected.size());
    for (std::size_t k = 0; k < found.size(); ++k) CHECK(std::abs(found[k] - expected[k]) <= 1e-4 * gap);
  }
}

TEST_CASE("pure scalar roots appear at the edge thresholds and pair up") {
  // At E = +-a (a the smaller gap) the equation factorizes; tanh(strength / v) has to pass
  // -(S_b/S_a)^{+-1/2} sqrt((b - a)/(b + a)) for the root at that edge to exist.
  Gen g(13);
  int pairs = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Junction j = equal_velocity(g);
    const NamedExtension n(Family::PureScalar, g.strength(Family::PureScalar));
    const Medium& small = j.left.gap() <= j.right.gap() ? j.left : j.right;
    const Medium& large = j.left.gap() <= j.right.gap() ? j.right : j.left;
    const double a = small.gap(), b = large.gap();
    const double q = std::sqrt((b - a) / (b + a)), r = std::sqrt(large.root() / small.root());
    const double th = std::tanh(n.strength() / j.left.velocity());
    const double upper = -r * q, lower = -q / r;
    if (std::abs(th - upper) < 1e-3 || std::abs(th - lower) < 1e-3) continue;
    const std::size_t expected = (th < lower ? 1 : 0) + (th < upper ? 1 : 0);
    const auto roots = find_bound_states(n, j);
    INFO(j.left.mass(), " ", j.right.mass(), " ", j.left.velocity(), " ", n.strength());
    REQUIRE(roots.size() == expected);
    if (expected >= 1) CHECK(roots[0].energy < -1e-6 * a);
    if (expected == 2) {
      CHECK(roots[1].energy > 1e-6 * a);
      ++pairs;
    }
  }
  CHECK(pairs > 300);
}

TEST_CASE("energy sweeps are thread independent bit for bit") {
  Gen g(14);
  for (int i = 0; i < 50; ++i) {
    const Junction j = g.junction();
    const MatchingMatrix t = matching_closed_form(g.extension(), j);
    std::vector<double> energies(1 + g.index(400));
    for (double& e : energies) e = g.scattering_energy(j);
    const Direction d = g.coin() ? Direction::FromLeft : Direction::FromRight;
    const ScatteringSweep a = scattering_sweep(t, energies, d, kernels::Backend::Auto, 1);
    const ScatteringSweep b = scattering_sweep(t, energies, d, kernels::Backend::Auto, 1 + g.index(7));
    const auto same = [](const std::vector<double>& x, const std::vector<double>& y) {
      return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
    };
    CHECK(same(a.abs_r2, b.abs_r2));
    CHECK(same(a.t_flux, b.t_flux));
    CHECK(same(a.re_t, b.re_t));
    CHECK(same(a.im_r, b.im_r));
  }
}
