#include <doctest.h>

#include <numbers>

#include "diracjump/matching.hpp"
#include "gen.hpp"

using namespace diracjump;

namespace {

double max_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected diracjump::Error");
  return ErrorKind::InvalidArgument;
}

// T = I on an equal-mass junction: a = (-cos alpha, sin alpha, 0), cot alpha = -(m_l + m_r) v^2 / 2.
ExtensionParams identity_extension(double m, double v) {
  const double alpha = std::atan2(1.0, -m * v * v);
  return ExtensionParams(alpha, -std::cos(alpha), std::sin(alpha), 0.0);
}

}  // namespace

TEST_CASE("medium rejects invalid mass and velocity") {
  CHECK(kind_of([] { Medium(-1.0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Medium(1.0, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Medium(1.0, -2.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Medium(std::nan(""), 1.0); }) == ErrorKind::InvalidArgument);
  const Medium massless(0.0, 1.0);
  CHECK(massless.gap() == 0.0);
  CHECK(massless.decay_rate() == doctest::Approx(1.0));
  CHECK(Medium(2.0, 1.0).decay_rate() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("extension params live on the sphere and reduce alpha") {
  CHECK(kind_of([] { ExtensionParams(0.1, 0.5, 0.5, 0.5); }) == ErrorKind::InvalidArgument);
  const ExtensionParams e(0.3 + std::numbers::pi, 0.6, 0.8, 0.0);
  CHECK(e.alpha() == doctest::Approx(0.3));
  CHECK(e.a0() == doctest::Approx(-0.6));
  CHECK(e.a1() == doctest::Approx(-0.8));
  // The same U either way.
  const Mat2 u1 = UnitaryMatrix::from_chart(0.3 + std::numbers::pi, 0.6, 0.8, 0.0, 0.0).matrix();
  const Mat2 u2 = UnitaryMatrix::from_extension(e).matrix();
  CHECK(max_diff(u1, u2) < 1e-14);
}

TEST_CASE("unitary matrix rejects non-unitary input") {
  Mat2 m;
  m << 1.0, 0.1, 0.0, 1.0;
  CHECK(kind_of([&] { UnitaryMatrix u(m); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("named extension sign conventions") {
  CHECK(kind_of([] { NamedExtension(Family::EquallyMixed, 1.0); }) == ErrorKind::StrengthSignError);
  CHECK(kind_of([] { NamedExtension(Family::InvertedMixed, -1.0); }) == ErrorKind::StrengthSignError);
  CHECK(kind_of([] { NamedExtension(Family::PureScalar, 0.0); }) == ErrorKind::StrengthSignError);
  CHECK(kind_of([] { NamedExtension(Family::PureVector, -1.0); }) == ErrorKind::StrengthSignError);
  for (Family f : {Family::EquallyMixed, Family::InvertedMixed, Family::PureScalar, Family::PureVector})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_FALSE(parse_family("vector").has_value());
}

TEST_CASE("deficiency spinor boundary values and support") {
  const Medium m(1.0, 1.0);
  const double q = std::pow(2.0, 0.25);
  const SpinorSample s = deficiency_spinor(Side::Right, EigSign::Plus, m, 0.0);
  CHECK(std::abs(s.upper - cplx(q, 0.0)) < 1e-15);
  const cplx expected_lower = q * cplx(0.0, std::sqrt(2.0)) / cplx(1.0, 1.0);
  CHECK(std::abs(s.lower - expected_lower) < 1e-15);

  const SpinorSample off = deficiency_spinor(Side::Right, EigSign::Plus, m, -1.0);
  CHECK(off.upper == cplx(0.0));
  CHECK(off.lower == cplx(0.0));

  const Medium heavy(2.0, 1.0);
  const SpinorSample at0 = deficiency_spinor(Side::Left, EigSign::Minus, heavy, 0.0);
  const SpinorSample at1 = deficiency_spinor(Side::Left, EigSign::Minus, heavy, -1.0);
  const double decay = std::exp(-std::sqrt(5.0));
  CHECK(std::abs(at1.upper) == doctest::Approx(decay * std::abs(at0.upper)).epsilon(1e-14));
  CHECK(std::abs(at1.lower) == doctest::Approx(decay * std::abs(at0.lower)).epsilon(1e-14));
}

TEST_CASE("deficiency route reproduces the closed form") {
  const Junction j = make_junction(1, 2, 1, 1);
  const ExtensionParams e(std::numbers::pi / 2, 0.0, 1.0, 0.0);
  const MatchingMatrix a = matching_from_unitary(UnitaryMatrix::from_extension(e), j);
  const MatchingMatrix b = matching_closed_form(e, j);
  CHECK(max_diff(a.entries, b.entries) <= 1e-10);
}

TEST_CASE("determinant modulus follows the velocity ratio") {
  testsupport::Gen gen(7);
  for (int i = 0; i < 50; ++i) {
    const Junction j = make_junction(gen.uniform(0, 2), gen.uniform(0, 2), 1.0, 2.0);
    const MatchingMatrix t = matching_from_unitary(gen.unitary(), j);
    CHECK(std::abs(t.det()) == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("decoupling unitary is rejected") {
  const Junction j = make_junction(1, 1, 1, 1);
  CHECK(kind_of([&] { matching_from_unitary(UnitaryMatrix(-Mat2::Identity()), j); }) ==
        ErrorKind::SingularBoundaryMatrix);
  CHECK(kind_of([&] { matching_closed_form(ExtensionParams(0.4, 0.6, 0.0, 0.8), j); }) ==
        ErrorKind::DegenerateExtension);
}

TEST_CASE("closed form gives the identity when the coupling cancels the masses") {
  // alpha = pi/2, a = (0, 1, 0) is the identity only for massless media.
  const ExtensionParams plain(std::numbers::pi / 2, 0.0, 1.0, 0.0);
  CHECK(max_diff(matching_closed_form(plain, make_junction(0, 0, 1.3, 1.3)).entries,
                 Mat2::Identity()) < 1e-14);
  CHECK(max_diff(matching_closed_form(plain, make_junction(1, 1, 1, 1)).entries,
                 Mat2::Identity()) > 0.1);
  for (double m : {0.5, 1.0, 2.0}) {
    const MatchingMatrix t = matching_closed_form(identity_extension(m, 1.0), make_junction(m, m, 1, 1));
    CHECK(max_diff(t.entries, Mat2::Identity()) < 1e-14);
  }
}

TEST_CASE("closed form determinant on equal velocities") {
  testsupport::Gen gen(11);
  for (int i = 0; i < 100; ++i) {
    const Junction j = gen.equal_velocity_junction();
    const cplx d = matching_closed_form(gen.extension(0.05), j).det();
    CHECK(std::abs(d - 1.0) <= 1e-10);
  }
}

TEST_CASE("equally mixed parametrization reproduces the named matrix") {
  const Junction j = make_junction(1, 2, 1, 1);
  const MatchingMatrix a = matching_closed_form(equally_mixed_extension(-1.0, j), j);
  const MatchingMatrix b = named_matrix(NamedExtension(Family::EquallyMixed, -1.0), j);
  CHECK(max_diff(a.entries, b.entries) <= 1e-10);
}

TEST_CASE("named matrix entries") {
  const Junction j = make_junction(1, 2, 1, 1);
  const MatchingMatrix em = named_matrix(NamedExtension(Family::EquallyMixed, -1.0), j);
  const double r2 = std::pow(2.0, 0.25), r5 = std::pow(5.0, 0.25);
  CHECK(std::abs(em(0, 0) - r5 / r2) < 1e-15);
  CHECK(std::abs(em(1, 0) - cplx(0.0, 1.0 / (r2 * r5))) < 1e-15);
  CHECK(em(0, 1) == cplx(0.0));
  CHECK(std::abs(em(1, 1) - r2 / r5) < 1e-15);

  const MatchingMatrix pv = named_matrix(NamedExtension(Family::PureVector, std::numbers::pi), j);
  Mat2 expected;
  expected << -2.0, 0.0, 0.0, -0.5;
  CHECK(max_diff(pv.entries, expected) < 1e-15);

  const MatchingMatrix ps =
      named_matrix(NamedExtension(Family::PureScalar, -1e-14), make_junction(1.5, 1.5, 1, 1));
  CHECK(max_diff(ps.entries, Mat2::Identity()) < 1e-13);

  CHECK(kind_of([] {
          named_matrix(NamedExtension(Family::PureScalar, -1.0), make_junction(1, 2, 1, 2));
        }) == ErrorKind::VelocityMismatch);
  CHECK(kind_of([] {
          named_matrix(NamedExtension(Family::PureVector, 1.0), make_junction(0, 2, 1, 1));
        }) == ErrorKind::InvalidArgument);
}

TEST_CASE("named matrices map back onto the extension chart") {
  const Junction j = make_junction(1, 2, 1, 1);
  const NamedExtension cases[] = {{Family::EquallyMixed, -1.3}, {Family::InvertedMixed, 0.7},
                                  {Family::PureScalar, -0.9}, {Family::PureVector, 2.2}};
  for (const NamedExtension& n : cases) {
    const MatchingMatrix t = named_matrix(n, j);
    const ExtensionParams e = extension_from_matching(t);
    CHECK(max_diff(matching_closed_form(e, j).entries, t.entries) < 1e-12);
    CHECK(max_diff(matching_from_unitary(UnitaryMatrix::from_extension(e), j).entries, t.entries) < 1e-10);
    CHECK(current_defect(t) < 1e-14);
  }
}

TEST_CASE("inverse map round trip on random parameters") {
  testsupport::Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    const Junction j = gen.junction();
    const ExtensionParams e = gen.extension(0.05);
    const ExtensionParams back = extension_from_matching(matching_closed_form(e, j));
    CHECK(back.alpha() == doctest::Approx(e.alpha()).epsilon(1e-9));
    CHECK(back.a0() == doctest::Approx(e.a0()).epsilon(1e-9));
    CHECK(back.a1() == doctest::Approx(e.a1()).epsilon(1e-9));
    CHECK(back.a3() == doctest::Approx(e.a3()).epsilon(1e-9));
  }
}
