#include "diracjump/matching.hpp"

#include <algorithm>
#include <sstream>

namespace diracjump {
namespace {

constexpr cplx I{0.0, 1.0};

void require_equal_velocities(const Junction& j, const char* what) {
  if (!j.equal_velocities()) {
    std::ostringstream msg;
    msg << what << " requires v_l == v_r (got " << j.left.velocity() << ", "
        << j.right.velocity() << ")";
    throw Error(ErrorKind::VelocityMismatch, msg.str());
  }
}

// Deficiency spinor at the boundary point of its half-line.
Eigen::Vector2cd boundary_value(Side side, EigSign sign, const Medium& m) {
  const SpinorSample s = deficiency_spinor(side, sign, m, 0.0);
  return {s.upper, s.lower};
}

Eigen::RowVector2cd boundary_row(const Eigen::Vector2cd& psi) {
  return {std::conj(psi(1)), std::conj(psi(0))};
}

}  // namespace

SpinorSample deficiency_spinor(Side side, EigSign sign, const Medium& medium, double x) {
  const bool right = side == Side::Right;
  if ((right && x < 0.0) || (!right && x > 0.0)) return {};

  const double a = medium.gap();
  const double s = medium.root();
  const double v = medium.velocity();
  const double prefactor = std::sqrt(s / v);  // [(1 + m^2 v^4) / v^2]^{1/4}

  const cplx denom = (sign == EigSign::Plus) ? cplx(a, 1.0) : cplx(a, -1.0);
  const cplx ratio = (right ? I : -I) * s / denom;
  const double envelope = std::exp(right ? -s / v * x : s / v * x);
  return {prefactor * envelope, prefactor * ratio * envelope};
}

MatchingMatrix matching_from_unitary(const UnitaryMatrix& u, const Junction& junction) {
  const Eigen::Vector2cd pp = boundary_value(Side::Right, EigSign::Plus, junction.right);
  const Eigen::Vector2cd mp = boundary_value(Side::Right, EigSign::Minus, junction.right);
  const Eigen::Vector2cd pm = boundary_value(Side::Left, EigSign::Plus, junction.left);
  const Eigen::Vector2cd mm = boundary_value(Side::Left, EigSign::Minus, junction.left);

  // Limits of psi_1 and psi_2 on either side of the origin.
  const Eigen::Vector2cd psi1_plus = pp + u(0, 0) * mp;
  const Eigen::Vector2cd psi1_minus = u(1, 0) * mm;
  const Eigen::Vector2cd psi2_plus = u(0, 1) * mp;
  const Eigen::Vector2cd psi2_minus = pm + u(1, 1) * mm;

  Mat2 m_plus, m_minus;
  m_plus << boundary_row(psi1_plus), boundary_row(psi2_plus);
  m_minus << boundary_row(psi1_minus), boundary_row(psi2_minus);

  Eigen::JacobiSVD<Mat2> svd(m_plus);
  const auto& sv = svd.singularValues();
  const double cond = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) {
    std::ostringstream msg;
    msg << "boundary matrix at 0+ has condition number " << cond
        << "; the extension decouples the half-lines";
    throw Error(ErrorKind::SingularBoundaryMatrix, msg.str());
  }

  const double vratio = junction.left.velocity() / junction.right.velocity();
  return {vratio * m_plus.partialPivLu().solve(m_minus), junction};
}

MatchingMatrix matching_closed_form(const ExtensionParams& ext, const Junction& junction) {
  if (std::abs(ext.a1()) < 1e-12)
    throw Error(ErrorKind::DegenerateExtension,
                "a1 = 0 decouples the half-lines; no matching matrix exists");

  const double ml = junction.left.gap();
  const double mr = junction.right.gap();
  const double ql = std::sqrt(junction.left.root());   // (1 + m_l^2 v_l^4)^{1/4}
  const double qr = std::sqrt(junction.right.root());  // (1 + m_r^2 v_r^4)^{1/4}
  const double a0 = ext.a0(), a1 = ext.a1(), a3 = ext.a3();
  const double s = std::sin(ext.alpha());
  const double c = std::cos(ext.alpha());
  const cplx phase = std::polar(1.0, -ext.alpha());

  Mat2 comp;
  comp(0, 0) = 2.0 * I * phase * qr * (a3 + s - ml * (a0 + c)) / ql;
  // Sign follows the deficiency-basis construction.
  comp(0, 1) = -2.0 * phase * (a0 + c) * ql * qr;
  comp(1, 0) = 2.0 * phase *
               (a0 - c + ml * mr * (a0 + c) + ml * (a3 - s) - mr * (a3 + s)) / (ql * qr);
  comp(1, 1) = -2.0 * I * phase * ql * (a3 - s + mr * (a0 + c)) / qr;

  const cplx u12_conj = I * a1 * phase;
  const cplx prefactor = std::sqrt(junction.left.velocity()) /
                         (2.0 * u12_conj * std::sqrt(junction.right.velocity()));
  return {prefactor * comp, junction};
}

MatchingMatrix named_matrix(const NamedExtension& named, const Junction& junction) {
  require_equal_velocities(junction, "named point interaction");
  const double v = junction.left.velocity();
  const double ql = std::sqrt(junction.left.root());
  const double qr = std::sqrt(junction.right.root());
  const double g = named.strength();

  Mat2 t;
  switch (named.family()) {
    case Family::EquallyMixed:
      t << qr / ql, 0.0,
           -I * g / (v * ql * qr), ql / qr;
      break;
    case Family::InvertedMixed:
      t << qr / ql, -I * g * v * ql * qr,
           0.0, ql / qr;
      break;
    case Family::PureScalar: {
      const double ch = std::cosh(g / v), sh = std::sinh(g / v);
      t << qr / ql * ch, I * sh,
           -I * sh, ql / qr * ch;
      break;
    }
    case Family::PureVector: {
      const double ml = junction.left.mass(), mr = junction.right.mass();
      if (ml <= 0.0 || mr <= 0.0)
        throw Error(ErrorKind::InvalidArgument, "pure-vector matching needs nonzero masses");
      const double cs = std::cos(g / v), sn = std::sin(g / v);
      t << mr / ml * cs, -I * sn,
           -I * sn, ml / mr * cs;
      break;
    }
  }
  return {t, junction};
}

ExtensionParams equally_mixed_extension(double delta, const Junction& junction) {
  require_equal_velocities(junction, "equally mixed parametrization");
  if (!NamedExtension::strength_allowed(Family::EquallyMixed, delta))
    throw Error(ErrorKind::StrengthSignError, "equally mixed strength must be negative");
  const double v = junction.left.velocity();
  const double cot = -(delta + (junction.left.mass() + junction.right.mass()) * v * v * v) / (2.0 * v);
  const double alpha = std::atan2(1.0, cot);  // in (0, pi)
  return ExtensionParams(alpha, -std::cos(alpha), std::sin(alpha), 0.0);
}

ExtensionParams extension_from_matching(const MatchingMatrix& t) {
  const Junction& j = t.junction;
  const Mat2 tn = t.entries / std::sqrt(j.left.velocity() / j.right.velocity());

  const double scale = tn.cwiseAbs().maxCoeff();
  const double off_structure = std::max({std::abs(tn(0, 0).imag()), std::abs(tn(1, 1).imag()),
                                         std::abs(tn(0, 1).real()), std::abs(tn(1, 0).real())});
  if (off_structure > 1e-10 * scale)
    throw Error(ErrorKind::InvalidArgument,
                "matrix lies outside the a2 = 0 family (needs real diagonal, imaginary off-diagonal)");

  const double ml = j.left.gap(), mr = j.right.gap();
  const double p = std::sqrt(j.right.root() / j.left.root());
  const double big_p = std::sqrt(j.left.root() * j.right.root());

  // All in units of 1/a1.
  const double u = tn(0, 1).imag() / big_p;                    // (a0 + cos)
  const double w1 = tn(0, 0).real() / p + ml * u;              // (a3 + sin)
  const double w2 = -p * tn(1, 1).real() - mr * u;             // (a3 - sin)
  const double w3 = -big_p * tn(1, 0).imag() - ml * mr * u - ml * w2 + mr * w1;  // (a0 - cos)

  const double cos_k = 0.5 * (u - w3);
  const double sin_k = 0.5 * (w1 - w2);
  const double inv_a1 = std::hypot(cos_k, sin_k);
  if (!(inv_a1 > 0.0) || !std::isfinite(inv_a1))
    throw Error(ErrorKind::DegenerateExtension, "matrix has no finite a1");

  double a1 = 1.0 / inv_a1;
  if (sin_k < 0.0 || (sin_k == 0.0 && cos_k < 0.0)) a1 = -a1;
  const double alpha = std::atan2(a1 * sin_k, a1 * cos_k);
  double a0 = a1 * 0.5 * (u + w3);
  double a3 = a1 * 0.5 * (w1 + w2);

  const double norm = std::sqrt(a0 * a0 + a1 * a1 + a3 * a3);
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "recovered |a| = " << norm << "; det T does not equal v_l / v_r";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return ExtensionParams(alpha, a0 / norm, a1 / norm, a3 / norm);
}

double current_defect(const MatchingMatrix& t) {
  Mat2 sx;
  sx << 0.0, 1.0, 1.0, 0.0;
  const double vratio = t.junction.left.velocity() / t.junction.right.velocity();
  return (t.entries.adjoint() * sx * t.entries - vratio * sx).cwiseAbs().maxCoeff();
}

}  // namespace diracjump
