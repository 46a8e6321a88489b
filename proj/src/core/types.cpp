#include "diracjump/types.hpp"

#include <numbers>
#include <sstream>

namespace diracjump {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularBoundaryMatrix: return "SingularBoundaryMatrix";
    case ErrorKind::DegenerateExtension: return "DegenerateExtension";
    case ErrorKind::VelocityMismatch: return "VelocityMismatch";
    case ErrorKind::StrengthSignError: return "StrengthSignError";
    case ErrorKind::BelowThreshold: return "BelowThreshold";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::OutsideWindow: return "OutsideWindow";
  }
  return "Unknown";
}

Medium::Medium(double mass, double velocity) : mass_(mass), velocity_(velocity) {
  if (!std::isfinite(mass) || mass < 0.0) {
    std::ostringstream msg;
    msg << "mass must be finite and non-negative, got " << mass;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!std::isfinite(velocity) || velocity <= 0.0) {
    std::ostringstream msg;
    msg << "velocity must be finite and positive, got " << velocity;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

bool Junction::equal_velocities() const noexcept {
  return std::abs(left.velocity() - right.velocity()) <=
         1e-14 * std::max(left.velocity(), right.velocity());
}

Junction make_junction(double ml, double mr, double vl, double vr) {
  return {Medium(ml, vl), Medium(mr, vr)};
}

ExtensionParams::ExtensionParams(double alpha, double a0, double a1, double a3) {
  if (!std::isfinite(alpha) || !std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(a3))
    throw Error(ErrorKind::InvalidArgument, "extension parameters must be finite");
  const double norm2 = a0 * a0 + a1 * a1 + a3 * a3;
  if (std::abs(norm2 - 1.0) > kSphereTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "a0^2 + a1^2 + a3^2 must equal 1, got " << norm2;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  constexpr double pi = std::numbers::pi;
  // Each shift of alpha by pi flips the sign of a.
  const double turns = std::floor(alpha / pi);
  alpha -= turns * pi;
  if (alpha >= pi) alpha = 0.0;
  const double sign = (static_cast<long long>(turns) % 2 == 0) ? 1.0 : -1.0;
  alpha_ = alpha;
  a0_ = sign * a0;
  a1_ = sign * a1;
  a3_ = sign * a3;
}

UnitaryMatrix::UnitaryMatrix(const Mat2& u) : u_(u) {
  const double defect = (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (!(defect <= kTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary (max |U^dagger U - 1| = " << defect << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

UnitaryMatrix UnitaryMatrix::from_chart(double alpha, double a0, double a1, double a2, double a3) {
  const cplx i{0.0, 1.0};
  Mat2 a;
  a << a0 - i * a3, -a2 - i * a1,
       a2 - i * a1, a0 + i * a3;
  return UnitaryMatrix(std::polar(1.0, alpha) * a);
}

UnitaryMatrix UnitaryMatrix::from_extension(const ExtensionParams& ext) {
  return from_chart(ext.alpha(), ext.a0(), ext.a1(), 0.0, ext.a3());
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::EquallyMixed: return "equally-mixed";
    case Family::InvertedMixed: return "inverted-mixed";
    case Family::PureScalar: return "pure-scalar";
    case Family::PureVector: return "pure-vector";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::EquallyMixed, Family::InvertedMixed, Family::PureScalar,
                   Family::PureVector}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

bool NamedExtension::strength_allowed(Family family, double strength) noexcept {
  if (!std::isfinite(strength)) return false;
  switch (family) {
    case Family::EquallyMixed: return strength < 0.0;
    case Family::InvertedMixed: return strength > 0.0;
    case Family::PureScalar: return strength < 0.0;
    case Family::PureVector: return strength > 0.0;
  }
  return false;
}

NamedExtension::NamedExtension(Family family, double strength)
    : family_(family), strength_(strength) {
  if (!strength_allowed(family, strength)) {
    std::ostringstream msg;
    msg << to_string(family) << " strength " << strength << " violates the sign convention ("
        << ((family == Family::EquallyMixed || family == Family::PureScalar) ? "< 0" : "> 0")
        << ")";
    throw Error(ErrorKind::StrengthSignError, msg.str());
  }
}

}  // namespace diracjump
