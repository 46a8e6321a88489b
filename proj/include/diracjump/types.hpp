#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "diracjump/error.hpp"

namespace diracjump {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// One side of the junction: rest mass and Fermi velocity, natural units (hbar = 1).
class Medium {
 public:
  Medium(double mass, double velocity);

  double mass() const noexcept { return mass_; }
  double velocity() const noexcept { return velocity_; }

  /// Rest energy m v^2, the half-width of the gap on this side.
  double gap() const noexcept { return mass_ * velocity_ * velocity_; }
  /// sqrt(1 + m^2 v^4).
  double root() const noexcept { return std::sqrt(1.0 + gap() * gap()); }
  /// Decay rate of the deficiency spinors, sqrt(1 + m^2 v^4) / v.
  double decay_rate() const noexcept { return root() / velocity_; }

  friend bool operator==(const Medium&, const Medium&) = default;

 private:
  double mass_;
  double velocity_;
};

struct Junction {
  Medium left;
  Medium right;

  double max_gap() const noexcept { return std::max(left.gap(), right.gap()); }
  double min_gap() const noexcept { return std::min(left.gap(), right.gap()); }
  bool equal_velocities() const noexcept;
  Junction swapped() const { return {right, left}; }

  friend bool operator==(const Junction&, const Junction&) = default;
};

Junction make_junction(double ml, double mr, double vl, double vr);

enum class Side { Left, Right };
enum class EigSign { Plus, Minus };

/// Point (alpha, a0, a1, a3) on the a2 = 0 slice of U(2) = e^{i alpha} SU(2).
///
/// alpha is reduced to [0, pi): (alpha + pi, a) and (alpha, -a) give the same U.
class ExtensionParams {
 public:
  static constexpr double kSphereTolerance = 1e-12;

  ExtensionParams(double alpha, double a0, double a1, double a3);

  double alpha() const noexcept { return alpha_; }
  double a0() const noexcept { return a0_; }
  double a1() const noexcept { return a1_; }
  double a3() const noexcept { return a3_; }

 private:
  double alpha_, a0_, a1_, a3_;
};

class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit UnitaryMatrix(const Mat2& u);

  /// e^{i alpha} [[a0 - i a3, -a2 - i a1], [a2 - i a1, a0 + i a3]]; requires |a| = 1.
  static UnitaryMatrix from_chart(double alpha, double a0, double a1, double a2, double a3);
  static UnitaryMatrix from_extension(const ExtensionParams& ext);

  const Mat2& matrix() const noexcept { return u_; }
  cplx operator()(int row, int col) const { return u_(row, col); }

 private:
  Mat2 u_;
};

/// psi(0+) = T psi(0-), together with the media T was built for.
struct MatchingMatrix {
  Mat2 entries;
  Junction junction;

  cplx operator()(int row, int col) const { return entries(row, col); }
  cplx det() const { return entries.determinant(); }
};

enum class Family { EquallyMixed, InvertedMixed, PureScalar, PureVector };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// A named point interaction with its strength (delta, lambda or a).
class NamedExtension {
 public:
  NamedExtension(Family family, double strength);

  Family family() const noexcept { return family_; }
  double strength() const noexcept { return strength_; }

  /// Whether `strength` obeys the family's sign convention.
  static bool strength_allowed(Family family, double strength) noexcept;

 private:
  Family family_;
  double strength_;
};

struct SpinorSample {
  cplx upper;
  cplx lower;
};

}  // namespace diracjump
