#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "diracjump/kernels.hpp"
#include "diracjump/types.hpp"

namespace diracjump {

struct BoundState {
  double energy;
  std::variant<NamedExtension, ExtensionParams> source;
  double residual;  // |spectral equation| at the root
  double scale;     // largest additive term of the equation at the root
};

inline constexpr std::size_t kDefaultBoundGrid = 512;

/// The family's spectral equation written as sqrt-product coefficients (see kernels.hpp).
kernels::GapResidualCoefficients spectral_coefficients(const NamedExtension& named,
                                                       const Junction& junction);

/// Left-hand side of the family's spectral equation at E; roots are bound-state energies.
/// Throws OutsideWindow unless |E| < min(m_l v^2, m_r v^2), VelocityMismatch unless v_l == v_r.
double spectral_residual(const NamedExtension& named, const Junction& junction, double energy);

/// Magnitude of the largest additive term of the spectral equation at E.
double spectral_term_scale(const NamedExtension& named, const Junction& junction, double energy);

/// All bound states of a named extension, ascending.  Empty when the gap window is empty.
std::vector<BoundState> find_bound_states(const NamedExtension& named, const Junction& junction,
                                          std::size_t grid_n = kDefaultBoundGrid,
                                          kernels::Backend backend = kernels::Backend::Auto);

/// Closed-form bound-state energies without a mass jump (m_l = m_r = m, v_l = v_r = v).
std::vector<double> equal_mass_energy(const NamedExtension& named, double m, double v);

/// Pole denominator D(E) of the closed-form amplitudes continued into the gap with
/// sqrt(E - m v^2) -> i sqrt(m v^2 - E).  Purely imaginary inside the gap.
cplx general_bound_residual(const ExtensionParams& ext, const Junction& junction, double energy);

/// Bound states of an arbitrary extension: roots of general_bound_residual.
std::vector<BoundState> find_bound_states(const ExtensionParams& ext, const Junction& junction,
                                          std::size_t grid_n = kDefaultBoundGrid);

struct SweepTable {
  Family family;
  double comparison_mass;
  std::vector<double> strengths;
  std::vector<std::vector<double>> roots;       // with the mass jump
  std::vector<std::vector<double>> equal_mass;  // closed form at comparison_mass
};

struct StrengthRange {
  double lo;
  double hi;
};

/// Bound states and equal-mass comparison energies on a uniform strength grid.
/// comparison_mass defaults to the left mass.
SweepTable sweep_strength(Family family, const Junction& junction, StrengthRange range,
                          std::size_t n, std::optional<double> comparison_mass = std::nullopt,
                          std::size_t grid_n = kDefaultBoundGrid, unsigned threads = 1);

struct CurveCrossing {
  double strength;
  double energy;
};

/// Strengths where a mass-jump root meets the matching equal-mass curve, refined by bisection.
std::vector<CurveCrossing> locate_crossings(const SweepTable& table, const Junction& junction,
                                            std::size_t grid_n = kDefaultBoundGrid);

}  // namespace diracjump
