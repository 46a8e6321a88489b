#pragma once

#include <optional>
#include <span>
#include <vector>

#include "diracjump/kernels.hpp"
#include "diracjump/types.hpp"

namespace diracjump {

enum class Direction { FromLeft, FromRight };

struct ScatteringAmplitudes {
  cplx r;
  cplx t;
  Direction direction;
  double energy;
};

struct EnergyWindow {
  enum class Kind { Scattering, Bound };
  double emin;
  double emax;
  Kind kind;
};

/// Default relative exclusion of the band edge, E > max_gap * (1 + margin).
inline constexpr double kDefaultEdgeMargin = 1e-9;

/// Throws BelowThreshold unless E lies above both gaps by the edge margin.
void require_scattering_energy(const Junction& junction, double energy,
                               double edge_margin = kDefaultEdgeMargin);

/// Checks a window against the invariants of its kind; throws InvalidArgument / BelowThreshold.
void validate_window(const EnergyWindow& window, const Junction& junction);

/// Numerator, denominator and transmission factor of the closed-form amplitudes for left
/// incidence: r = N / D, t = 2 sqrt(v_l / v_r) a1 Tf / D.
struct ClosedFormTerms {
  cplx numerator;
  cplx denominator;
  double transmission_factor;
};

ClosedFormTerms closed_form_terms(const ExtensionParams& ext, const Junction& junction, double energy);

/// Left-incidence amplitudes evaluated from the closed-form N, D, Tf.
ScatteringAmplitudes amplitudes_closed(const ExtensionParams& ext, const Junction& junction,
                                       double energy);

/// Amplitudes from the 2x2 plane-wave matching system psi(0+) = T psi(0-).
/// Throws SingularSystem when the system is rank deficient at this energy.
ScatteringAmplitudes amplitudes_solve(const MatchingMatrix& t, double energy, Direction direction);

/// Determinant of the matching system solved by amplitudes_solve.  Below threshold the
/// wavenumbers are continued to the decaying branch, so its zeros in the gap are the poles.
cplx system_determinant(const MatchingMatrix& t, double energy, Direction direction);

/// Flux-weighted transmission, so that |r|^2 + T_flux = 1.
double flux_transmission(const Junction& junction, double energy, const ScatteringAmplitudes& amps);

struct ReflectionZeros {
  /// r vanishes on the whole window (free propagation); `energies` is then empty.
  bool identically_transparent = false;
  std::vector<double> energies;
};

ReflectionZeros find_reflection_zeros(const MatchingMatrix& t, const EnergyWindow& window,
                                      std::size_t grid_n);
ReflectionZeros find_reflection_zeros(const ExtensionParams& ext, const Junction& junction,
                                      const EnergyWindow& window, std::size_t grid_n);
ReflectionZeros find_reflection_zeros(const NamedExtension& named, const Junction& junction,
                                      const EnergyWindow& window, std::size_t grid_n);

/// Band-edge energies {+-m_l v_l^2, +-m_r v_r^2}, deduplicated and sorted.
std::vector<double> zero_momentum_resonances(const Junction& junction);

/// Energy-dependent lower bound on the pure-vector transmission coefficient.
struct TransmissionLowerBound {
  double ml;
  double mr;
  double v;
  double operator()(double energy) const;
};

struct HighEnergyTransmission {
  std::optional<double> asymptote;                   // confining families
  std::optional<TransmissionLowerBound> lower_bound;  // pure vector
  bool never_vanishes = false;
};

HighEnergyTransmission high_energy_transmission(const NamedExtension& named, const Junction& junction);

/// Column data of an energy sweep, one entry per energy.
struct ScatteringSweep {
  std::vector<double> energy, re_r, im_r, abs_r2, re_t, im_t, t_flux, unitarity_defect;
};

/// Amplitudes over an energy list via the batch kernels; chunks may run on several threads and
/// the result is identical to a single-threaded run.
ScatteringSweep scattering_sweep(const MatchingMatrix& t, std::span<const double> energies,
                                 Direction direction,
                                 kernels::Backend backend = kernels::Backend::Auto,
                                 unsigned threads = 1);

}  // namespace diracjump
