#pragma once

#include "diracjump/types.hpp"

namespace diracjump {

/// Normalized solution of H^dagger psi = +-i psi supported on one half-line, evaluated at x.
///
/// Right-side solutions live on x >= 0 and left-side ones on x <= 0; at x = 0 the one-sided
/// limit from the supported side is returned, elsewhere off-support the zero spinor.
SpinorSample deficiency_spinor(Side side, EigSign sign, const Medium& medium, double x);

/// Matching matrix of the extension selected by U, assembled from the deficiency basis
/// psi_1 = psi_+^(+) + U11 psi_-^(+) + U21 psi_-^(-), psi_2 = psi_+^(-) + U12 psi_-^(+) + U22 psi_-^(-).
///
/// Each psi_k contributes the boundary-form row (conj psi_kb, conj psi_ka) at 0- and 0+, and
/// T = (v_l / v_r) M(0+)^{-1} M(0-).  Throws SingularBoundaryMatrix when cond M(0+) > 1e12.
MatchingMatrix matching_from_unitary(const UnitaryMatrix& u, const Junction& junction);

/// Closed-form matching matrix on the a2 = 0 slice; det T = v_l / v_r.
/// Throws DegenerateExtension when |a1| < 1e-12.
MatchingMatrix matching_closed_form(const ExtensionParams& ext, const Junction& junction);

/// Matching matrix of a named point interaction.  Requires v_l == v_r (VelocityMismatch).
MatchingMatrix named_matrix(const NamedExtension& named, const Junction& junction);

/// Equally mixed strength delta < 0 mapped onto the extension chart:
/// a0 = -cos alpha, a1 = sin alpha, a3 = 0, cot alpha = -(delta + (m_l + m_r) v^3) / (2 v).
ExtensionParams equally_mixed_extension(double delta, const Junction& junction);

/// Inverse of matching_closed_form: recovers (alpha, a0, a1, a3) from a matching matrix with
/// real diagonal, imaginary off-diagonal and det T = v_l / v_r.
ExtensionParams extension_from_matching(const MatchingMatrix& t);

/// max |T^dagger sigma_x T - (v_l / v_r) sigma_x|, zero for a current-conserving T.
double current_defect(const MatchingMatrix& t);

}  // namespace diracjump
