#pragma once

#include "repeater/types.hpp"

namespace qrep {

// Success probability of one heralded generation attempt with two-photon
// detection over spacing L0 (km): eta_c^2 exp(-L0/L_att) / 2.
double heg_success_prob(const HardwareParams& params, double L0);

// Largest gate error for which the elementary-pair fidelity model applies.
inline constexpr double kElementaryPairMaxGateError = 0.04;

// Werner pair at the purification-limited fidelity 1 - 5/4 eps_g.
// Throws InvalidInput when eps_g exceeds kElementaryPairMaxGateError.
BellDiagonalState elementary_pair_state(const HardwareParams& params);

struct PurifyOutcome {
    double probability;
    BellDiagonalState state;
};

// One round of recurrence purification with noisy CNOTs (eps_g) and noisy
// measurements (xi). For entanglement pumping rho2 is the auxiliary pair.
PurifyOutcome purify(const BellDiagonalState& rho1, const BellDiagonalState& rho2,
                     const HardwareParams& params);

// Fixed point of repeated symmetric purification, starting from a Werner
// pair of fidelity 0.9. Requires eps_g <= 0.01.
BellDiagonalState deutsch_fixed_point(const HardwareParams& params, double tol = 1e-15);

// Deterministic entanglement swapping of two pairs.
BellDiagonalState swap(const BellDiagonalState& rho1, const BellDiagonalState& rho2,
                       const HardwareParams& params);

struct Qber {
    double x;  // phase-flip weight b + d
    double z;  // bit-flip weight c + d
    double average() const noexcept { return 0.5 * (x + z); }
};

Qber qber_from_state(const BellDiagonalState& rho) noexcept;

}  // namespace qrep
