#pragma once

#include "repeater/types.hpp"

namespace qrep {

enum class Basis { X, Z };

// Outcome probabilities of one logical measurement after majority voting.
struct DecodeProbs {
    double p_correct = 0.0;
    double p_incorrect = 0.0;
    double p_unknown = 0.0;
};

// Per-qubit transmission to the next station: eta_c exp(-L0/L_att).
double arrival_prob(const HardwareParams& params, double L0);

// Below this per-qubit transmission loss cannot be corrected deterministically.
inline constexpr double kMinArrivalProb = 0.5;

// Unconditional per-sent-qubit X/Z error weight (eps_d + eps_g/2 + xi) mu.
double gen3_error_rate(const HardwareParams& params, double mu);

// Readout flip probability of a qubit that did arrive: eps_d + eps_g/2 + xi.
double conditional_flip_prob(const HardwareParams& params);

// Exact outcome probabilities of the (n,m) parity-code decoder.
//
// Z basis: a sub-block needs at least one arrived qubit and takes the
// majority of its readouts (a tie is unknown); the logical value is the
// parity of the n sub-block values. X basis: a sub-block contributes only if
// all m qubits arrived, with its parity flipped by an odd number of readout
// errors; the logical value is the majority over contributing sub-blocks,
// unknown when none contribute or on a tie.
DecodeProbs qpc_decode_probs(int n, int m, double mu, double eps_q, Basis basis);

CostResult evaluate_gen3(const Gen3Config& config, const HardwareParams& params, double L_tot);

}  // namespace qrep
