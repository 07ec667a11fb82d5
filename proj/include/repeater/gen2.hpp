#pragma once

#include <cstdint>

#include "repeater/types.hpp"

namespace qrep {

// Probability of exactly i heralded pairs after n0 rounds with M memories
// per half station, modelled as M * n0 independent attempts at success p.
double pair_count_prob(int i, int n0, int M, double p);

// Probability of at least k pairs under the same model.
double pair_count_at_least(int k, int n0, int M, double p);

// Average QBER of the chain obtained by swapping `segments` elementary pairs
// end to end (segments - 1 imperfect swaps).
double chain_qber(const HardwareParams& params, std::uint64_t segments);

CostResult evaluate_gen2_noenc(const Gen2NoEncConfig& config, const HardwareParams& params,
                               double L_tot);

struct CssDecodeProbs {
    double p_correct;
    double p_incorrect;
};

// Binomial tails for an [[N,1,2t+1]] CSS code with per-qubit error eps.
CssDecodeProbs css_decode_probs(const CssCode& code, double eps);

// Per-qubit X/Z error seen by encoded swapping, first order in the sources:
// eps_d + eps_g + 2 xi + 2/3 (1 - F0).
double gen2_error_rate(const HardwareParams& params, double F0);

// 1/2 [1 - bias^R]: basis error after R independent stations whose logical
// outcome is kept with bias = p_correct - p_incorrect.
double accumulated_qber(double bias, std::uint64_t R);

CostResult evaluate_gen2_enc(const Gen2EncConfig& config, const HardwareParams& params,
                             double L_tot);

}  // namespace qrep
