#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "repeater/types.hpp"

namespace qrep {

struct PurificationRound {
    double probability;
    BellDiagonalState state;
};

// One nesting level: the pair entering the level (elementary pair at level 0,
// swapped pair above) followed by its purification rounds.
struct LevelTrace {
    BellDiagonalState input;
    std::vector<PurificationRound> rounds;

    const BellDiagonalState& output() const noexcept
    {
        return rounds.empty() ? input : rounds.back().state;
    }
};

struct LadderTrace {
    std::vector<LevelTrace> levels;  // index = nesting level 0..N
    BellDiagonalState final_state = BellDiagonalState::perfect();

    int nesting_levels() const noexcept { return static_cast<int>(levels.size()) - 1; }
    // Success probability of purification round `round` (1-based) at `level`.
    double prob(int round, int level) const { return levels.at(level).rounds.at(round - 1).probability; }
};

// Nested swap-and-purify ladder. Level 0 purifies M[0] times starting from
// the elementary pair; each level k >= 1 swaps two level-(k-1) outputs and
// purifies M[k] times. Deutsch pairs two identical copies, Dur pumps with
// a fresh copy of the level's input pair.
LadderTrace ladder(PurificationScheme scheme, int N, std::span<const int> M,
                   const HardwareParams& params);

struct LadderTiming {
    double P0;  // elementary generation success per attempt
    double T0;  // neighbour two-way signalling time, s
    double t0;  // gate time, s
    // Expected wait for two independently produced inputs, in units of one
    // input's expected wait. 3/2 is exact for exponential waits.
    double wait_factor = 1.5;
};

// Expected time to deliver one end-to-end pair from the nested recursion.
// Returns +inf when a success probability underflows to zero.
double time_per_bit(PurificationScheme scheme, const LadderTrace& trace, std::span<const int> M,
                    const LadderTiming& timing);

// Same, with P0 from heg_success_prob at L0 = L_tot / 2^N and T0 = L0 / c.
double time_per_bit(PurificationScheme scheme, int N, std::span<const int> M,
                    const HardwareParams& params, double L_tot);

LadderTiming ladder_timing(int N, const HardwareParams& params, double L_tot);

// Memory qubits at half a station: 2^(sum M) for Deutsch, N + 2 - #{M_i = 0}
// for Dur.
std::uint64_t qubits_per_half_station(PurificationScheme scheme, std::span<const int> M);

CostResult evaluate_gen1(const Gen1Config& config, const HardwareParams& params, double L_tot);

}  // namespace qrep
