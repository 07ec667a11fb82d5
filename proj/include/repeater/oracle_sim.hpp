#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "repeater/gen1.hpp"
#include "repeater/gen3.hpp"
#include "repeater/types.hpp"

namespace qrep {

// Name recorded in dataset metadata for the sampling generator.
inline constexpr std::string_view kRngName = "splitmix64-counter";

// Trials are drawn in fixed-size chunks; chunk c always uses the stream
// derived from (seed, c), so estimates do not depend on the worker count.
inline constexpr std::uint64_t kTrialsPerChunk = 65536;

// Stateless counter-based generator: the i-th draw of a stream is a pure
// function of (key, i).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t next() noexcept;
    double uniform() noexcept;        // [0, 1)
    double uniform_open() noexcept;   // (0, 1]
    bool bernoulli(double p) noexcept { return uniform() < p; }
    // Number of attempts up to and including the first success.
    std::uint64_t geometric(double p) noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct QpcEstimate {
    DecodeProbs probs;
    DecodeProbs std_error;
    std::uint64_t trials = 0;
    std::uint64_t correct = 0, incorrect = 0, unknown = 0;
};

enum class DecodeOutcome { Correct, Incorrect, Unknown };

// Decoder rule applied to one sample. Index q = block * m + j; the encoded
// value is taken as 0 so a readout of 1 is a flip.
DecodeOutcome decode_sample(int n, int m, std::span<const std::uint8_t> arrived,
                            std::span<const std::uint8_t> flipped, Basis basis);

QpcEstimate mc_qpc_decode(int n, int m, double mu, double eps_q, Basis basis, std::uint64_t trials,
                          std::uint64_t seed, int threads = 1);

struct TimeEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Largest ladder the waiting-time sampler accepts.
inline constexpr int kOracleMaxNesting = 3;
inline constexpr int kOracleMaxRounds = 3;

// Samples the delivery time of one end-to-end pair. Elementary attempts take
// T0 each; a swap waits for both inputs and adds t0; a purification round
// adds t0 + 2^k T0 and on failure starts the round again with fresh inputs.
// timing.wait_factor is not used.
TimeEstimate mc_gen1_waiting_time(PurificationScheme scheme, const LadderTrace& trace,
                                  std::span<const int> M, const LadderTiming& timing,
                                  std::uint64_t trials, std::uint64_t seed, int threads = 1);

TimeEstimate mc_gen1_waiting_time(PurificationScheme scheme, int N, std::span<const int> M,
                                  const HardwareParams& params, double L_tot, std::uint64_t trials,
                                  std::uint64_t seed, int threads = 1);

}  // namespace qrep
