#include "repeater/oracle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "repeater/optimizer.hpp"

namespace qrep {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t chunk_count(std::uint64_t trials)
{
    return (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

std::uint64_t chunk_size(std::uint64_t trials, std::uint64_t chunk)
{
    return std::min(kTrialsPerChunk, trials - chunk * kTrialsPerChunk);
}

class LadderSampler {
public:
    LadderSampler(PurificationScheme scheme, const LadderTrace& trace, std::span<const int> M,
                  const LadderTiming& timing, CounterRng& rng)
        : scheme_(scheme), trace_(trace), M_(M), timing_(timing), rng_(rng)
    {
    }

    double delivery() { return output(trace_.nesting_levels()); }

private:
    double input(int level)
    {
        if (level == 0) return timing_.T0 * static_cast<double>(rng_.geometric(timing_.P0));
        const double left = output(level - 1);
        const double right = output(level - 1);
        return std::max(left, right) + timing_.t0;
    }

    double output(int level) { return round(level, M_[level]); }

    double round(int level, int r)
    {
        if (r == 0) return input(level);
        const double step = timing_.t0 + std::ldexp(timing_.T0, level);
        const double p = trace_.prob(r, level);
        double elapsed = 0.0;
        while (true) {
            if (scheme_ == PurificationScheme::Deutsch) {
                const double first = round(level, r - 1);
                const double second = round(level, r - 1);
                elapsed += std::max(first, second);
            } else {
                elapsed += round(level, r - 1);
                elapsed += input(level);
            }
            elapsed += step;
            if (rng_.bernoulli(p)) return elapsed;
        }
    }

    PurificationScheme scheme_;
    const LadderTrace& trace_;
    std::span<const int> M_;
    const LadderTiming& timing_;
    CounterRng& rng_;
};

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(seed ^ mix64(stream * kGolden + 0x632BE59BD9B4E019ULL)))
{
}

std::uint64_t CounterRng::next() noexcept
{
    return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() noexcept
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open() noexcept
{
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t CounterRng::geometric(double p) noexcept
{
    if (p >= 1.0) return 1;
    const double k = std::ceil(std::log(uniform_open()) / std::log1p(-p));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

DecodeOutcome decode_sample(int n, int m, std::span<const std::uint8_t> arrived,
                            std::span<const std::uint8_t> flipped, Basis basis)
{
    if (basis == Basis::Z) {
        bool parity = false;
        for (int block = 0; block < n; ++block) {
            int ones = 0, zeros = 0;
            for (int j = 0; j < m; ++j) {
                const auto q = static_cast<std::size_t>(block * m + j);
                if (!arrived[q]) continue;
                (flipped[q] ? ones : zeros) += 1;
            }
            if (ones == zeros) return DecodeOutcome::Unknown;
            parity ^= ones > zeros;
        }
        return parity ? DecodeOutcome::Incorrect : DecodeOutcome::Correct;
    }

    int ones = 0, zeros = 0;
    for (int block = 0; block < n; ++block) {
        bool complete = true, parity = false;
        for (int j = 0; j < m; ++j) {
            const auto q = static_cast<std::size_t>(block * m + j);
            complete = complete && arrived[q];
            parity ^= flipped[q];
        }
        if (!complete) continue;
        (parity ? ones : zeros) += 1;
    }
    if (ones == zeros) return DecodeOutcome::Unknown;
    return ones > zeros ? DecodeOutcome::Incorrect : DecodeOutcome::Correct;
}

QpcEstimate mc_qpc_decode(int n, int m, double mu, double eps_q, Basis basis, std::uint64_t trials,
                          std::uint64_t seed, int threads)
{
    if (n < 1 || m < 1) throw InvalidInput("qpc n and m must be >= 1");
    if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidInput("mu out of [0,1]");
    if (!(eps_q >= 0.0 && eps_q <= 1.0)) throw InvalidInput("eps_q out of [0,1]");
    if (trials < 1) throw InvalidInput("trials must be >= 1");

    struct Tally {
        std::uint64_t correct = 0, incorrect = 0, unknown = 0;
    };
    const auto chunks = chunk_count(trials);
    std::vector<Tally> tallies(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        CounterRng rng(seed, c);
        const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
        std::vector<std::uint8_t> arrived(size), flipped(size);
        Tally& t = tallies[c];
        for (std::uint64_t i = 0; i < chunk_size(trials, c); ++i) {
            for (std::size_t q = 0; q < size; ++q) {
                arrived[q] = rng.bernoulli(mu);
                flipped[q] = rng.bernoulli(eps_q);
            }
            switch (decode_sample(n, m, arrived, flipped, basis)) {
            case DecodeOutcome::Correct: ++t.correct; break;
            case DecodeOutcome::Incorrect: ++t.incorrect; break;
            case DecodeOutcome::Unknown: ++t.unknown; break;
            }
        }
    });

    QpcEstimate est;
    est.trials = trials;
    for (const auto& t : tallies) {
        est.correct += t.correct;
        est.incorrect += t.incorrect;
        est.unknown += t.unknown;
    }
    const auto total = static_cast<double>(trials);
    auto fill = [&](std::uint64_t count, double& p, double& se) {
        p = static_cast<double>(count) / total;
        se = std::sqrt(p * (1.0 - p) / total);
    };
    fill(est.correct, est.probs.p_correct, est.std_error.p_correct);
    fill(est.incorrect, est.probs.p_incorrect, est.std_error.p_incorrect);
    fill(est.unknown, est.probs.p_unknown, est.std_error.p_unknown);
    return est;
}

TimeEstimate mc_gen1_waiting_time(PurificationScheme scheme, const LadderTrace& trace,
                                  std::span<const int> M, const LadderTiming& timing,
                                  std::uint64_t trials, std::uint64_t seed, int threads)
{
    const int N = trace.nesting_levels();
    if (N < 1 || N > kOracleMaxNesting) throw InvalidInput("waiting-time oracle needs 1 <= N <= 3");
    if (M.size() != static_cast<std::size_t>(N) + 1) throw InvalidInput("gen1 M must have N+1 entries");
    for (int i = 0; i <= N; ++i) {
        if (M[i] < 0) throw InvalidInput("gen1 M_i must be >= 0");
        if (trace.levels[i].rounds.size() < static_cast<std::size_t>(M[i]))
            throw InvalidInput("ladder trace has fewer rounds than M");
        for (int r = 1; r <= M[i]; ++r) {
            if (!(trace.prob(r, i) > 0.0)) throw InvalidInput("purification success probability is zero");
        }
    }
    if (std::accumulate(M.begin(), M.end(), 0) > kOracleMaxRounds)
        throw InvalidInput("waiting-time oracle needs sum of M_i <= 3");
    if (!(timing.P0 > 0.0 && timing.P0 <= 1.0)) throw InvalidInput("P0 out of (0,1]");
    if (!(timing.T0 >= 0.0) || !(timing.t0 >= 0.0)) throw InvalidInput("negative timing");
    if (trials < 2) throw InvalidInput("trials must be >= 2");

    // Welford per chunk, merged in chunk order; identical samples give an
    // exact mean and zero spread.
    struct Moments {
        double count = 0.0, mean = 0.0, m2 = 0.0;
    };
    const auto chunks = chunk_count(trials);
    std::vector<Moments> moments(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        CounterRng rng(seed, c);
        LadderSampler sampler(scheme, trace, M, timing, rng);
        Moments& mo = moments[c];
        for (std::uint64_t i = 0; i < chunk_size(trials, c); ++i) {
            const double t = sampler.delivery();
            mo.count += 1.0;
            const double delta = t - mo.mean;
            mo.mean += delta / mo.count;
            mo.m2 += delta * (t - mo.mean);
        }
    });

    Moments total;
    for (const auto& mo : moments) {
        const double count = total.count + mo.count;
        const double delta = mo.mean - total.mean;
        total.mean += delta * (mo.count / count);
        total.m2 += mo.m2 + delta * delta * total.count * mo.count / count;
        total.count = count;
    }
    TimeEstimate est;
    est.trials = trials;
    est.mean = total.mean;
    est.std_error = std::sqrt(total.m2 / (total.count - 1.0) / total.count);
    return est;
}

TimeEstimate mc_gen1_waiting_time(PurificationScheme scheme, int N, std::span<const int> M,
                                  const HardwareParams& params, double L_tot, std::uint64_t trials,
                                  std::uint64_t seed, int threads)
{
    if (N < 1 || N > kOracleMaxNesting) throw InvalidInput("waiting-time oracle needs 1 <= N <= 3");
    if (M.size() != static_cast<std::size_t>(N) + 1) throw InvalidInput("gen1 M must have N+1 entries");
    if (std::accumulate(M.begin(), M.end(), 0) > kOracleMaxRounds)
        throw InvalidInput("waiting-time oracle needs sum of M_i <= 3");
    const auto trace = ladder(scheme, N, M, params);
    return mc_gen1_waiting_time(scheme, trace, M, ladder_timing(N, params, L_tot), trials, seed,
                                threads);
}

}  // namespace qrep
