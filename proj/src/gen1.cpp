#include "repeater/gen1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "repeater/keyrate.hpp"
#include "repeater/pair_ops.hpp"
#include "repeater/validate.hpp"

namespace qrep {

namespace {

void check_shape(int N, std::span<const int> M)
{
    if (N < 1) throw InvalidInput("gen1 N must be >= 1");
    if (M.size() != static_cast<std::size_t>(N) + 1)
        throw InvalidInput("gen1 M must have N+1 entries");
    for (int m : M) {
        if (m < 0) throw InvalidInput("gen1 M_i must be >= 0");
    }
}

// Preparation (A) and purification-overhead (B) terms of one level, B in
// units of T0.
struct LevelTerms {
    double A = 1.0;
    double B = 0.0;
};

LevelTerms level_terms(PurificationScheme scheme, const LadderTrace& trace, int level, int rounds,
                       const LadderTiming& timing)
{
    // Inverse success products over the last y+1 rounds, y = 0..M-1.
    double inv_all = 1.0;
    double sum_plain = 0.0;
    double sum_weighted = 0.0;
    for (int y = 0; y < rounds; ++y) {
        inv_all /= trace.prob(rounds - y, level);
        sum_plain += inv_all;
        sum_weighted += std::pow(timing.wait_factor, y) * inv_all;
    }
    const double per_round = timing.t0 / timing.T0 + std::ldexp(1.0, level);

    LevelTerms terms;
    if (scheme == PurificationScheme::Deutsch) {
        terms.A = std::pow(timing.wait_factor, rounds) * inv_all;
        terms.B = per_round * sum_weighted;
    } else {
        terms.A = inv_all + sum_plain;
        terms.B = per_round * sum_plain;
    }
    return terms;
}

}  // namespace

LadderTrace ladder(PurificationScheme scheme, int N, std::span<const int> M,
                   const HardwareParams& params)
{
    check_shape(N, M);
    LadderTrace trace;
    trace.levels.reserve(N + 1);

    auto current = elementary_pair_state(params);
    for (int level = 0; level <= N; ++level) {
        if (level > 0) current = swap(current, current, params);
        LevelTrace lt{current, {}};
        const auto auxiliary = current;
        for (int r = 0; r < M[level]; ++r) {
            const auto& partner = (scheme == PurificationScheme::Deutsch) ? current : auxiliary;
            auto [p, out] = purify(current, partner, params);
            current = out;
            lt.rounds.push_back({p, current});
        }
        trace.levels.push_back(std::move(lt));
    }
    trace.final_state = current;
    return trace;
}

double time_per_bit(PurificationScheme scheme, const LadderTrace& trace, std::span<const int> M,
                    const LadderTiming& timing)
{
    const int N = trace.nesting_levels();
    check_shape(N, M);
    for (const auto& level : trace.levels) {
        for (const auto& round : level.rounds) {
            if (!(round.probability > 0.0)) return kInfinity;
        }
    }
    if (!(timing.P0 > 0.0)) return kInfinity;

    std::vector<LevelTerms> terms;
    terms.reserve(N + 1);
    for (int i = 0; i <= N; ++i) terms.push_back(level_terms(scheme, trace, i, M[i], timing));

    // prod_A(j) = A[j] * A[j+1] * ... * A[N]
    std::vector<double> prod_A(N + 2, 1.0);
    for (int j = N; j >= 0; --j) prod_A[j] = prod_A[j + 1] * terms[j].A;

    const double w = timing.wait_factor;
    double total = std::pow(w, N) * prod_A[1] * (terms[0].A / timing.P0 + terms[0].B);
    double gate = 0.0;
    for (int y = 1; y <= N; ++y) {
        total += std::pow(w, N - y) * terms[y].B * prod_A[y + 1];
        gate += std::pow(w, N - y) * prod_A[y];
    }
    total += timing.t0 / timing.T0 * gate;
    return timing.T0 * total;
}

LadderTiming ladder_timing(int N, const HardwareParams& params, double L_tot)
{
    const double L0 = L_tot / std::ldexp(1.0, N);
    return {heg_success_prob(params, L0), L0 / params.c_fiber, params.t0};
}

double time_per_bit(PurificationScheme scheme, int N, std::span<const int> M,
                    const HardwareParams& params, double L_tot)
{
    const auto trace = ladder(scheme, N, M, params);
    return time_per_bit(scheme, trace, M, ladder_timing(N, params, L_tot));
}

std::uint64_t qubits_per_half_station(PurificationScheme scheme, std::span<const int> M)
{
    if (scheme == PurificationScheme::Deutsch) {
        const int total = std::accumulate(M.begin(), M.end(), 0);
        if (total >= 63) throw InvalidInput("gen1 total purification rounds too large");
        return std::uint64_t{1} << total;
    }
    const auto zero_levels = std::count(M.begin(), M.end(), 0);
    const auto N = static_cast<std::int64_t>(M.size()) - 1;
    return static_cast<std::uint64_t>(N + 2 - zero_levels);
}

CostResult evaluate_gen1(const Gen1Config& config, const HardwareParams& params, double L_tot)
{
    require_valid(params, config, L_tot);

    const auto trace = ladder(config.scheme, config.N, config.M, params);
    const double q = qber_from_state(trace.final_state).average();
    const double fraction = secure_fraction(q);
    const std::uint64_t half = qubits_per_half_station(config.scheme, config.M);
    const std::uint64_t segments = std::uint64_t{1} << config.N;

    double rate = 0.0;
    if (fraction > 0.0) {
        const double T = time_per_bit(config.scheme, trace, config.M,
                                      ladder_timing(config.N, params, L_tot));
        rate = fraction / T;
    }
    return CostResult::from_rate(rate, 2 * half, segments, L_tot, q);
}

}  // namespace qrep
