#include "repeater/cli/suites.hpp"

#include <cmath>
#include <cstdio>

#include "repeater/gen1.hpp"
#include "repeater/gen3.hpp"
#include "repeater/oracle_sim.hpp"

namespace qrep::cli {

namespace {

constexpr double kQpcMu = 0.95;
constexpr double kQpcEps = 0.01;
constexpr double kSigmas = 3.0;
constexpr double kTimeBand = 0.15;

std::string format(const char* fmt, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

struct TimeCase {
    const char* name;
    PurificationScheme scheme;
    std::vector<int> M;
    HardwareParams params;
    double L_tot;
};

HardwareParams perfect_gates(double t0)
{
    HardwareParams p;
    p.eps_g = 0.0;
    p.xi = 0.0;
    p.t0 = t0;
    return p;
}

struct Comparison {
    double analytic;
    TimeEstimate sampled;
};

Comparison compare(const TimeCase& c, LadderTiming timing, std::uint64_t trials, std::uint64_t seed,
                   int threads)
{
    const int N = static_cast<int>(c.M.size()) - 1;
    const auto trace = ladder(c.scheme, N, c.M, c.params);
    return {time_per_bit(c.scheme, trace, c.M, timing),
            mc_gen1_waiting_time(c.scheme, trace, c.M, timing, trials, seed, threads)};
}

LadderTiming timing_for(const TimeCase& c)
{
    return ladder_timing(static_cast<int>(c.M.size()) - 1, c.params, c.L_tot);
}

}  // namespace

std::string_view status_name(CheckStatus status) noexcept
{
    switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Underpowered: return "UNDERPOWERED";
    case CheckStatus::Info: return "INFO";
    }
    return "?";
}

std::vector<Check> qpc_suite(std::uint64_t trials, std::uint64_t seed, int threads)
{
    std::vector<Check> out;
    const int cases[][2] = {{4, 4}, {7, 3}, {10, 5}};
    for (const auto& [n, m] : cases) {
        for (Basis basis : {Basis::Z, Basis::X}) {
            const auto exact = qpc_decode_probs(n, m, kQpcMu, kQpcEps, basis);
            const auto est = mc_qpc_decode(n, m, kQpcMu, kQpcEps, basis, trials, seed, threads);
            const double p[3] = {exact.p_correct, exact.p_incorrect, exact.p_unknown};
            const double q[3] = {est.probs.p_correct, est.probs.p_incorrect, est.probs.p_unknown};
            double worst = 0.0;
            bool ok = true;
            for (int i = 0; i < 3; ++i) {
                const double sigma = std::sqrt(p[i] * (1.0 - p[i]) / static_cast<double>(trials));
                const double diff = std::abs(p[i] - q[i]);
                if (sigma > 0.0) {
                    worst = std::max(worst, diff / sigma);
                    ok = ok && diff <= kSigmas * sigma;
                } else {
                    ok = ok && diff == 0.0;
                }
            }
            Check check;
            check.name = format("qpc n=%d m=%d basis=%s", n, m, basis == Basis::Z ? "Z" : "X");
            check.detail = format("exact=(%.6g,%.6g,%.6g) sampled=(%.6g,%.6g,%.6g) worst=%.2f sigma trials=%llu",
                                  p[0], p[1], p[2], q[0], q[1], q[2], worst,
                                  static_cast<unsigned long long>(trials));
            if (trials < kMinJudgedTrials)
                check.status = CheckStatus::Underpowered;
            else
                check.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            out.push_back(std::move(check));
        }
    }
    return out;
}

std::vector<Check> gen1_time_suite(std::uint64_t trials, std::uint64_t seed, int threads)
{
    std::vector<Check> out;
    const bool powered = trials >= kMinJudgedTrials;
    auto judged = [&](bool ok) {
        if (!powered) return CheckStatus::Underpowered;
        return ok ? CheckStatus::Pass : CheckStatus::Fail;
    };

    {
        const TimeCase c{"loss-only deutsch N=1 M=0-0", PurificationScheme::Deutsch, {0, 0},
                         perfect_gates(0.0), 40.0};
        const auto r = compare(c, timing_for(c), trials, seed, threads);
        const double rel = r.sampled.mean / r.analytic - 1.0;
        out.push_back({c.name, judged(std::abs(rel) <= kTimeBand),
                       format("analytic=%.6g s sampled=%.6g s se=%.3g rel=%+.4f band=%.2f",
                              r.analytic, r.sampled.mean, r.sampled.std_error, rel, kTimeBand)});
    }

    for (auto scheme : {PurificationScheme::Deutsch, PurificationScheme::Dur}) {
        const TimeCase c{"", scheme, {1, 0, 1}, perfect_gates(1e-6), 1000.0};
        auto timing = timing_for(c);
        timing.P0 = 1.0;
        timing.wait_factor = 1.0;
        const auto r = compare(c, timing, std::min<std::uint64_t>(trials, 10'000), seed, threads);
        const bool ok = r.sampled.std_error == 0.0 &&
                        std::abs(r.sampled.mean - r.analytic) <= 1e-12 * r.analytic;
        out.push_back({format("deterministic limit %s N=2 M=1-0-1",
                              std::string(scheme_name(scheme)).c_str()),
                       ok ? CheckStatus::Pass : CheckStatus::Fail,
                       format("analytic=%.17g s sampled=%.17g s se=%.3g", r.analytic, r.sampled.mean,
                              r.sampled.std_error)});
    }

    {
        const TimeCase c{"trial doubling deutsch N=2 M=0-0-0", PurificationScheme::Deutsch,
                         {0, 0, 0}, HardwareParams{}, 100.0};
        const auto once = compare(c, timing_for(c), trials, seed, threads);
        const auto twice = compare(c, timing_for(c), 2 * trials, seed, threads);
        const double ratio = once.sampled.std_error / twice.sampled.std_error;
        const double rel = twice.sampled.mean / twice.analytic - 1.0;
        const bool ok = std::abs(ratio / std::sqrt(2.0) - 1.0) <= 0.1 && std::abs(rel) <= kTimeBand;
        out.push_back({c.name, judged(ok),
                       format("analytic=%.6g s sampled=%.6g s rel=%+.4f se_ratio=%.4f (sqrt2=1.4142)",
                              twice.analytic, twice.sampled.mean, rel, ratio)});
    }

    const TimeCase purified[] = {
        {"purified deutsch N=1 M=1-1", PurificationScheme::Deutsch, {1, 1}, HardwareParams{}, 100.0},
        {"purified dur N=1 M=1-1", PurificationScheme::Dur, {1, 1}, HardwareParams{}, 100.0},
        {"purified deutsch N=2 M=1-0-1", PurificationScheme::Deutsch, {1, 0, 1}, HardwareParams{}, 100.0},
        {"purified dur N=2 M=1-1-1", PurificationScheme::Dur, {1, 1, 1}, HardwareParams{}, 100.0},
    };
    for (const auto& c : purified) {
        const auto r = compare(c, timing_for(c), trials, seed, threads);
        out.push_back({c.name, CheckStatus::Info,
                       format("analytic=%.6g s sampled=%.6g s se=%.3g rel=%+.4f", r.analytic,
                              r.sampled.mean, r.sampled.std_error, r.sampled.mean / r.analytic - 1.0)});
    }
    return out;
}

bool is_suite(std::string_view name) noexcept
{
    return name == "qpc" || name == "gen1-time" || name == "all";
}

bool suite_passed(const std::vector<Check>& checks) noexcept
{
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Fail) return false;
    }
    return true;
}

}  // namespace qrep::cli
