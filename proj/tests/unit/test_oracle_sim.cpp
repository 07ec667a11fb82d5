#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "repeater/gen1.hpp"
#include "repeater/gen3.hpp"
#include "repeater/oracle_sim.hpp"

using namespace qrep;

namespace {

HardwareParams perfect_gates(double t0)
{
    HardwareParams p;
    p.eps_g = 0.0;
    p.xi = 0.0;
    p.t0 = t0;
    return p;
}

void check_within(const QpcEstimate& mc, const DecodeProbs& exact, double sigmas)
{
    const double n = static_cast<double>(mc.trials);
    for (auto [got, want] : {std::pair{mc.probs.p_correct, exact.p_correct},
                             std::pair{mc.probs.p_incorrect, exact.p_incorrect},
                             std::pair{mc.probs.p_unknown, exact.p_unknown}}) {
        const double sd = std::sqrt(want * (1 - want) / n);
        CHECK(std::abs(got - want) <= sigmas * sd + 1e-15);
    }
}

}  // namespace

TEST_SUITE("oracle_sim") {

TEST_CASE("generator")
{
    CounterRng a(5, 0), b(5, 0), c(5, 1), d(6, 0);
    const auto first = a.next();
    CHECK(first == b.next());
    CHECK(first != c.next());
    CHECK(first != d.next());
    CounterRng r(1, 2);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        CHECK_FALSE((u < 0.0 || u >= 1.0));
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CounterRng g(3, 0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += static_cast<double>(g.geometric(0.25));
    CHECK(total / n == doctest::Approx(4.0).epsilon(0.02));
    CHECK(g.geometric(1.0) == 1u);
    CHECK(g.uniform_open() > 0.0);
}

TEST_CASE("decode_sample applies the block rules")
{
    const std::vector<std::uint8_t> all{1, 1, 1, 1}, none{0, 0, 0, 0};
    CHECK(decode_sample(2, 2, all, none, Basis::Z) == DecodeOutcome::Correct);
    CHECK(decode_sample(2, 2, all, none, Basis::X) == DecodeOutcome::Correct);
    const std::vector<std::uint8_t> lost_block{0, 0, 1, 1};
    CHECK(decode_sample(2, 2, lost_block, none, Basis::Z) == DecodeOutcome::Unknown);
    const std::vector<std::uint8_t> one_flip{1, 0, 0, 0};
    CHECK(decode_sample(2, 2, all, one_flip, Basis::Z) == DecodeOutcome::Unknown);
    CHECK(decode_sample(2, 2, all, one_flip, Basis::X) == DecodeOutcome::Unknown);
    const std::vector<std::uint8_t> a3(9, 1), f3{1, 1, 0, 0, 0, 0, 0, 0, 0};
    CHECK(decode_sample(3, 3, a3, f3, Basis::Z) == DecodeOutcome::Incorrect);
    CHECK(decode_sample(3, 3, a3, f3, Basis::X) == DecodeOutcome::Correct);
}

TEST_CASE("decode_sample agrees with the enumeration oracle pattern by pattern")
{
    for (auto basis : {Basis::X, Basis::Z}) {
        const char b = basis == Basis::Z ? 'Z' : 'X';
        const int n = 2, m = 3, q = n * m;
        DecodeProbs tally;
        const double mu = 0.7, eps = 0.2;
        for (unsigned arrive = 0; arrive < (1u << q); ++arrive) {
            for (unsigned flip = 0; flip < (1u << q); ++flip) {
                std::vector<std::uint8_t> a(q), f(q);
                double w = 1.0;
                for (int i = 0; i < q; ++i) {
                    a[i] = arrive >> i & 1u;
                    f[i] = flip >> i & 1u;
                    w *= (a[i] ? mu : 1 - mu) * (f[i] ? eps : 1 - eps);
                }
                switch (decode_sample(n, m, a, f, basis)) {
                case DecodeOutcome::Correct: tally.p_correct += w; break;
                case DecodeOutcome::Incorrect: tally.p_incorrect += w; break;
                case DecodeOutcome::Unknown: tally.p_unknown += w; break;
                }
            }
        }
        const auto o = oracle::qpc_enumerate(n, m, mu, eps, b);
        CHECK(tally.p_correct == doctest::Approx(o.correct).epsilon(1e-12));
        CHECK(tally.p_incorrect == doctest::Approx(o.incorrect).epsilon(1e-12));
        CHECK(tally.p_unknown == doctest::Approx(o.unknown).epsilon(1e-12));
    }
}

TEST_CASE("perfect channel is sampled exactly")
{
    for (auto basis : {Basis::X, Basis::Z}) {
        const auto mc = mc_qpc_decode(4, 4, 1.0, 0.0, basis, 5000, 9);
        CHECK(mc.correct == 5000u);
        CHECK(mc.probs.p_correct == 1.0);
        CHECK(mc.probs.p_incorrect == 0.0);
        CHECK(mc.probs.p_unknown == 0.0);
    }
}

TEST_CASE("(3,3) decoder within 3 sigma at 1e6 trials")
{
    for (auto basis : {Basis::X, Basis::Z}) {
        const auto mc = mc_qpc_decode(3, 3, 0.95, 0.01, basis, 1'000'000, 2024, 2);
        CHECK(mc.trials == 1'000'000u);
        CHECK(mc.correct + mc.incorrect + mc.unknown == mc.trials);
        check_within(mc, qpc_decode_probs(3, 3, 0.95, 0.01, basis), 3.0);
    }
}

TEST_CASE("sampling is reproducible and independent of the worker count")
{
    const auto a = mc_qpc_decode(4, 4, 0.9, 0.02, Basis::Z, 200'000, 77, 1);
    const auto b = mc_qpc_decode(4, 4, 0.9, 0.02, Basis::Z, 200'000, 77, 3);
    const auto c = mc_qpc_decode(4, 4, 0.9, 0.02, Basis::Z, 200'000, 78, 1);
    CHECK(a.correct == b.correct);
    CHECK(a.incorrect == b.incorrect);
    CHECK(a.unknown == b.unknown);
    CHECK(a.correct != c.correct);

    const std::vector<int> M{1, 0, 1};
    const auto t1 = mc_gen1_waiting_time(PurificationScheme::Deutsch, 2, M, HardwareParams{}, 200.0, 100'000, 5, 1);
    const auto t4 = mc_gen1_waiting_time(PurificationScheme::Deutsch, 2, M, HardwareParams{}, 200.0, 100'000, 5, 4);
    CHECK(t1.mean == t4.mean);
    CHECK(t1.std_error == t4.std_error);
}

TEST_CASE("waiting time: loss-only single level")
{
    const std::vector<int> M{0, 0};
    const auto p = perfect_gates(0.0);
    const double analytic = time_per_bit(PurificationScheme::Deutsch, 1, M, p, 40.0);
    const auto mc = mc_gen1_waiting_time(PurificationScheme::Deutsch, 1, M, p, 40.0, 200'000, 1);
    CHECK(std::abs(mc.mean / analytic - 1) <= 0.15);
    // E[max of two geometric waits] in units of T0.
    const double P0 = 0.5 * std::exp(-1.0), q = 1 - P0;
    const double exact = 2 / P0 - 1 / (1 - q * q);
    CHECK(std::abs(mc.mean / (exact * 1e-4) - 1) <= 4 * mc.std_error / mc.mean);
}

TEST_CASE("waiting time: deterministic limit")
{
    auto p = perfect_gates(1e-6);
    const std::vector<int> M{1, 0, 1};
    for (auto scheme : {PurificationScheme::Deutsch, PurificationScheme::Dur}) {
        const auto trace = ladder(scheme, 2, M, p);
        auto timing = ladder_timing(2, p, 1000.0);
        timing.P0 = 1.0;
        timing.wait_factor = 1.0;
        const auto mc = mc_gen1_waiting_time(scheme, trace, M, timing, 1000, 3);
        CHECK(mc.std_error == 0.0);
        CHECK(mc.mean == doctest::Approx(time_per_bit(scheme, trace, M, timing)).epsilon(1e-12));
    }
}

TEST_CASE("waiting time: standard error shrinks as 1/sqrt(trials)")
{
    const std::vector<int> M{0, 0, 0};
    const auto small = mc_gen1_waiting_time(PurificationScheme::Deutsch, 2, M, HardwareParams{}, 100.0, 100'000, 8);
    const auto large = mc_gen1_waiting_time(PurificationScheme::Deutsch, 2, M, HardwareParams{}, 100.0, 200'000, 8);
    CHECK(small.std_error / large.std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
    CHECK(large.mean == doctest::Approx(small.mean).epsilon(0.02));
}

TEST_CASE("waiting time: unpurified ladders")
{
    // The 3/2 factor overestimates waits for non-exponential inputs; the
    // bias grows with nesting.
    double last = 0.0;
    for (int N = 1; N <= 3; ++N) {
        const std::vector<int> M(N + 1, 0);
        const double analytic = time_per_bit(PurificationScheme::Deutsch, N, M, HardwareParams{}, 500.0);
        const auto mc = mc_gen1_waiting_time(PurificationScheme::Deutsch, N, M, HardwareParams{}, 500.0, 100'000, N);
        const double bias = 1 - mc.mean / analytic;
        if (N <= 2) CHECK(std::abs(bias) <= 0.15);
        CHECK(bias > last - 0.01);
        last = bias;
    }
}

TEST_CASE("waiting time: purified ladders sample below the 3/2 recursion")
{
    const std::vector<int> M{1, 0, 1};
    for (auto scheme : {PurificationScheme::Deutsch, PurificationScheme::Dur}) {
        const double analytic = time_per_bit(scheme, 2, M, HardwareParams{}, 100.0);
        const auto mc = mc_gen1_waiting_time(scheme, 2, M, HardwareParams{}, 100.0, 100'000, 4);
        CHECK(mc.mean < analytic);
        CHECK(mc.mean > 0.5 * analytic);
    }
}

TEST_CASE("waiting time: oracle scale bounds")
{
    const std::vector<int> big{0, 0, 0, 0, 0};
    CHECK_THROWS_AS(mc_gen1_waiting_time(PurificationScheme::Dur, 4, big, HardwareParams{}, 100.0, 100, 1),
                    InvalidInput);
    const std::vector<int> rounds{2, 2};
    CHECK_THROWS_AS(mc_gen1_waiting_time(PurificationScheme::Dur, 1, rounds, HardwareParams{}, 100.0, 100, 1),
                    InvalidInput);
}

}
