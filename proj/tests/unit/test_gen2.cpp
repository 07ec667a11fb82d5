#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "repeater/gen2.hpp"
#include "repeater/keyrate.hpp"
#include "repeater/pair_ops.hpp"

using namespace qrep;

namespace {

HardwareParams perfect()
{
    HardwareParams p;
    p.eps_g = 0.0;
    p.xi = 0.0;
    return p;
}

}  // namespace

TEST_SUITE("gen2") {

TEST_CASE("pair counts are binomial over M * n0 attempts")
{
    CHECK(pair_count_prob(0, 1, 4, 0.1) == doctest::Approx(0.6561).epsilon(1e-14));
    CHECK(pair_count_prob(0, 3, 2, 1.0) == 0.0);
    CHECK(pair_count_prob(7, 1, 4, 0.5) == 0.0);
    CHECK(pair_count_prob(2, 2, 3, 0.3) == doctest::Approx(15 * 0.09 * std::pow(0.7, 4)).epsilon(1e-13));
    for (double p : {0.0, 0.05, 0.3, 0.9, 1.0}) {
        double sum = 0.0;
        for (int i = 0; i <= 12; ++i) sum += pair_count_prob(i, 3, 4, p);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(pair_count_at_least(1, 3, 4, p) ==
              doctest::Approx(1.0 - pair_count_prob(0, 3, 4, p)).epsilon(1e-13));
    }
    CHECK(pair_count_at_least(0, 1, 1, 0.2) == 1.0);
    CHECK(pair_count_at_least(5, 1, 4, 0.9) == 0.0);
    CHECK_THROWS_AS(pair_count_prob(0, 1, 1, 1.5), InvalidInput);
}

TEST_CASE("noenc: two perfect segments with one memory")
{
    const auto p = perfect();
    const auto r = evaluate_gen2_noenc(Gen2NoEncConfig{1, 500.0, 1}, p, 1000.0);
    const double q = heg_success_prob(p, 500.0);
    CHECK(r.qber == 0.0);
    CHECK(r.stations == 2);
    CHECK(r.qubits_per_station == 2);
    CHECK(r.rate_sbits_per_s == doctest::Approx(q * q / (500.0 / 2e5 + 1e-6)).epsilon(1e-13));
    CHECK(r.cost_C == doctest::Approx(4.0 / r.rate_sbits_per_s).epsilon(1e-14));
}

TEST_CASE("noenc: qber follows the swap fold")
{
    HardwareParams p;
    p.eps_g = 2e-3;
    const auto r = evaluate_gen2_noenc(Gen2NoEncConfig{4, 100.0, 2}, p, 1000.0);
    auto chain = elementary_pair_state(p);
    for (int i = 1; i < 10; ++i) chain = swap(chain, elementary_pair_state(p), p);
    CHECK(r.qber == doctest::Approx(qber_from_state(chain).average()).epsilon(1e-14));
    CHECK(chain_qber(p, 1) == doctest::Approx(qber_from_state(elementary_pair_state(p)).average()));
}

TEST_CASE("noenc: infeasible beyond the key threshold")
{
    HardwareParams p;
    p.eps_g = 1e-2;
    const auto r = evaluate_gen2_noenc(Gen2NoEncConfig{8, 1.0, 1}, p, 1000.0);
    CHECK(r.qber >= secure_fraction_threshold());
    CHECK_FALSE(r.feasible);
    CHECK(r.rate_sbits_per_s == 0.0);
}

TEST_CASE("noenc: many memories saturate availability")
{
    HardwareParams p;
    p.eta_c = 0.9;
    const double L0 = 25.0;
    const double limit = secure_fraction(chain_qber(p, 20)) / (2 * (L0 / 2e5 + 1e-6));
    const auto r = evaluate_gen2_noenc(Gen2NoEncConfig{100000, L0, 2}, p, 500.0);
    CHECK(r.rate_sbits_per_s == doctest::Approx(limit).epsilon(1e-12));
    double last = 0.0;
    for (int M : {1, 4, 16, 64, 256}) {
        const double rate = evaluate_gen2_noenc(Gen2NoEncConfig{M, L0, 2}, p, 500.0).rate_sbits_per_s;
        CHECK(rate > last);
        CHECK(rate <= limit);
        last = rate;
    }
}

TEST_CASE("noenc: cost is minimized at an interior memory count")
{
    HardwareParams p;
    p.eta_c = 0.9;
    std::vector<double> costs;
    for (int M = 1; M <= 1024; M *= 2)
        costs.push_back(evaluate_gen2_noenc(Gen2NoEncConfig{M, 25.0, 1}, p, 500.0).cost_coeff);
    const auto best = std::min_element(costs.begin(), costs.end()) - costs.begin();
    CHECK(best > 0);
    CHECK(best < static_cast<long>(costs.size()) - 1);
}

TEST_CASE("css tails")
{
    const auto steane = css_decode_probs(CssCode{7, 1}, 0.01);
    CHECK(std::abs(steane.p_correct - (std::pow(0.99, 7) + 7 * 0.01 * std::pow(0.99, 6))) < 1e-15);
    CHECK(std::abs(steane.p_correct - 0.997968) < 1e-6);
    for (const auto& code : kCssCatalog) {
        const auto zero = css_decode_probs(code, 0.0);
        CHECK(zero.p_correct == 1.0);
        CHECK(zero.p_incorrect == 0.0);
        for (double e : {0.0, 1e-3, 1e-2, 0.5}) {
            const auto r = css_decode_probs(code, e);
            CHECK(std::abs(r.p_correct + r.p_incorrect - 1.0) < 1e-14);
            CHECK(std::abs(r.p_correct - oracle::binomial_head(code.n_phys, code.t, e)) < 1e-13);
        }
    }
    const auto half = css_decode_probs(CssCode{23, 3}, 0.5);
    CHECK(half.p_correct == doctest::Approx((1.0 + 23 + 253 + 1771) / std::pow(2.0, 23)).epsilon(1e-13));
}

TEST_CASE("encoded error rate")
{
    HardwareParams p;
    p.eps_g = 1e-3;
    p.xi = 2.5e-4;
    CHECK(gen2_error_rate(p, 0.99875) == doctest::Approx(0.001 + 0.0005 + 2.0 / 3.0 * 0.00125).epsilon(1e-14));
    CHECK(gen2_error_rate(p, 0.99875) == doctest::Approx(0.0023333).epsilon(1e-5));
    CHECK(gen2_error_rate(perfect(), 1.0) == 0.0);
    auto q = p;
    q.eps_d = 1e-4;
    CHECK(gen2_error_rate(q, 0.99875) > gen2_error_rate(p, 0.99875));
    CHECK(gen2_error_rate(p, 0.99) > gen2_error_rate(p, 0.99875));
}

TEST_CASE("accumulated qber")
{
    CHECK(accumulated_qber(1.0, 1000) == 0.0);
    CHECK(accumulated_qber(0.99, 100) == doctest::Approx(0.5 * (1 - std::pow(0.99, 100))).epsilon(1e-14));
    CHECK(accumulated_qber(0.99, 100) == doctest::Approx(0.316984).epsilon(1e-5));
    CHECK(accumulated_qber(0.99, 100000) == doctest::Approx(0.5).epsilon(1e-12));
    double last = 0.0;
    for (std::uint64_t R = 1; R < 5000; R *= 3) {
        const double q = accumulated_qber(0.995, R);
        CHECK(q > last);
        last = q;
    }
}

TEST_CASE("Golay beats Steane at eps = 0.005 over 50 stations")
{
    const auto s = css_decode_probs(CssCode{7, 1}, 0.005);
    const auto g = css_decode_probs(CssCode{23, 3}, 0.005);
    CHECK(accumulated_qber(g.p_correct - g.p_incorrect, 50) < accumulated_qber(s.p_correct - s.p_incorrect, 50));
}

TEST_CASE("encoded evaluation")
{
    HardwareParams p;
    p.eta_c = 0.9;
    const Gen2EncConfig c{CssCode{7, 1}, 32, 10.0, 2};
    const auto r = evaluate_gen2_enc(c, p, 1000.0);
    REQUIRE(r.feasible);
    const double eps = gen2_error_rate(p, 1 - 1.25 * p.eps_g);
    const auto d = css_decode_probs(c.code, eps);
    const double q = accumulated_qber(d.p_correct - d.p_incorrect, 100);
    CHECK(r.qber == doctest::Approx(q).epsilon(1e-14));
    const double avail = pair_count_at_least(7, 2, 32, heg_success_prob(p, 10.0));
    CHECK(r.rate_sbits_per_s ==
          doctest::Approx(std::pow(avail, 100) * secure_fraction(q) / (2 * (10.0 / 2e5 + 1e-6))).epsilon(1e-12));
    CHECK(r.stations == 100);
    CHECK(r.qubits_per_station == 64);

    CHECK_FALSE(evaluate_gen2_enc(Gen2EncConfig{CssCode{23, 3}, 16, 10.0, 2}, p, 1000.0).feasible);
    CHECK(evaluate_gen2_enc(Gen2EncConfig{CssCode{7, 1}, 32, 10.0, 2}, perfect(), 1000.0).qber == 0.0);
}

}
