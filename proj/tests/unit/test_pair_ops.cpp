#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "repeater/pair_ops.hpp"

using namespace qrep;

namespace {

HardwareParams gates(double eps_g, double xi)
{
    HardwareParams p;
    p.eps_g = eps_g;
    p.xi = xi;
    return p;
}

oracle::Bell bell(const BellDiagonalState& s) { return {s.a(), s.b(), s.c(), s.d()}; }

BellDiagonalState random_state(std::mt19937_64& rng)
{
    std::exponential_distribution<double> e(1.0);
    double w[4];
    double sum = 0.0;
    for (double& x : w) sum += (x = e(rng));
    return BellDiagonalState::from_weights(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum);
}

void check_valid(const BellDiagonalState& s)
{
    for (double x : s.weights()) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
    CHECK(s.a() + s.b() + s.c() + s.d() == doctest::Approx(1.0).epsilon(1e-12));
}

void check_close(const BellDiagonalState& s, const oracle::Bell& o, double tol)
{
    CHECK(std::abs(s.a() - o.a) <= tol);
    CHECK(std::abs(s.b() - o.b) <= tol);
    CHECK(std::abs(s.c() - o.c) <= tol);
    CHECK(std::abs(s.d() - o.d) <= tol);
}

}  // namespace

TEST_SUITE("pair_ops") {

TEST_CASE("generation success probability")
{
    HardwareParams p;
    CHECK(heg_success_prob(p, 0.0) == 0.5);
    p.eta_c = 0.9;
    CHECK(heg_success_prob(p, 20.0) == doctest::Approx(0.5 * 0.81 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(heg_success_prob(p, 20.0) == doctest::Approx(0.148996).epsilon(1e-5));
    p.eta_c = 0.0;
    CHECK(heg_success_prob(p, 35.0) == 0.0);
    CHECK_THROWS_AS(heg_success_prob(p, -1.0), InvalidInput);
}

TEST_CASE("elementary pair is Werner at 1 - 5/4 eps_g")
{
    CHECK(elementary_pair_state(gates(0.0, 0.0)) == BellDiagonalState::perfect());
    CHECK(elementary_pair_state(gates(1e-3, 2.5e-4)).fidelity() == doctest::Approx(0.99875).epsilon(1e-15));
    const auto s = elementary_pair_state(gates(1e-2, 2.5e-3));
    CHECK(s.a() == doctest::Approx(0.9875));
    CHECK(s.b() == doctest::Approx(0.0125 / 3.0).epsilon(1e-14));
    CHECK(s.a() + s.b() + s.c() + s.d() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(elementary_pair_state(gates(0.041, 0.0)), InvalidInput);
}

TEST_CASE("purify: perfect inputs stay perfect")
{
    const auto r = purify(BellDiagonalState::perfect(), BellDiagonalState::perfect(), gates(0, 0));
    CHECK(r.probability == 1.0);
    CHECK(r.state == BellDiagonalState::perfect());
}

TEST_CASE("purify: ideal Deutsch on Werner 0.9")
{
    const auto w = BellDiagonalState::werner(0.9);
    const auto r = purify(w, w, gates(0, 0));
    const double F = 0.9, x = (1 - F) / 3;
    const double P = (F + x) * (F + x) + (2 * x) * (2 * x);
    CHECK(r.probability == doctest::Approx(P).epsilon(1e-15));
    CHECK(r.state.fidelity() == doctest::Approx((F * F + x * x) / P).epsilon(1e-15));
    CHECK(r.state.fidelity() > 0.9);
    CHECK(r.probability > 0.0);
    CHECK(r.probability < 1.0);
    const auto o = oracle::purify(bell(w), bell(w), 0, 0);
    check_close(r.state, o.out, 1e-15);
}

TEST_CASE("purify: fully depolarizing gates give the maximally mixed state")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const auto r = purify(random_state(rng), random_state(rng), gates(1.0, 0.3));
        CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-15));
        check_close(r.state, {0.25, 0.25, 0.25, 0.25}, 1e-15);
    }
}

TEST_CASE("purify: zero success probability is reported, not divided by")
{
    const auto psi = BellDiagonalState::from_weights(0, 0, 1, 0);
    CHECK_THROWS_AS(purify(BellDiagonalState::perfect(), psi, gates(0, 0)), std::domain_error);
}

TEST_CASE("purify and swap match the transcribed formulas on random inputs")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto r1 = random_state(rng), r2 = random_state(rng);
        const double eg = (i % 5 == 0) ? u(rng) : 0.05 * u(rng);
        const double xi = (i % 7 == 0) ? u(rng) : 0.05 * u(rng);
        const auto p = purify(r1, r2, gates(eg, xi));
        const auto op = oracle::purify(bell(r1), bell(r2), eg, xi);
        CHECK(p.probability == doctest::Approx(op.P).epsilon(1e-13));
        check_valid(p.state);
        check_close(p.state, op.out, 1e-12);

        const auto s = swap(r1, r2, gates(eg, xi));
        check_valid(s);
        check_close(s, oracle::swap(bell(r1), bell(r2), eg, xi), 1e-14);
    }
}

TEST_CASE("purify keeps the pumped pair in the first slot")
{
    const auto pumped = BellDiagonalState::from_weights(0.8, 0.1, 0.06, 0.04);
    const auto aux = BellDiagonalState::from_weights(0.9, 0.02, 0.05, 0.03);
    const auto ab = purify(pumped, aux, gates(1e-3, 2.5e-4));
    const auto ba = purify(aux, pumped, gates(1e-3, 2.5e-4));
    CHECK(ab.probability == doctest::Approx(ba.probability).epsilon(1e-14));
    CHECK(ab.state.b() != doctest::Approx(ba.state.b()).epsilon(1e-6));
    const auto o = oracle::purify(bell(pumped), bell(aux), 1e-3, 2.5e-4);
    check_close(ab.state, o.out, 1e-15);
}

TEST_CASE("ideal purification raises Werner fidelity above one half")
{
    for (double F = 0.51; F < 0.999; F += 0.02) {
        const auto w = BellDiagonalState::werner(F);
        CHECK(purify(w, w, gates(0, 0)).state.fidelity() > F);
    }
}

TEST_CASE("swap: identities and depolarizing floor")
{
    CHECK(swap(BellDiagonalState::perfect(), BellDiagonalState::perfect(), gates(0, 0)) ==
          BellDiagonalState::perfect());

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto r = random_state(rng);
        const auto s = swap(BellDiagonalState::perfect(), r, gates(0, 0));
        check_close(s, bell(r), 1e-15);
        check_close(swap(r, random_state(rng), gates(1.0, 0.2)), {0.25, 0.25, 0.25, 0.25}, 1e-15);
    }

    for (double F : {0.6, 0.9, 0.99, 0.999}) {
        const auto w = BellDiagonalState::werner(F);
        const auto s = swap(w, w, gates(0, 0));
        CHECK(s.fidelity() == doctest::Approx(F * F + (1 - F) * (1 - F) / 3).epsilon(1e-14));
        CHECK(s.fidelity() < F);
        CHECK(s.b() == doctest::Approx(s.c()).epsilon(1e-15));
    }
}

TEST_CASE("qber weights")
{
    const auto q0 = qber_from_state(BellDiagonalState::perfect());
    CHECK(q0.x == 0.0);
    CHECK(q0.z == 0.0);
    const auto qm = qber_from_state(BellDiagonalState::maximally_mixed());
    CHECK(qm.x == 0.5);
    CHECK(qm.z == 0.5);
    const auto qw = qber_from_state(BellDiagonalState::werner(0.99));
    CHECK(qw.x == doctest::Approx(0.02 / 3).epsilon(1e-12));
    CHECK(qw.z == doctest::Approx(0.02 / 3).epsilon(1e-12));
    const auto qa = qber_from_state(BellDiagonalState::from_weights(0.7, 0.1, 0.15, 0.05));
    CHECK(qa.x == doctest::Approx(0.15));
    CHECK(qa.z == doctest::Approx(0.2));
    CHECK(qa.average() == doctest::Approx(0.175));
}

TEST_CASE("fixed point of repeated symmetric purification")
{
    CHECK(deutsch_fixed_point(gates(0, 0)).fidelity() == doctest::Approx(1.0).epsilon(1e-14));

    // With xi = 0 the second-order coefficient is 19/4.
    {
        const double e = 1e-3;
        const double F = deutsch_fixed_point(gates(e, 0.0)).fidelity();
        CHECK(std::abs(F - (1 - 1.25 * e - 4.75 * e * e)) < 1e-7);
    }
    // The iteration's second-order term in xi is 9 xi eps_g; the residual
    // is third order.
    for (auto [e, tol] : {std::pair{1e-3, 1e-7}, std::pair{3e-3, 3e-6}}) {
        const double xi = e / 4;
        const double F = deutsch_fixed_point(gates(e, xi)).fidelity();
        CHECK(std::abs(F - (1 - 1.25 * e - (9 * xi + 4.75 * e) * e)) < tol);
    }
    {
        const double e = 1e-2, xi = 2.5e-3;
        const double F = deutsch_fixed_point(gates(e, xi)).fidelity();
        CHECK(std::abs(F - (1 - 1.25 * e - (9 * xi + 4.75 * e) * e)) < 5e-5);
    }
    // Against a 9/4 xi coefficient the gap at eps_g = 1e-3 is 27/4 xi eps_g.
    {
        const double e = 1e-3, xi = 2.5e-4;
        const double F = deutsch_fixed_point(gates(e, xi)).fidelity();
        const double gap = (1 - 1.25 * e - (2.25 * xi + 4.75 * e) * e) - F;
        CHECK(gap == doctest::Approx(6.75 * xi * e).epsilon(0.05));
    }
    CHECK_THROWS_AS(deutsch_fixed_point(gates(0.02, 0.005)), InvalidInput);
}

TEST_CASE("fixed point is the purification upper bound for Werner inputs")
{
    const auto p = gates(2e-3, 5e-4);
    const auto fp = deutsch_fixed_point(p);
    const auto again = purify(fp, fp, p).state;
    CHECK(again.fidelity() == doctest::Approx(fp.fidelity()).epsilon(1e-13));
    auto s = elementary_pair_state(p);
    for (int i = 0; i < 50; ++i) s = purify(s, s, p).state;
    CHECK(s.fidelity() <= fp.fidelity() + 1e-12);
}

}
