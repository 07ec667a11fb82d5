#include "repeater/pair_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace qrep {

double heg_success_prob(const HardwareParams& params, double L0)
{
    if (!(L0 >= 0.0)) throw InvalidInput("L0 must be >= 0 km");
    return 0.5 * params.eta_c * params.eta_c * std::exp(-L0 / params.L_att);
}

BellDiagonalState elementary_pair_state(const HardwareParams& params)
{
    if (params.eps_g < 0.0 || params.eps_g > kElementaryPairMaxGateError)
        throw InvalidInput("eps_g outside the elementary-pair model range [0, 0.04]");
    return BellDiagonalState::werner(1.0 - 1.25 * params.eps_g);
}

PurifyOutcome purify(const BellDiagonalState& rho1, const BellDiagonalState& rho2,
                     const HardwareParams& params)
{
    const auto [a1, b1, c1, d1] = rho1.weights();
    const auto [a2, b2, c2, d2] = rho2.weights();
    const double xi = params.measurement_error();

    const double gate_ok = (1.0 - params.eps_g) * (1.0 - params.eps_g);
    const double depolarized = 1.0 - gate_ok;
    // Both measurement outcomes right or both wrong keeps the parity; exactly
    // one wrong flips it.
    const double same = xi * xi + (1.0 - xi) * (1.0 - xi);
    const double flip = 2.0 * xi * (1.0 - xi);

    const double even1 = a1 + d1, odd1 = b1 + c1;
    const double even2 = a2 + d2, odd2 = b2 + c2;

    const double P = gate_ok * (same * (even1 * even2 + odd1 * odd2) +
                                flip * (even1 * odd2 + odd1 * even2)) +
                     0.5 * depolarized;
    // Only reachable with eps_g = 0 and inputs of orthogonal parity.
    if (!(P > 0.0)) throw std::domain_error("purification success probability is zero");

    const double floor = depolarized / 8.0;
    const double a = gate_ok * (same * (a1 * a2 + d1 * d2) + flip * (a1 * c2 + d1 * b2)) + floor;
    const double b = gate_ok * (same * (a1 * d2 + d1 * a2) + flip * (a1 * b2 + d1 * c2)) + floor;
    const double c = gate_ok * (same * (b1 * b2 + c1 * c2) + flip * (b1 * d2 + c1 * a2)) + floor;
    const double d = gate_ok * (same * (b1 * c2 + c1 * b2) + flip * (b1 * a2 + c1 * d2)) + floor;

    return {P, BellDiagonalState::from_weights(a / P, b / P, c / P, d / P)};
}

BellDiagonalState deutsch_fixed_point(const HardwareParams& params, double tol)
{
    if (params.eps_g < 0.0 || params.eps_g > 0.01)
        throw InvalidInput("deutsch_fixed_point requires eps_g in [0, 0.01]");

    constexpr int kMaxIterations = 1000;
    auto state = BellDiagonalState::werner(0.9);
    for (int i = 0; i < kMaxIterations; ++i) {
        auto next = purify(state, state, params).state;
        const bool done = std::abs(next.fidelity() - state.fidelity()) < tol;
        state = next;
        if (done) return state;
    }
    throw std::runtime_error("deutsch_fixed_point did not converge in 1000 iterations");
}

BellDiagonalState swap(const BellDiagonalState& rho1, const BellDiagonalState& rho2,
                       const HardwareParams& params)
{
    const auto [a1, b1, c1, d1] = rho1.weights();
    const auto [a2, b2, c2, d2] = rho2.weights();
    const double xi = params.measurement_error();
    const double keep = 1.0 - params.eps_g;
    const double floor = params.eps_g / 4.0;

    const double both_ok = (1.0 - xi) * (1.0 - xi);
    const double one_bad = xi * (1.0 - xi);
    const double both_bad = xi * xi;

    const double even1 = a1 + d1, odd1 = b1 + c1;
    const double even2 = a2 + d2, odd2 = b2 + c2;
    const double cross = even1 * odd2 + odd1 * even2;
    const double parallel = even1 * even2 + odd1 * odd2;

    // Products grouped by which Bell state the pair of inputs maps onto.
    const double to_a = a1 * a2 + b1 * b2 + c1 * c2 + d1 * d2;
    const double to_b = a1 * b2 + b1 * a2 + c1 * d2 + d1 * c2;
    const double to_c = a1 * c2 + c1 * a2 + b1 * d2 + d1 * b2;
    const double to_d = a1 * d2 + d1 * a2 + c1 * b2 + b1 * c2;

    const double a = keep * (both_ok * to_a + one_bad * cross + both_bad * to_d) + floor;
    const double b = keep * (both_ok * to_b + one_bad * parallel + both_bad * to_c) + floor;
    const double c = keep * (both_ok * to_c + one_bad * parallel + both_bad * to_b) + floor;
    const double d = keep * (both_ok * to_d + one_bad * cross + both_bad * to_a) + floor;
    return BellDiagonalState::from_weights(a, b, c, d);
}

Qber qber_from_state(const BellDiagonalState& rho) noexcept
{
    return {rho.b() + rho.d(), rho.c() + rho.d()};
}

}  // namespace qrep
