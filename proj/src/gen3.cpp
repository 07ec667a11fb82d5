#include "repeater/gen3.hpp"

#include <cmath>
#include <vector>

#include "repeater/keyrate.hpp"
#include "repeater/validate.hpp"

namespace qrep {

namespace {

// Binomial coefficients up to 20 are exact in double.
double choose(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double binom_pmf(int n, int k, double p)
{
    return choose(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// 1 - mu^m without cancellation when mu^m is close to one.
double none_lost_complement(double mu, int m)
{
    if (mu <= 0.0) return 1.0;
    return -std::expm1(m * std::log(mu));
}

void check_args(int n, int m, double mu, double eps_q)
{
    if (n < 2 || n > 20 || m < 2 || m > 20)
        throw InvalidInput("parity code needs 2 <= n, m <= 20");
    if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidInput("arrival probability out of [0,1]");
    if (!(eps_q >= 0.0 && eps_q <= 1.0)) throw InvalidInput("flip probability out of [0,1]");
}

DecodeProbs decode_z(int n, int m, double mu, double eps_q)
{
    // Per sub-block: right, wrong, or unknown (empty or tied).
    double right = 0.0, wrong = 0.0, unknown = binom_pmf(m, 0, mu);
    for (int k = 1; k <= m; ++k) {
        const double arrived = binom_pmf(m, k, mu);
        if (arrived == 0.0) continue;
        for (int j = 0; j <= k; ++j) {
            const double w = arrived * binom_pmf(k, j, eps_q);
            if (2 * j < k) right += w;
            else if (2 * j > k) wrong += w;
            else unknown += w;
        }
    }

    // Parity convolution over sub-blocks, all known.
    double even = 1.0, odd = 0.0;
    for (int b = 0; b < n; ++b) {
        const double e = even * right + odd * wrong;
        const double o = even * wrong + odd * right;
        even = e;
        odd = o;
    }
    DecodeProbs out;
    out.p_correct = even;
    out.p_incorrect = odd;
    out.p_unknown = -std::expm1(n * std::log1p(-unknown));
    return out;
}

DecodeProbs decode_x(int n, int m, double mu, double eps_q)
{
    const double complete = std::pow(mu, m);
    const double parity_flip = 0.5 * (1.0 - std::pow(1.0 - 2.0 * eps_q, m));
    const double right = complete * (1.0 - parity_flip);
    const double wrong = complete * parity_flip;
    const double missing = none_lost_complement(mu, m);

    DecodeProbs out;
    for (int c = 0; c <= n; ++c) {
        for (int w = 0; c + w <= n; ++w) {
            const double term = choose(n, c) * choose(n - c, w) * std::pow(right, c) *
                                std::pow(wrong, w) * std::pow(missing, n - c - w);
            if (c > w) out.p_correct += term;
            else if (w > c) out.p_incorrect += term;
            else out.p_unknown += term;
        }
    }
    return out;
}

}  // namespace

double arrival_prob(const HardwareParams& params, double L0)
{
    if (!(L0 >= 0.0)) throw InvalidInput("L0 must be >= 0 km");
    return params.eta_c * std::exp(-L0 / params.L_att);
}

double conditional_flip_prob(const HardwareParams& params)
{
    return params.eps_d + 0.5 * params.eps_g + params.measurement_error();
}

double gen3_error_rate(const HardwareParams& params, double mu)
{
    return conditional_flip_prob(params) * mu;
}

DecodeProbs qpc_decode_probs(int n, int m, double mu, double eps_q, Basis basis)
{
    check_args(n, m, mu, eps_q);
    return basis == Basis::Z ? decode_z(n, m, mu, eps_q) : decode_x(n, m, mu, eps_q);
}

CostResult evaluate_gen3(const Gen3Config& config, const HardwareParams& params, double L_tot)
{
    require_valid(params, config, L_tot);
    const std::uint64_t R = station_count(L_tot, config.L0);
    const auto qubits = static_cast<std::uint64_t>(2 * config.n * config.m);
    const double mu = arrival_prob(params, config.L0);
    if (mu <= kMinArrivalProb) return CostResult::from_rate(0.0, qubits, R, L_tot, 0.5);

    const double eps_q = std::min(conditional_flip_prob(params), 1.0);
    const auto x = qpc_decode_probs(config.n, config.m, mu, eps_q, Basis::X);
    const auto z = qpc_decode_probs(config.n, config.m, mu, eps_q, Basis::Z);

    const double stations = static_cast<double>(R);
    // X and Z outcome categories are independent; a station heralds failure
    // if either logical measurement is unknown.
    const double success = std::exp(stations * (std::log1p(-x.p_unknown) + std::log1p(-z.p_unknown)));

    auto basis_qber = [&](const DecodeProbs& d) {
        const double decided = d.p_correct + d.p_incorrect;
        if (!(decided > 0.0)) return 0.5;
        return 0.5 * (1.0 - std::pow((d.p_correct - d.p_incorrect) / decided, stations));
    };
    const double q = 0.5 * (basis_qber(x) + basis_qber(z));
    const double rate = success / params.t0 * secure_fraction(q);
    return CostResult::from_rate(rate, qubits, R, L_tot, q);
}

}  // namespace qrep
