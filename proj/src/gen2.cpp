#include "repeater/gen2.hpp"

#include <cmath>

#include <boost/math/distributions/binomial.hpp>

#include "repeater/keyrate.hpp"
#include "repeater/pair_ops.hpp"
#include "repeater/validate.hpp"

namespace qrep {

namespace {

boost::math::binomial_distribution<double> attempts(int n0, int M, double p)
{
    if (n0 < 0 || M < 0) throw InvalidInput("pair counts need n0 >= 0 and M >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("pair success probability out of [0,1]");
    return {static_cast<double>(n0) * static_cast<double>(M), p};
}

double round_time(const HardwareParams& params, double L0, int n_eg)
{
    return n_eg * (L0 / params.c_fiber + params.t0);
}

}  // namespace

double pair_count_prob(int i, int n0, int M, double p)
{
    const auto dist = attempts(n0, M, p);
    if (i < 0 || i > dist.trials()) return 0.0;
    return boost::math::pdf(dist, i);
}

double pair_count_at_least(int k, int n0, int M, double p)
{
    const auto dist = attempts(n0, M, p);
    if (k <= 0) return 1.0;
    if (k > dist.trials()) return 0.0;
    return boost::math::cdf(boost::math::complement(dist, k - 1));
}

double chain_qber(const HardwareParams& params, std::uint64_t segments)
{
    const auto elementary = elementary_pair_state(params);
    auto chain = elementary;
    for (std::uint64_t i = 1; i < segments; ++i) chain = swap(chain, elementary, params);
    return qber_from_state(chain).average();
}

CostResult evaluate_gen2_noenc(const Gen2NoEncConfig& config, const HardwareParams& params,
                               double L_tot)
{
    require_valid(params, config, L_tot);
    const std::uint64_t S = station_count(L_tot, config.L0);
    const double q = chain_qber(params, S);
    const double fraction = secure_fraction(q);

    double rate = 0.0;
    if (fraction > 0.0) {
        const double p = heg_success_prob(params, config.L0);
        const double available = 1.0 - pair_count_prob(0, config.n_eg, config.M, p);
        rate = std::pow(available, static_cast<double>(S)) * fraction /
               round_time(params, config.L0, config.n_eg);
    }
    return CostResult::from_rate(rate, 2 * static_cast<std::uint64_t>(config.M), S, L_tot, q);
}

CssDecodeProbs css_decode_probs(const CssCode& code, double eps)
{
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidInput("css error rate out of [0,1]");
    const boost::math::binomial_distribution<double> dist(code.n_phys, eps);
    // Both tails from the regularized incomplete beta; they sum to one to
    // within rounding without either being formed as 1 - other.
    return {boost::math::cdf(dist, code.t), boost::math::cdf(boost::math::complement(dist, code.t))};
}

double gen2_error_rate(const HardwareParams& params, double F0)
{
    return params.eps_d + params.eps_g + 2.0 * params.measurement_error() +
           2.0 / 3.0 * (1.0 - F0);
}

double accumulated_qber(double bias, std::uint64_t R)
{
    return 0.5 * (1.0 - std::pow(bias, static_cast<double>(R)));
}

CostResult evaluate_gen2_enc(const Gen2EncConfig& config, const HardwareParams& params,
                             double L_tot)
{
    require_valid(params, config, L_tot);
    const std::uint64_t R = station_count(L_tot, config.L0);
    const double F0 = elementary_pair_state(params).fidelity();
    const double eps = std::min(gen2_error_rate(params, F0), 1.0);

    // X and Z share one error rate; kept per basis so they can diverge.
    const auto probs_x = css_decode_probs(config.code, eps);
    const auto probs_z = css_decode_probs(config.code, eps);
    const double q_x = accumulated_qber(probs_x.p_correct - probs_x.p_incorrect, R);
    const double q_z = accumulated_qber(probs_z.p_correct - probs_z.p_incorrect, R);
    const double q = 0.5 * (q_x + q_z);
    const double fraction = secure_fraction(q);

    double rate = 0.0;
    // A half station cannot hold more pairs than it has memories.
    if (fraction > 0.0 && config.M >= config.code.n_phys) {
        const double p = heg_success_prob(params, config.L0);
        const double available = pair_count_at_least(config.code.n_phys, config.n_eg, config.M, p);
        rate = std::pow(available, static_cast<double>(R)) * fraction /
               round_time(params, config.L0, config.n_eg);
    }
    return CostResult::from_rate(rate, 2 * static_cast<std::uint64_t>(config.M), R, L_tot, q);
}

}  // namespace qrep
