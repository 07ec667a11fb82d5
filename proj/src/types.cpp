#include "repeater/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrep {

namespace {

std::string join_violations(const std::vector<std::string>& violations)
{
    std::string out = "invalid input";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        out += (i == 0) ? ": " : "; ";
        out += violations[i];
    }
    return out;
}

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

InvalidInput::InvalidInput(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations))
{
}

BellDiagonalState BellDiagonalState::from_weights(double a, double b, double c, double d)
{
    constexpr double kRangeSlack = 1e-12;
    const std::array<double, 4> w{a, b, c, d};
    for (double x : w) {
        if (!std::isfinite(x) || x < -kRangeSlack || x > 1.0 + kRangeSlack)
            throw InvalidInput("Bell-diagonal weight out of [0,1]");
    }
    const double sum = a + b + c + d;
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InvalidInput("Bell-diagonal weights do not sum to 1");

    auto clamp = [](double x) { return std::clamp(x, 0.0, 1.0); };
    const double s = clamp(a) + clamp(b) + clamp(c) + clamp(d);
    return BellDiagonalState(clamp(a) / s, clamp(b) / s, clamp(c) / s, clamp(d) / s);
}

BellDiagonalState BellDiagonalState::werner(double fidelity)
{
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw InvalidInput("Werner fidelity out of [0,1]");
    const double rest = (1.0 - fidelity) / 3.0;
    return BellDiagonalState(fidelity, rest, rest, rest);
}

bool in_css_catalog(const CssCode& code) noexcept
{
    return std::find(kCssCatalog.begin(), kCssCatalog.end(), code) != kCssCatalog.end();
}

Family family_of(const ProtocolConfig& config) noexcept
{
    return static_cast<Family>(config.index());
}

std::string_view family_name(Family family) noexcept
{
    switch (family) {
    case Family::Gen1: return "gen1";
    case Family::Gen2NoEnc: return "gen2_noenc";
    case Family::Gen2Enc: return "gen2_enc";
    case Family::Gen3: return "gen3";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept
{
    for (Family f : kAllFamilies) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view scheme_name(PurificationScheme scheme) noexcept
{
    return scheme == PurificationScheme::Deutsch ? "deutsch" : "dur";
}

std::string describe(const ProtocolConfig& config)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Gen1Config& c) {
                       os << "gen1:" << scheme_name(c.scheme) << ":N=" << c.N << ":M=";
                       for (std::size_t i = 0; i < c.M.size(); ++i) os << (i ? "-" : "") << c.M[i];
                   },
                   [&](const Gen2NoEncConfig& c) {
                       os << "gen2_noenc:M=" << c.M << ":L0=" << c.L0 << ":n_eg=" << c.n_eg;
                   },
                   [&](const Gen2EncConfig& c) {
                       os << "gen2_enc:code=[[" << c.code.n_phys << ",1," << c.code.distance()
                          << "]]:M=" << c.M << ":L0=" << c.L0 << ":n_eg=" << c.n_eg;
                   },
                   [&](const Gen3Config& c) {
                       os << "gen3:n=" << c.n << ":m=" << c.m << ":L0=" << c.L0;
                   },
               },
               config);
    return os.str();
}

CostResult CostResult::from_rate(double rate, std::uint64_t qubits_per_station,
                                 std::uint64_t stations, double L_tot, double qber)
{
    CostResult r;
    r.qubits_per_station = qubits_per_station;
    r.stations = stations;
    r.qber = qber;
    if (!(rate > 0.0) || !std::isfinite(rate)) return r;
    r.rate_sbits_per_s = rate;
    r.cost_C = static_cast<double>(r.qubits_total()) / rate;
    r.cost_coeff = r.cost_C / L_tot;
    r.feasible = true;
    return r;
}

std::uint64_t station_count(double L_tot, double L0)
{
    const double ratio = L_tot / L0;
    const double nearest = std::round(ratio);
    const double stations = (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest))
                                ? nearest
                                : std::ceil(ratio);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(stations));
}

}  // namespace qrep
