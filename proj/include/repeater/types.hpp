#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qrep {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Thrown by evaluators when inputs violate a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(std::vector<std::string> violations);
    explicit InvalidInput(const std::string& violation)
        : InvalidInput(std::vector<std::string>{violation}) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Two-qubit state diagonal in the Bell basis {phi+, phi-, psi+, psi-}.
//
// Weights always sum to one. Construction from raw weights rejects vectors
// whose sum is off by more than 1e-9 and renormalizes anything smaller.
class BellDiagonalState {
public:
    static constexpr double kSumTolerance = 1e-9;

    static BellDiagonalState from_weights(double a, double b, double c, double d);
    static BellDiagonalState werner(double fidelity);
    static BellDiagonalState perfect() { return BellDiagonalState(1.0, 0.0, 0.0, 0.0); }
    static BellDiagonalState maximally_mixed() { return BellDiagonalState(0.25, 0.25, 0.25, 0.25); }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double fidelity() const noexcept { return a_; }
    std::array<double, 4> weights() const noexcept { return {a_, b_, c_, d_}; }

    bool operator==(const BellDiagonalState&) const = default;

private:
    BellDiagonalState(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

    double a_, b_, c_, d_;
};

// Experimental knobs. Probabilities are dimensionless, t0 in seconds,
// L_att in km, c_fiber in km/s.
struct HardwareParams {
    double eta_c = 1.0;
    double eps_g = 1e-3;
    // Measurement infidelity. Unset means the verified value eps_g / 4.
    std::optional<double> xi;
    double eps_d = 0.0;
    double t0 = 1e-6;
    double L_att = 20.0;
    double c_fiber = 2e5;

    double measurement_error() const noexcept { return xi.value_or(eps_g / 4.0); }
};

enum class PurificationScheme { Deutsch, Dur };

struct CssCode {
    int n_phys = 7;
    int t = 1;

    int distance() const noexcept { return 2 * t + 1; }
    auto operator<=>(const CssCode&) const = default;
};

struct QpcCode {
    int n = 2;
    int m = 2;

    auto operator<=>(const QpcCode&) const = default;
};

using CodeSpec = std::variant<CssCode, QpcCode>;

// Steane [[7,1,3]], Golay [[23,1,7]], quadratic-residue [[103,1,19]].
inline constexpr std::array<CssCode, 3> kCssCatalog{{{7, 1}, {23, 3}, {103, 9}}};

bool in_css_catalog(const CssCode& code) noexcept;

struct Gen1Config {
    PurificationScheme scheme = PurificationScheme::Deutsch;
    int N = 1;
    std::vector<int> M{0, 0};  // purification rounds per level 0..N

    auto operator<=>(const Gen1Config&) const = default;
};

struct Gen2NoEncConfig {
    int M = 1;  // memory qubits per half station
    double L0 = 20.0;
    int n_eg = 1;

    auto operator<=>(const Gen2NoEncConfig&) const = default;
};

struct Gen2EncConfig {
    CssCode code{};
    int M = 7;
    double L0 = 20.0;
    int n_eg = 1;

    auto operator<=>(const Gen2EncConfig&) const = default;
};

struct Gen3Config {
    int n = 2;
    int m = 2;
    double L0 = 1.0;

    auto operator<=>(const Gen3Config&) const = default;
};

using ProtocolConfig = std::variant<Gen1Config, Gen2NoEncConfig, Gen2EncConfig, Gen3Config>;

enum class Family { Gen1 = 0, Gen2NoEnc = 1, Gen2Enc = 2, Gen3 = 3 };
inline constexpr std::array<Family, 4> kAllFamilies{Family::Gen1, Family::Gen2NoEnc,
                                                    Family::Gen2Enc, Family::Gen3};

Family family_of(const ProtocolConfig& config) noexcept;
std::string_view family_name(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
std::string_view scheme_name(PurificationScheme scheme) noexcept;

// Canonical one-token description, e.g. "gen1:deutsch:N=2:M=1-1-1".
std::string describe(const ProtocolConfig& config);

// Evaluation of one configuration. Infeasible results carry zero rate and
// infinite cost so they can be filtered on `feasible` alone.
struct CostResult {
    double rate_sbits_per_s = 0.0;
    std::uint64_t qubits_per_station = 0;
    std::uint64_t stations = 0;
    double cost_C = kInfinity;
    double cost_coeff = kInfinity;
    bool feasible = false;
    double qber = 0.5;  // average of Q_X and Q_Z at the end of the link

    std::uint64_t qubits_total() const noexcept { return qubits_per_station * stations; }

    static CostResult from_rate(double rate, std::uint64_t qubits_per_station,
                                std::uint64_t stations, double L_tot, double qber);
};

// ceil(L_tot / L0), tolerant of the roundoff in L0 = L_tot / k.
std::uint64_t station_count(double L_tot, double L0);

}  // namespace qrep
