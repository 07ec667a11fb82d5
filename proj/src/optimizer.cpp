#include "repeater/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "repeater/gen1.hpp"
#include "repeater/gen2.hpp"
#include "repeater/gen3.hpp"
#include "repeater/pair_ops.hpp"
#include "repeater/validate.hpp"

namespace qrep {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void append_gen1(const Gen1Space& space, std::vector<ProtocolConfig>& out)
{
    auto schemes = space.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
    for (auto scheme : schemes) {
        for (int N = space.N_min; N <= space.N_max; ++N) {
            std::vector<int> M(N + 1, 0);
            while (true) {
                out.push_back(Gen1Config{scheme, N, M});
                int pos = N;
                while (pos >= 0 && M[pos] == space.M_max) M[pos--] = 0;
                if (pos < 0) break;
                ++M[pos];
            }
        }
    }
}

bool model_applies(Family family, const HardwareParams& params)
{
    if (family == Family::Gen3) return true;
    return params.eps_g <= kElementaryPairMaxGateError;
}

bool better(const CostResult& candidate, const ProtocolConfig& candidate_config,
            const CostResult& incumbent, const ProtocolConfig& incumbent_config)
{
    if (candidate.cost_coeff != incumbent.cost_coeff)
        return candidate.cost_coeff < incumbent.cost_coeff;
    return candidate_config < incumbent_config;
}

}  // namespace

std::vector<double> Gen2Grid::spacings(double L_tot) const
{
    std::vector<int> ks = spacing_divisors;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<double> out;
    for (int k : ks) {
        const double L0 = L_tot / k;
        if (L0 >= min_L0) out.push_back(L0);
    }
    return out;
}

std::vector<std::string> SearchSpace::validate() const
{
    std::vector<std::string> out;
    if (gen1.N_min < 1 || gen1.N_max < gen1.N_min) out.push_back("gen1 N range must satisfy 1 <= N_min <= N_max");
    if (gen1.N_max > 20) out.push_back("gen1 N_max must be <= 20");
    if (gen1.M_max < 0) out.push_back("gen1 M_max must be >= 0");
    if (gen1.schemes.empty()) out.push_back("gen1 scheme set is empty");

    auto check_grid = [&](const Gen2Grid& g, std::string_view name) {
        const std::string prefix(name);
        if (g.spacing_divisors.empty()) out.push_back(prefix + " spacing grid is empty");
        for (int k : g.spacing_divisors) {
            if (k < 1) out.push_back(prefix + " spacing divisors must be >= 1");
        }
        if (g.M.empty()) out.push_back(prefix + " M grid is empty");
        for (int m : g.M) {
            if (m < 1) out.push_back(prefix + " M values must be >= 1");
        }
        if (g.n_eg.empty()) out.push_back(prefix + " n_eg grid is empty");
        for (int n : g.n_eg) {
            if (n < 1) out.push_back(prefix + " n_eg values must be >= 1");
        }
    };
    check_grid(gen2_noenc, "gen2_noenc");
    check_grid(gen2_enc.grid, "gen2_enc");
    if (gen2_enc.codes.empty()) out.push_back("gen2_enc code list is empty");
    for (const auto& code : gen2_enc.codes) {
        if (!in_css_catalog(code)) out.push_back("gen2_enc codes must come from the CSS catalog");
    }

    if (gen3.n_min < 2 || gen3.n_max > 20 || gen3.n_min > gen3.n_max)
        out.push_back("gen3 n range must lie in [2,20]");
    if (gen3.m_min < 2 || gen3.m_max > 20 || gen3.m_min > gen3.m_max)
        out.push_back("gen3 m range must lie in [2,20]");
    if (gen3.max_qubits > 200 || gen3.max_qubits < 4) out.push_back("gen3 qubit cap must be in [4,200]");
    if (gen3.L0.empty()) out.push_back("gen3 L0 grid is empty");
    for (double L0 : gen3.L0) {
        if (!(L0 > 0.0)) out.push_back("gen3 L0 values must be > 0");
    }
    return out;
}

std::string SearchSpace::canonical() const
{
    std::ostringstream os;
    os.precision(17);
    os << "gen1 N=" << gen1.N_min << ".." << gen1.N_max << " M_max=" << gen1.M_max << " schemes=";
    for (auto s : gen1.schemes) os << scheme_name(s) << ',';
    auto grid = [&](const Gen2Grid& g) {
        os << " k=";
        for (int k : g.spacing_divisors) os << k << ',';
        os << " min_L0=" << g.min_L0 << " M=";
        for (int m : g.M) os << m << ',';
        os << " n_eg=";
        for (int n : g.n_eg) os << n << ',';
    };
    os << "\ngen2_noenc";
    grid(gen2_noenc);
    os << "\ngen2_enc codes=";
    for (const auto& c : gen2_enc.codes) os << c.n_phys << '/' << c.t << ',';
    grid(gen2_enc.grid);
    os << "\ngen3 n=" << gen3.n_min << ".." << gen3.n_max << " m=" << gen3.m_min << ".." << gen3.m_max
       << " cap=" << gen3.max_qubits << " L0=";
    for (double L0 : gen3.L0) os << L0 << ',';
    os << '\n';
    return os.str();
}

std::vector<ProtocolConfig> enumerate(Family family, const SearchSpace& space, double L_tot)
{
    std::vector<ProtocolConfig> out;
    switch (family) {
    case Family::Gen1:
        append_gen1(space.gen1, out);
        break;
    case Family::Gen2NoEnc:
        for (double L0 : space.gen2_noenc.spacings(L_tot))
            for (int M : space.gen2_noenc.M)
                for (int n : space.gen2_noenc.n_eg) out.push_back(Gen2NoEncConfig{M, L0, n});
        break;
    case Family::Gen2Enc:
        for (const auto& code : space.gen2_enc.codes)
            for (double L0 : space.gen2_enc.grid.spacings(L_tot))
                for (int M : space.gen2_enc.grid.M)
                    for (int n : space.gen2_enc.grid.n_eg)
                        out.push_back(Gen2EncConfig{code, M, L0, n});
        break;
    case Family::Gen3:
        for (int n = space.gen3.n_min; n <= space.gen3.n_max; ++n)
            for (int m = space.gen3.m_min; m <= space.gen3.m_max; ++m) {
                if (n * m > space.gen3.max_qubits) continue;
                for (double L0 : space.gen3.L0) out.push_back(Gen3Config{n, m, L0});
            }
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CostResult evaluate(const ProtocolConfig& config, const HardwareParams& params, double L_tot)
{
    return std::visit(overloaded{
                          [&](const Gen1Config& c) { return evaluate_gen1(c, params, L_tot); },
                          [&](const Gen2NoEncConfig& c) { return evaluate_gen2_noenc(c, params, L_tot); },
                          [&](const Gen2EncConfig& c) { return evaluate_gen2_enc(c, params, L_tot); },
                          [&](const Gen3Config& c) { return evaluate_gen3(c, params, L_tot); },
                      },
                      config);
}

std::optional<FamilyOptimum> optimize_family(Family family, const SearchSpace& space,
                                             const HardwareParams& params, double L_tot)
{
    if (auto problems = space.validate(); !problems.empty()) throw InvalidInput(std::move(problems));
    if (auto problems = qrep::validate(params); !problems.empty()) throw InvalidInput(std::move(problems));
    if (!model_applies(family, params)) return std::nullopt;

    std::optional<FamilyOptimum> best;
    for (auto& config : enumerate(family, space, L_tot)) {
        const auto result = evaluate(config, params, L_tot);
        if (!result.feasible) continue;
        if (!best || better(result, config, best->result, best->config))
            best = FamilyOptimum{std::move(config), result};
    }
    return best;
}

OptimumReport optimize_all(const HardwareParams& params, double L_tot, const SearchSpace& space)
{
    OptimumReport report;
    for (Family f : kAllFamilies) {
        auto& slot = report.per_family[static_cast<std::size_t>(f)];
        slot = optimize_family(f, space, params, L_tot);
        if (!slot) continue;
        if (!report.winner || better(slot->result, slot->config, report.best, *report.best_config)) {
            report.winner = f;
            report.best_config = slot->config;
            report.best = slot->result;
        }
    }
    return report;
}

std::string_view axis_name(SweepAxis axis) noexcept
{
    switch (axis) {
    case SweepAxis::EtaC: return "eta_c";
    case SweepAxis::EpsG: return "eps_g";
    case SweepAxis::T0: return "t0";
    }
    return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view name) noexcept
{
    for (auto a : {SweepAxis::EtaC, SweepAxis::EpsG, SweepAxis::T0}) {
        if (axis_name(a) == name) return a;
    }
    return std::nullopt;
}

HardwareParams with_axis(HardwareParams params, SweepAxis axis, double value)
{
    switch (axis) {
    case SweepAxis::EtaC: params.eta_c = value; break;
    case SweepAxis::EpsG: params.eps_g = value; break;
    case SweepAxis::T0: params.t0 = value; break;
    }
    return params;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn)
{
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<GridPoint> sweep(SweepAxis axis, std::span<const double> values,
                             const HardwareParams& fixed, double L_tot, const SearchSpace& space,
                             int threads)
{
    std::vector<GridPoint> points(values.size());
    parallel_for(values.size(), threads, [&](std::size_t i) {
        auto params = with_axis(fixed, axis, values[i]);
        points[i] = GridPoint{params, L_tot, optimize_all(params, L_tot, space)};
    });
    return points;
}

RegionGrid RegionGrid::defaults()
{
    return {
        {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95, 1.0},
        {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 8e-3, 1e-2, 1.5e-2, 2e-2},
        {1e-7, 2e-7, 5e-7, 1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4},
    };
}

std::vector<GridPoint> region_map(const RegionGrid& grid, const HardwareParams& base, double L_tot,
                                  const SearchSpace& space, int threads)
{
    if (grid.eta_c.empty() || grid.eps_g.empty() || grid.t0.empty())
        throw InvalidInput("region grid axes must be non-empty");

    const std::size_t n_eps = grid.eps_g.size(), n_t0 = grid.t0.size();
    std::vector<GridPoint> points(grid.size());
    parallel_for(points.size(), threads, [&](std::size_t idx) {
        HardwareParams params = base;
        params.eta_c = grid.eta_c[idx / (n_eps * n_t0)];
        params.eps_g = grid.eps_g[(idx / n_t0) % n_eps];
        params.t0 = grid.t0[idx % n_t0];
        points[idx] = GridPoint{params, L_tot, optimize_all(params, L_tot, space)};
    });
    return points;
}

}  // namespace qrep
