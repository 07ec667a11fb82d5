#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repeater/types.hpp"

namespace qrep {

struct Gen1Space {
    int N_min = 1;
    int N_max = 7;
    int M_max = 2;  // per-level purification rounds 0..M_max
    std::vector<PurificationScheme> schemes{PurificationScheme::Deutsch, PurificationScheme::Dur};
};

// Spacing is L_tot / k for each divisor k, dropping spacings below min_L0.
struct Gen2Grid {
    std::vector<int> spacing_divisors{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    double min_L0 = 1.0;
    std::vector<int> M{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    std::vector<int> n_eg{1, 2, 5, 10};

    std::vector<double> spacings(double L_tot) const;
};

struct Gen2EncSpace {
    std::vector<CssCode> codes{kCssCatalog.begin(), kCssCatalog.end()};
    Gen2Grid grid;
};

struct Gen3Space {
    int n_min = 2, n_max = 20;
    int m_min = 2, m_max = 20;
    int max_qubits = 200;  // n * m
    std::vector<double> L0{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0,
                           5.5, 6.0, 6.5, 7.0, 7.5, 8.0, 8.5, 9.0, 9.5, 10.0};
};

struct SearchSpace {
    Gen1Space gen1;
    Gen2Grid gen2_noenc;
    Gen2EncSpace gen2_enc;
    Gen3Space gen3;

    std::vector<std::string> validate() const;
    // Stable text form, used for dataset hashing.
    std::string canonical() const;
};

// Every configuration of a family, sorted and without duplicates.
std::vector<ProtocolConfig> enumerate(Family family, const SearchSpace& space, double L_tot);

CostResult evaluate(const ProtocolConfig& config, const HardwareParams& params, double L_tot);

struct FamilyOptimum {
    ProtocolConfig config;
    CostResult result;
};

// Minimum cost coefficient over the family's grid; ties go to the
// lexicographically smaller configuration. nullopt when nothing is feasible
// or the family's model does not apply to these parameters.
std::optional<FamilyOptimum> optimize_family(Family family, const SearchSpace& space,
                                             const HardwareParams& params, double L_tot);

struct OptimumReport {
    std::optional<Family> winner;
    std::optional<ProtocolConfig> best_config;
    CostResult best;
    std::array<std::optional<FamilyOptimum>, 4> per_family;

    const std::optional<FamilyOptimum>& family(Family f) const
    {
        return per_family[static_cast<std::size_t>(f)];
    }
};

OptimumReport optimize_all(const HardwareParams& params, double L_tot, const SearchSpace& space);

enum class SweepAxis { EtaC, EpsG, T0 };

std::string_view axis_name(SweepAxis axis) noexcept;
std::optional<SweepAxis> parse_axis(std::string_view name) noexcept;
HardwareParams with_axis(HardwareParams params, SweepAxis axis, double value);

struct GridPoint {
    HardwareParams params;
    double L_tot = 0.0;
    OptimumReport report;
};

std::vector<GridPoint> sweep(SweepAxis axis, std::span<const double> values,
                             const HardwareParams& fixed, double L_tot, const SearchSpace& space,
                             int threads = 1);

struct RegionGrid {
    std::vector<double> eta_c;
    std::vector<double> eps_g;
    std::vector<double> t0;

    static RegionGrid defaults();
    std::size_t size() const noexcept { return eta_c.size() * eps_g.size() * t0.size(); }
};

// Points in eta_c-major, then eps_g, then t0 order.
std::vector<GridPoint> region_map(const RegionGrid& grid, const HardwareParams& base, double L_tot,
                                  const SearchSpace& space, int threads = 1);

// Evaluates fn(i) for i in [0, count) on `threads` workers; results land in
// index order so the output does not depend on the worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qrep
