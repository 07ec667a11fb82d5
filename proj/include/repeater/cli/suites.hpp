#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qrep::cli {

// Below this many trials a comparison is reported as underpowered instead
// of being judged.
inline constexpr std::uint64_t kMinJudgedTrials = 1000;

enum class CheckStatus { Pass, Fail, Underpowered, Info };

struct Check {
    std::string name;
    CheckStatus status;
    std::string detail;
};

std::string_view status_name(CheckStatus status) noexcept;

// Monte Carlo decoder tallies against the exact decoder, 3 standard errors
// per outcome, for (4,4), (7,3), (10,5) in both bases.
std::vector<Check> qpc_suite(std::uint64_t trials, std::uint64_t seed, int threads);

// Sampled gen-1 delivery time against the analytic recursion: a loss-only
// ladder within 15%, the deterministic limit exactly, standard-error scaling
// under trial doubling, and the purified ladders' bias as information.
std::vector<Check> gen1_time_suite(std::uint64_t trials, std::uint64_t seed, int threads);

bool is_suite(std::string_view name) noexcept;  // qpc, gen1-time, all

bool suite_passed(const std::vector<Check>& checks) noexcept;

}  // namespace qrep::cli
