#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "repeater/optimizer.hpp"
#include "repeater/types.hpp"

namespace qrep::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "1.0.0";

// Shortest decimal text that parses back to the same double; "inf"/"-inf"/"nan".
std::string format_number(double value);

// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

// One JSON line describing a single evaluation.
std::string evaluate_record(const ProtocolConfig& config, const HardwareParams& params, double L_tot,
                            const CostResult& result);

// CSV dataset: '#' metadata lines, a header row and one row per point.
// `inputs` is the canonical text of everything that shaped the grid; its hash
// goes into the metadata.
void write_dataset(std::ostream& os, std::string_view command, std::string_view inputs,
                   const HardwareParams& base, std::span<const GridPoint> points);

// Canonical text of hardware parameters, used for hashing.
std::string canonical_hardware(const HardwareParams& params, double L_tot);

}  // namespace qrep::cli
