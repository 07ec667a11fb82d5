#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "repeater/optimizer.hpp"
#include "repeater/types.hpp"

namespace qrep::cli {

// Bad configuration text: unknown key, unparsable value, missing file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flattened "section.key" -> raw value.
using KeyValues = std::map<std::string, std::string>;

struct SweepSettings {
    SweepAxis axis = SweepAxis::EpsG;
    std::vector<double> values{1e-4, 1e-3, 1e-2};
};

struct ValidateSettings {
    std::string suite = "all";
    std::uint64_t qpc_trials = 1'000'000;
    std::uint64_t gen1_trials = 100'000;
    std::uint64_t seed = 1;
};

struct RunConfig {
    HardwareParams hardware;
    double L_tot = 1000.0;  // km
    std::optional<ProtocolConfig> protocol;
    SearchSpace space;
    SweepSettings sweep;
    RegionGrid region = RegionGrid::defaults();
    std::optional<std::string> output_path;
    ValidateSettings validate;
};

// Every key the config accepts, in documentation order.
const std::vector<std::string>& known_keys();

KeyValues read_ini_file(const std::string& path);
KeyValues read_ini_text(const std::string& text);

// "key=value" from --set.
std::pair<std::string, std::string> parse_override(const std::string& text);

// Layers apply in order, later layers win. Throws ConfigError.
RunConfig build_config(const std::vector<KeyValues>& layers);

}  // namespace qrep::cli
