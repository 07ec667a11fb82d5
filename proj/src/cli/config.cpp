#include "repeater/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qrep::cli {

namespace {

namespace pt = boost::property_tree;

KeyValues flatten(const pt::ptree& tree)
{
    KeyValues out;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            out[section] = body.data();
            continue;
        }
        for (const auto& [key, value] : body) out[section + "." + key] = value.data();
    }
    return out;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

double parse_double(const std::string& key, const std::string& raw)
{
    const auto text = trim(raw);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError(key + ": expected a number (got '" + raw + "')");
    return value;
}

std::int64_t parse_int(const std::string& key, const std::string& raw)
{
    const double value = parse_double(key, raw);
    if (!std::isfinite(value) || value != std::floor(value) || std::abs(value) > 9.0e15)
        throw ConfigError(key + ": expected an integer (got '" + raw + "')");
    return static_cast<std::int64_t>(value);
}

std::vector<double> parse_doubles(const std::string& key, const std::string& raw)
{
    std::vector<double> out;
    for (const auto& item : split_list(raw)) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError(key + ": expected a non-empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& key, const std::string& raw)
{
    std::vector<int> out;
    for (const auto& item : split_list(raw)) {
        const auto v = parse_int(key, item);
        if (v < -1'000'000'000 || v > 1'000'000'000) throw ConfigError(key + ": value out of range");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError(key + ": expected a non-empty list");
    return out;
}

int parse_small_int(const std::string& key, const std::string& raw)
{
    const auto values = parse_ints(key, raw);
    if (values.size() != 1) throw ConfigError(key + ": expected one integer");
    return values[0];
}

std::uint64_t parse_count(const std::string& key, const std::string& raw)
{
    const auto v = parse_int(key, raw);
    if (v < 0) throw ConfigError(key + ": expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

PurificationScheme parse_scheme(const std::string& key, const std::string& raw)
{
    const auto t = trim(raw);
    if (t == "deutsch") return PurificationScheme::Deutsch;
    if (t == "dur") return PurificationScheme::Dur;
    throw ConfigError(key + ": expected deutsch or dur (got '" + raw + "')");
}

CssCode parse_code(const std::string& key, int n_phys)
{
    for (const auto& code : kCssCatalog) {
        if (code.n_phys == n_phys) return code;
    }
    throw ConfigError(key + ": code must be one of 7, 23, 103 (got " + std::to_string(n_phys) + ")");
}

ProtocolConfig build_protocol(const KeyValues& kv)
{
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find("protocol." + key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto int_or = [&](const std::string& key, int fallback) {
        const auto* v = get(key);
        return v ? parse_small_int("protocol." + key, *v) : fallback;
    };
    auto double_or = [&](const std::string& key, double fallback) {
        const auto* v = get(key);
        return v ? parse_double("protocol." + key, *v) : fallback;
    };

    const auto family_text = trim(*get("family"));
    const auto family = parse_family(family_text);
    if (!family) throw ConfigError("protocol.family: unknown family '" + family_text + "'");

    auto allowed = [&](std::initializer_list<std::string_view> keys) {
        for (const auto& [k, v] : kv) {
            if (k.rfind("protocol.", 0) != 0) continue;
            const auto name = std::string_view(k).substr(9);
            if (name == "family") continue;
            if (std::find(keys.begin(), keys.end(), name) == keys.end())
                throw ConfigError(k + ": not used by family " + family_text);
        }
    };

    switch (*family) {
    case Family::Gen1: {
        allowed({"scheme", "N", "M"});
        Gen1Config c;
        if (const auto* s = get("scheme")) c.scheme = parse_scheme("protocol.scheme", *s);
        c.N = int_or("N", 1);
        if (const auto* m = get("M"))
            c.M = parse_ints("protocol.M", *m);
        else
            c.M.assign(static_cast<std::size_t>(std::max(c.N, 0)) + 1, 0);
        return c;
    }
    case Family::Gen2NoEnc: {
        allowed({"M", "L0", "n_eg"});
        Gen2NoEncConfig c;
        c.M = int_or("M", c.M);
        c.L0 = double_or("L0", c.L0);
        c.n_eg = int_or("n_eg", c.n_eg);
        return c;
    }
    case Family::Gen2Enc: {
        allowed({"code", "M", "L0", "n_eg"});
        Gen2EncConfig c;
        if (get("code")) c.code = parse_code("protocol.code", int_or("code", 7));
        c.M = int_or("M", c.M);
        c.L0 = double_or("L0", c.L0);
        c.n_eg = int_or("n_eg", c.n_eg);
        return c;
    }
    case Family::Gen3: {
        allowed({"n", "m", "L0"});
        Gen3Config c;
        c.n = int_or("n", c.n);
        c.m = int_or("m", c.m);
        c.L0 = double_or("L0", c.L0);
        return c;
    }
    }
    throw ConfigError("protocol.family: unsupported");
}

}  // namespace

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys{
        "hardware.eta_c", "hardware.eps_g", "hardware.xi", "hardware.eps_d", "hardware.t0",
        "hardware.L_att", "hardware.c_fiber", "hardware.L_tot",
        "protocol.family", "protocol.scheme", "protocol.N", "protocol.M", "protocol.code",
        "protocol.n_eg", "protocol.L0", "protocol.n", "protocol.m",
        "search.gen1.N_min", "search.gen1.N_max", "search.gen1.M_max", "search.gen1.schemes",
        "search.gen2_noenc.divisors", "search.gen2_noenc.min_L0", "search.gen2_noenc.M",
        "search.gen2_noenc.n_eg",
        "search.gen2_enc.codes", "search.gen2_enc.divisors", "search.gen2_enc.min_L0",
        "search.gen2_enc.M", "search.gen2_enc.n_eg",
        "search.gen3.n_min", "search.gen3.n_max", "search.gen3.m_min", "search.gen3.m_max",
        "search.gen3.max_qubits", "search.gen3.L0",
        "sweep.axis", "sweep.values",
        "region.eta_c", "region.eps_g", "region.t0",
        "output.path",
        "validate.suite", "validate.qpc_trials", "validate.gen1_trials", "validate.seed",
    };
    return keys;
}

KeyValues read_ini_file(const std::string& path)
{
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    return flatten(tree);
}

KeyValues read_ini_text(const std::string& text)
{
    std::istringstream is(text);
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config text: ") + e.what());
    }
    return flatten(tree);
}

std::pair<std::string, std::string> parse_override(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value (got '" + text + "')");
    return {trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1))};
}

RunConfig build_config(const std::vector<KeyValues>& layers)
{
    KeyValues kv;
    for (const auto& layer : layers) {
        for (const auto& [k, v] : layer) kv[k] = v;
    }
    const auto& keys = known_keys();
    for (const auto& [k, v] : kv) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ConfigError("unknown config key '" + k + "'");
    }

    RunConfig rc;
    auto with = [&](const std::string& key, auto&& apply) {
        if (const auto it = kv.find(key); it != kv.end()) apply(key, it->second);
    };
    auto set_double = [&](const std::string& key, double& target) {
        with(key, [&](const auto& k, const auto& v) { target = parse_double(k, v); });
    };
    auto set_int = [&](const std::string& key, int& target) {
        with(key, [&](const auto& k, const auto& v) { target = parse_small_int(k, v); });
    };
    auto set_ints = [&](const std::string& key, std::vector<int>& target) {
        with(key, [&](const auto& k, const auto& v) { target = parse_ints(k, v); });
    };
    auto set_doubles = [&](const std::string& key, std::vector<double>& target) {
        with(key, [&](const auto& k, const auto& v) { target = parse_doubles(k, v); });
    };

    auto& hw = rc.hardware;
    set_double("hardware.eta_c", hw.eta_c);
    set_double("hardware.eps_g", hw.eps_g);
    with("hardware.xi", [&](const auto& k, const auto& v) { hw.xi = parse_double(k, v); });
    set_double("hardware.eps_d", hw.eps_d);
    set_double("hardware.t0", hw.t0);
    set_double("hardware.L_att", hw.L_att);
    set_double("hardware.c_fiber", hw.c_fiber);
    set_double("hardware.L_tot", rc.L_tot);

    if (kv.count("protocol.family")) {
        rc.protocol = build_protocol(kv);
    } else {
        for (const auto& [k, v] : kv) {
            if (k.rfind("protocol.", 0) == 0) throw ConfigError(k + ": protocol.family is required");
        }
    }

    auto& g1 = rc.space.gen1;
    set_int("search.gen1.N_min", g1.N_min);
    set_int("search.gen1.N_max", g1.N_max);
    set_int("search.gen1.M_max", g1.M_max);
    with("search.gen1.schemes", [&](const auto& k, const auto& v) {
        g1.schemes.clear();
        for (const auto& item : split_list(v)) g1.schemes.push_back(parse_scheme(k, item));
    });

    auto grid = [&](const std::string& prefix, Gen2Grid& g) {
        set_ints(prefix + ".divisors", g.spacing_divisors);
        set_double(prefix + ".min_L0", g.min_L0);
        set_ints(prefix + ".M", g.M);
        set_ints(prefix + ".n_eg", g.n_eg);
    };
    grid("search.gen2_noenc", rc.space.gen2_noenc);
    grid("search.gen2_enc", rc.space.gen2_enc.grid);
    with("search.gen2_enc.codes", [&](const auto& k, const auto& v) {
        rc.space.gen2_enc.codes.clear();
        for (int n : parse_ints(k, v)) rc.space.gen2_enc.codes.push_back(parse_code(k, n));
    });

    auto& g3 = rc.space.gen3;
    set_int("search.gen3.n_min", g3.n_min);
    set_int("search.gen3.n_max", g3.n_max);
    set_int("search.gen3.m_min", g3.m_min);
    set_int("search.gen3.m_max", g3.m_max);
    set_int("search.gen3.max_qubits", g3.max_qubits);
    set_doubles("search.gen3.L0", g3.L0);

    with("sweep.axis", [&](const auto& k, const auto& v) {
        const auto axis = parse_axis(trim(v));
        if (!axis) throw ConfigError(k + ": expected eta_c, eps_g or t0 (got '" + v + "')");
        rc.sweep.axis = *axis;
    });
    set_doubles("sweep.values", rc.sweep.values);

    set_doubles("region.eta_c", rc.region.eta_c);
    set_doubles("region.eps_g", rc.region.eps_g);
    set_doubles("region.t0", rc.region.t0);

    with("output.path", [&](const auto&, const auto& v) { rc.output_path = trim(v); });

    with("validate.suite", [&](const auto&, const auto& v) { rc.validate.suite = trim(v); });
    with("validate.qpc_trials",
         [&](const auto& k, const auto& v) { rc.validate.qpc_trials = parse_count(k, v); });
    with("validate.gen1_trials",
         [&](const auto& k, const auto& v) { rc.validate.gen1_trials = parse_count(k, v); });
    with("validate.seed", [&](const auto& k, const auto& v) { rc.validate.seed = parse_count(k, v); });

    return rc;
}

}  // namespace qrep::cli
