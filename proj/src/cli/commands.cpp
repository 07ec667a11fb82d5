#include "repeater/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "repeater/cli/config.hpp"
#include "repeater/cli/output.hpp"
#include "repeater/cli/suites.hpp"
#include "repeater/optimizer.hpp"
#include "repeater/oracle_sim.hpp"
#include "repeater/validate.hpp"

namespace qrep::cli {

namespace {

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    int threads = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string suite;
};

int report_violations(std::ostream& err, const std::vector<std::string>& violations)
{
    err << "error: invalid input\n";
    for (const auto& v : violations) err << "  " << v << '\n';
    return kExitInputError;
}

std::string list_text(std::span<const double> values)
{
    std::string s;
    for (double v : values) s += format_number(v) + ",";
    return s;
}

// Writes to --out / output.path when set, otherwise to `out`.
int emit(const RunConfig& rc, std::ostream& out, std::ostream& err,
         const std::function<void(std::ostream&)>& write)
{
    if (!rc.output_path || rc.output_path->empty()) {
        write(out);
        return kExitOk;
    }
    std::ofstream file(*rc.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open output file '" << *rc.output_path << "'\n";
        return kExitInputError;
    }
    write(file);
    return file ? kExitOk : kExitInputError;
}

int cmd_evaluate(const RunConfig& rc, std::ostream& out, std::ostream& err)
{
    if (!rc.protocol) return report_violations(err, {"protocol.family is required for evaluate"});
    if (auto v = validate(rc.hardware, *rc.protocol, rc.L_tot); !v.empty())
        return report_violations(err, v);
    const auto result = evaluate(*rc.protocol, rc.hardware, rc.L_tot);
    return emit(rc, out, err, [&](std::ostream& os) {
        os << evaluate_record(*rc.protocol, rc.hardware, rc.L_tot, result) << '\n';
    });
}

std::vector<std::string> check_point(const HardwareParams& params, double L_tot)
{
    auto v = validate(params);
    if (!(L_tot > 0.0) || !std::isfinite(L_tot)) v.push_back("L_tot must be > 0");
    return v;
}

int cmd_grid(std::string_view command, const RunConfig& rc, int threads, std::ostream& out,
             std::ostream& err)
{
    if (auto v = rc.space.validate(); !v.empty()) return report_violations(err, v);

    std::string inputs = std::string(command) + "\n" + canonical_hardware(rc.hardware, rc.L_tot) +
                         rc.space.canonical();
    std::vector<GridPoint> points;

    if (command == "optimize") {
        if (auto v = check_point(rc.hardware, rc.L_tot); !v.empty()) return report_violations(err, v);
        points.push_back({rc.hardware, rc.L_tot, optimize_all(rc.hardware, rc.L_tot, rc.space)});
    } else if (command == "sweep") {
        for (double value : rc.sweep.values) {
            if (auto v = check_point(with_axis(rc.hardware, rc.sweep.axis, value), rc.L_tot); !v.empty())
                return report_violations(err, v);
        }
        inputs += "axis=" + std::string(axis_name(rc.sweep.axis)) + " values=" + list_text(rc.sweep.values) + "\n";
        points = sweep(rc.sweep.axis, rc.sweep.values, rc.hardware, rc.L_tot, rc.space, threads);
    } else {
        const auto& g = rc.region;
        for (auto [axis, values] : {std::pair{SweepAxis::EtaC, &g.eta_c}, std::pair{SweepAxis::EpsG, &g.eps_g},
                                    std::pair{SweepAxis::T0, &g.t0}}) {
            for (double value : *values) {
                if (auto v = check_point(with_axis(rc.hardware, axis, value), rc.L_tot); !v.empty())
                    return report_violations(err, v);
            }
        }
        inputs += "eta_c=" + list_text(g.eta_c) + " eps_g=" + list_text(g.eps_g) + " t0=" + list_text(g.t0) + "\n";
        points = region_map(g, rc.hardware, rc.L_tot, rc.space, threads);
    }

    return emit(rc, out, err, [&](std::ostream& os) {
        write_dataset(os, command, inputs, rc.hardware, points);
    });
}

int cmd_validate(const RunConfig& rc, const Options& opt, int threads, std::ostream& out,
                 std::ostream& err)
{
    const std::string suite = opt.suite.empty() ? rc.validate.suite : opt.suite;
    if (!is_suite(suite)) {
        err << "error: unknown suite '" << suite << "' (expected qpc, gen1-time or all)\n";
        return kExitInputError;
    }
    const std::uint64_t seed = opt.seed.value_or(rc.validate.seed);
    const std::uint64_t qpc_trials = opt.trials.value_or(rc.validate.qpc_trials);
    const std::uint64_t gen1_trials = opt.trials.value_or(rc.validate.gen1_trials);
    if (qpc_trials < 1 || gen1_trials < 2) {
        err << "error: trials must be >= 2\n";
        return kExitInputError;
    }

    std::vector<Check> checks;
    if (suite == "qpc" || suite == "all") {
        auto c = qpc_suite(qpc_trials, seed, threads);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (suite == "gen1-time" || suite == "all") {
        auto c = gen1_time_suite(gen1_trials, seed, threads);
        checks.insert(checks.end(), c.begin(), c.end());
    }

    const bool passed = suite_passed(checks);
    const int code = emit(rc, out, err, [&](std::ostream& os) {
        os << "# suite=" << suite << " seed=" << seed << " rng=" << kRngName << '\n';
        for (const auto& c : checks) os << status_name(c.status) << ' ' << c.name << ": " << c.detail << '\n';
        os << (passed ? "RESULT PASS" : "RESULT FAIL") << '\n';
    });
    if (code != kExitOk) return code;
    return passed ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Quantum repeater rate and cost calculator", "repeater_cli"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", opt.config_path, "INI config file (default: $REPEATER_CONFIG)");
    app.add_option("--set", opt.overrides, "Override a config key, key=value (repeatable)");
    app.add_option("--out", opt.out_path, "Write output to this file instead of stdout");
    app.add_option("--threads", opt.threads, "Worker threads (default: hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", opt.seed, "Seed for the Monte Carlo oracles");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate the [protocol] configuration");
    auto* optimize_cmd = app.add_subcommand("optimize", "Optimize all families at one point");
    auto* sweep_cmd = app.add_subcommand("sweep", "Optimize along the [sweep] axis");
    auto* region_cmd = app.add_subcommand("region-map", "Optimize over the [region] grid");
    auto* validate_cmd = app.add_subcommand("validate", "Compare analytic models with Monte Carlo oracles");
    validate_cmd->add_option("suite", opt.suite, "qpc, gen1-time or all");
    validate_cmd->add_option("--trials", opt.trials, "Trials per comparison");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        std::vector<KeyValues> layers;
        std::string path = opt.config_path;
        if (path.empty()) {
            if (const char* env = std::getenv(kConfigEnvVar)) path = env;
        }
        if (!path.empty()) {
            if (!std::ifstream(path)) throw ConfigError("cannot read config file '" + path + "'");
            layers.push_back(read_ini_file(path));
        }
        KeyValues cli_layer;
        for (const auto& o : opt.overrides) {
            auto [k, v] = parse_override(o);
            cli_layer[k] = v;
        }
        if (!opt.out_path.empty()) cli_layer["output.path"] = opt.out_path;
        layers.push_back(std::move(cli_layer));
        const RunConfig rc = build_config(layers);

        int threads = opt.threads;
        if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

        if (*evaluate_cmd) return cmd_evaluate(rc, out, err);
        if (*optimize_cmd) return cmd_grid("optimize", rc, threads, out, err);
        if (*sweep_cmd) return cmd_grid("sweep", rc, threads, out, err);
        if (*region_cmd) return cmd_grid("region-map", rc, threads, out, err);
        if (*validate_cmd) return cmd_validate(rc, opt, threads, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InvalidInput& e) {
        return report_violations(err, e.violations());
    }
    return kExitInputError;
}

}  // namespace qrep::cli
