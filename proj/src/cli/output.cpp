#include "repeater/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "repeater/oracle_sim.hpp"

namespace qrep::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double value)
{
    if (std::isfinite(value)) return value;
    return format_number(value);
}

}  // namespace

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string fnv1a_hex(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string canonical_hardware(const HardwareParams& p, double L_tot)
{
    std::string out = "eta_c=" + format_number(p.eta_c) + " eps_g=" + format_number(p.eps_g);
    out += " xi=" + (p.xi ? format_number(*p.xi) : std::string("default"));
    out += " eps_d=" + format_number(p.eps_d) + " t0=" + format_number(p.t0);
    out += " L_att=" + format_number(p.L_att) + " c_fiber=" + format_number(p.c_fiber);
    out += " L_tot=" + format_number(L_tot) + "\n";
    return out;
}

std::string evaluate_record(const ProtocolConfig& config, const HardwareParams& params, double L_tot,
                            const CostResult& result)
{
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family_name(family_of(config));
    j["config"] = describe(config);
    j["eta_c"] = json_number(params.eta_c);
    j["eps_g"] = json_number(params.eps_g);
    j["xi"] = json_number(params.measurement_error());
    j["eps_d"] = json_number(params.eps_d);
    j["t0_s"] = json_number(params.t0);
    j["L_att_km"] = json_number(params.L_att);
    j["c_fiber_km_per_s"] = json_number(params.c_fiber);
    j["L_tot_km"] = json_number(L_tot);
    j["feasible"] = result.feasible;
    j["rate_sbits_per_s"] = json_number(result.rate_sbits_per_s);
    j["qubits_per_station"] = result.qubits_per_station;
    j["stations"] = result.stations;
    j["qubits_total"] = result.qubits_total();
    j["cost_C"] = json_number(result.cost_C);
    j["cost_coeff"] = json_number(result.cost_coeff);
    j["qber"] = json_number(result.qber);
    return j.dump();
}

void write_dataset(std::ostream& os, std::string_view command, std::string_view inputs,
                   const HardwareParams& base, std::span<const GridPoint> points)
{
    os << "# schema_version=" << kSchemaVersion << '\n';
    os << "# tool=repeater_cli " << kToolVersion << '\n';
    os << "# command=" << command << '\n';
    os << "# units: L_tot km, t0 s, rate sbit/s, cost_C qubit*s/sbit, cost_coeff qubit*s/(sbit*km)\n";
    os << "# L_att_km=" << format_number(base.L_att)
       << " c_fiber_km_per_s=" << format_number(base.c_fiber) << '\n';
    os << "# seed_policy=none (closed-form evaluation, no sampling) rng=" << kRngName << '\n';
    os << "# grid_hash=" << fnv1a_hex(inputs) << '\n';
    os << "# rows=" << points.size() << '\n';

    os << "eta_c,eps_g,xi,eps_d,t0,L_tot,winner,config,rate_sbits_per_s,cost_C,cost_coeff,feasible,qber";
    for (Family f : kAllFamilies) os << ",cost_coeff_" << family_name(f);
    os << '\n';

    for (const auto& pt : points) {
        const auto& p = pt.params;
        const auto& r = pt.report;
        os << format_number(p.eta_c) << ',' << format_number(p.eps_g) << ','
           << format_number(p.measurement_error()) << ',' << format_number(p.eps_d) << ','
           << format_number(p.t0) << ',' << format_number(pt.L_tot) << ',';
        if (r.winner) {
            os << family_name(*r.winner) << ',' << describe(*r.best_config) << ','
               << format_number(r.best.rate_sbits_per_s) << ',' << format_number(r.best.cost_C) << ','
               << format_number(r.best.cost_coeff) << ",1," << format_number(r.best.qber);
        } else {
            os << "infeasible,-,0,inf,inf,0,nan";
        }
        for (Family f : kAllFamilies) {
            const auto& fam = r.family(f);
            os << ',' << (fam ? format_number(fam->result.cost_coeff) : std::string("inf"));
        }
        os << '\n';
    }
}

}  // namespace qrep::cli
