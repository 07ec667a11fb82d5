#include "repeater/validate.hpp"

#include <cmath>
#include <sstream>

namespace qrep {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

template <class T>
std::string fmt(std::string_view what, T value)
{
    std::ostringstream os;
    os.precision(17);
    os << what << " (got " << value << ")";
    return os.str();
}

void check_spacing(double L0, std::vector<std::string>& out)
{
    if (!(L0 > 0.0) || !std::isfinite(L0)) out.push_back(fmt("L0 must be > 0 km", L0));
}

void check_gen1(const Gen1Config& c, std::vector<std::string>& out)
{
    if (c.N < 1) out.push_back(fmt("gen1 N must be >= 1", c.N));
    if (c.N >= 0 && c.M.size() != static_cast<std::size_t>(c.N) + 1)
        out.push_back(fmt("gen1 M must have N+1 entries", c.M.size()));
    for (int m : c.M) {
        if (m < 0) {
            out.push_back(fmt("gen1 M_i must be >= 0", m));
            break;
        }
    }
}

void check_gen2_common(int M, double L0, int n_eg, std::vector<std::string>& out)
{
    if (M < 1) out.push_back(fmt("gen2 M must be >= 1", M));
    if (n_eg < 1) out.push_back(fmt("gen2 n_eg must be >= 1", n_eg));
    check_spacing(L0, out);
}

void check_gen3(const Gen3Config& c, std::vector<std::string>& out)
{
    if (c.n < 2 || c.n > 20) out.push_back(fmt("gen3 n must be in [2,20]", c.n));
    if (c.m < 2 || c.m > 20) out.push_back(fmt("gen3 m must be in [2,20]", c.m));
    if (c.n * c.m > 200) out.push_back(fmt("gen3 n*m must be <= 200", c.n * c.m));
    check_spacing(c.L0, out);
}

}  // namespace

std::vector<std::string> validate(const HardwareParams& p)
{
    std::vector<std::string> out;
    if (!is_probability(p.eta_c)) out.push_back(fmt("eta_c out of [0,1]", p.eta_c));
    if (!is_probability(p.eps_g)) out.push_back(fmt("eps_g out of [0,1]", p.eps_g));
    if (p.xi && !is_probability(*p.xi)) out.push_back(fmt("xi out of [0,1]", *p.xi));
    if (!is_probability(p.eps_d)) out.push_back(fmt("eps_d out of [0,1]", p.eps_d));
    if (!(p.t0 > 0.0) || !std::isfinite(p.t0)) out.push_back(fmt("t0 must be > 0 s", p.t0));
    if (!(p.L_att > 0.0)) out.push_back(fmt("L_att must be > 0 km", p.L_att));
    if (!(p.c_fiber > 0.0)) out.push_back(fmt("c_fiber must be > 0 km/s", p.c_fiber));
    return out;
}

std::vector<std::string> validate(const HardwareParams& params, const ProtocolConfig& config,
                                  double L_tot)
{
    auto out = validate(params);
    if (!(L_tot > 0.0) || !std::isfinite(L_tot)) out.push_back(fmt("L_tot must be > 0 km", L_tot));

    if (const auto* g1 = std::get_if<Gen1Config>(&config)) {
        check_gen1(*g1, out);
    } else if (const auto* g2 = std::get_if<Gen2NoEncConfig>(&config)) {
        check_gen2_common(g2->M, g2->L0, g2->n_eg, out);
    } else if (const auto* ge = std::get_if<Gen2EncConfig>(&config)) {
        check_gen2_common(ge->M, ge->L0, ge->n_eg, out);
        if (!in_css_catalog(ge->code))
            out.push_back(fmt("gen2 code must be one of [[7,1,3]], [[23,1,7]], [[103,1,19]]; N",
                              ge->code.n_phys));
    } else if (const auto* g3 = std::get_if<Gen3Config>(&config)) {
        check_gen3(*g3, out);
    }
    return out;
}

void require_valid(const HardwareParams& params, const ProtocolConfig& config, double L_tot)
{
    auto violations = validate(params, config, L_tot);
    if (!violations.empty()) throw InvalidInput(std::move(violations));
}

}  // namespace qrep
