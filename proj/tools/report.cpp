#include "report.hpp"

#include <cinttypes>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hb::tools
{

namespace
{

using nlohmann::json;

// Exact integers: JSON numbers while they fit in 64 bits, decimal strings
// beyond that.
json json_int(int128 v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(to_string(v));
}

json json_uint(uint128 v)
{
    if (v <= static_cast<uint128>(std::numeric_limits<std::uint64_t>::max())) {
        return json(static_cast<std::uint64_t>(v));
    }
    return json(to_string(v));
}

json json_cplx(cplx z)
{
    return json::array({z.real(), z.imag()});
}

json json_factors(const FactoredInt &f)
{
    json arr = json::array();
    for (const auto &[p, e] : f.factors) {
        arr.push_back(json::array({json_uint(p), e}));
    }
    return arr;
}

json json_cert(const ExtremumCertificate &c)
{
    return json{{"mu", c.mu},
                {"eps", c.eps},
                {"nodes", c.nodes_expanded},
                {"seconds", c.wall_seconds},
                {"certified", c.certified}};
}

std::string status_of(const CurveAnalysis &an)
{
    return an.bounds.certified ? "certified" : "uncertified";
}

std::string fmt(double v, const char *spec = "%.6f")
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_cplx(cplx z)
{
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.12g %+.12gi", z.real(), z.imag());
    return buf;
}

} // namespace

std::string render_json(const CurveAnalysis &an)
{
    json j;
    j["curve"] = {{"a1", json_int(an.curve.a1)},
                  {"a2", json_int(an.curve.a2)},
                  {"a3", json_int(an.curve.a3)},
                  {"a4", json_int(an.curve.a4)},
                  {"a6", json_int(an.curve.a6)}};
    j["disc"] = json_int(an.inv.disc);
    j["disc_factors"] = json_factors(an.disc_factors);
    j["stable_disc_factors"] = json_factors(an.stable_factors);
    j["j"] = {{"num", json_int(an.inv.j.num)}, {"den", json_int(an.inv.j.den)}};
    const Lattice &lat = an.place.lat;
    j["lattice"] = {{"omega1", json_cplx(lat.omega1)}, {"omega2", json_cplx(lat.omega2)},
                    {"tau", json_cplx(lat.tau)},       {"eta1", json_cplx(lat.eta1)},
                    {"eta2", json_cplx(lat.eta2)},     {"C", json_cplx(lat.C)},
                    {"D", lat.D}};
    const PhiContext &ctx = an.place.ctx;
    j["phi"] = {{"t1", json_cplx(ctx.t1.z)}, {"I_v", ctx.I_v}, {"M1", ctx.M1},
                {"M2", ctx.M2},              {"J", ctx.J},     {"M_global", ctx.M_global}};
    j["certificates"] = {{"sup", json_cert(an.place.sup_cert)}, {"inf", json_cert(an.place.inf_cert)}};
    j["bounds"] = {{"inf", an.bounds.inf_bound}, {"sup", an.bounds.sup_bound}, {"eps_total", an.bounds.eps_total}};
    j["status"] = status_of(an);
    return j.dump();
}

std::string render_text(const CurveAnalysis &an)
{
    std::ostringstream os;
    auto line = [&](const char *key, const std::string &val) { os << key << val << "\n"; };
    line("curve           ", to_string(an.curve));
    line("disc            ", to_string(an.inv.disc) + (an.inv.disc < 0 ? "  = -" : "  = ") +
                                 to_string(an.disc_factors));
    line("stable disc     ", to_string(an.stable_factors));
    line("j               ", to_string(an.inv.j.num) + "/" + to_string(an.inv.j.den));
    line("omega1          ", fmt_cplx(an.place.lat.omega1));
    line("omega2          ", fmt_cplx(an.place.lat.omega2));
    line("tau             ", fmt_cplx(an.place.lat.tau));
    line("eta1            ", fmt_cplx(an.place.lat.eta1));
    line("eta2            ", fmt_cplx(an.place.lat.eta2));
    line("C               ", fmt_cplx(an.place.lat.C));
    line("D               ", fmt(an.place.lat.D, "%.12g"));
    line("t1              ", fmt_cplx(an.place.ctx.t1.z));
    line("I_v             ", fmt(an.place.ctx.I_v, "%.9f"));
    line("M1              ", fmt(an.place.ctx.M1, "%.6g"));
    line("M2              ", fmt(an.place.ctx.M2, "%.6g"));
    line("J               ", fmt(an.place.ctx.J, "%.6g"));
    line("M_global        ", fmt(an.place.ctx.M_global, "%.6g"));
    auto cert_line = [&](const char *key, const ExtremumCertificate &c) {
        std::ostringstream cs;
        cs << fmt(c.mu, "%.6f") << "  (" << (c.certified ? "certified" : "UNCERTIFIED") << ", eps "
           << fmt(c.eps, "%.1e") << ", " << c.nodes_expanded << " nodes, " << fmt(c.wall_seconds, "%.3f")
           << " s)";
        line(key, cs.str());
    };
    cert_line("sup phi         ", an.place.sup_cert);
    cert_line("inf phi         ", an.place.inf_cert);
    os << "bounds          " << fmt(an.bounds.inf_bound) << " < h - hhat < " << fmt(an.bounds.sup_bound)
       << "   (eps_total " << fmt(an.bounds.eps_total, "%.3e") << ")\n";
    line("status          ", status_of(an));
    return os.str();
}

std::string render_table_header()
{
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s %14s %14s %12s %12s  %s", "curve", "inf_bound", "sup_bound",
                  "inf_phi", "sup_phi", "status");
    return buf;
}

std::string render_table_row(const std::string &curve_text, const CurveAnalysis &an)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-28s %14.6f %14.6f %12.6f %12.6f  %s", curve_text.c_str(),
                  an.bounds.inf_bound, an.bounds.sup_bound, an.place.inf_cert.mu, an.place.sup_cert.mu,
                  status_of(an).c_str());
    return buf;
}

std::string render_error_json(const std::string &input, const std::string &message)
{
    json j;
    j["input"] = input;
    j["status"] = "error";
    j["error"] = message;
    return j.dump();
}

std::string render_error_text(const std::string &input, const std::string &message)
{
    return "error: " + message + (input.empty() ? "" : "  [" + input + "]");
}

std::string render_phi_grid_csv(const PhiContext &ctx, int n)
{
    std::ostringstream os;
    os << "s1,s2,re_z,im_z,phi\n";
    char buf[192];
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            double s1 = (i + 0.5) / n - 0.5;
            double s2 = (k + 0.5) / n - 0.5;
            cplx z = s1 * ctx.lat.omega1 + s2 * ctx.lat.omega2;
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.17g,%.17g,%.17g\n", s1, s2, z.real(), z.imag(),
                          phi(z, ctx));
            os << buf;
        }
    }
    return os.str();
}

int exit_code_for(const CurveAnalysis &an)
{
    return an.bounds.certified ? exit_ok : exit_budget;
}

} // namespace hb::tools
