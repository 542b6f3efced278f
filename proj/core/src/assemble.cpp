#include "heightbounds/assemble.hpp"

#include <cmath>
#include <stdexcept>

namespace hb
{

namespace
{

constexpr double log_term_slack = 1e-9;

PlaceSummary run_place(const EmbeddedCurve &ec, int eps_v, double eps, OptimizerConfig config)
{
    config.eps = eps;
    PlaceSummary ps;
    ps.ec = ec;
    ps.eps_v = eps_v;
    ps.lat = make_lattice(ec);
    ps.ctx = build_context(ec, ps.lat);
    ps.sup_cert = optimize(ps.ctx, Direction::sup, config);
    ps.inf_cert = optimize(ps.ctx, Direction::inf, config);
    return ps;
}

HeightDifferenceBounds assemble_bounds(const std::vector<PlaceSummary> &places, int degree,
                                       double log_abs_norm_disc, double log_stable_norm, double eps)
{
    HeightDifferenceBounds out;
    out.degree = degree;
    out.log_abs_norm_disc = log_abs_norm_disc;
    // The stable discriminant is the degree-normalized norm of the minimal
    // discriminant; the caller passes the norm-form log.
    out.log_stable_disc = log_stable_norm / degree;
    out.eps = eps;
    out.certified = true;
    double sum_sup = 0.0, sum_inf = 0.0, eps_eff = 0.0;
    for (const PlaceSummary &ps : places) {
        out.phi_sup.push_back(ps.sup_cert.mu);
        out.phi_inf.push_back(ps.inf_cert.mu);
        sum_sup += ps.eps_v * ps.sup_cert.mu;
        sum_inf += ps.eps_v * ps.inf_cert.mu;
        eps_eff = std::max({eps_eff, ps.sup_cert.eps_effective, ps.inf_cert.eps_effective});
        out.certified = out.certified && ps.sup_cert.certified && ps.inf_cert.certified;
    }
    out.inf_bound = sum_inf / degree - log_abs_norm_disc / (6.0 * degree);
    out.sup_bound = sum_sup / degree + out.log_stable_disc / 12.0;
    out.eps_total = (places.empty() ? eps : eps_eff) + log_term_slack;
    return out;
}

} // namespace

CurveAnalysis analyze(const CurveQ &curve, double eps, const OptimizerConfig &config)
{
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    CurveAnalysis an;
    an.curve = curve;
    an.inv = invariants(curve);
    if (an.inv.disc == 0) {
        throw singular_curve_error();
    }
    an.disc_factors = factor(an.inv.disc);
    an.stable_factors = stable_discriminant(an.inv);
    an.place = run_place(embed(curve), 1, eps, config);
    an.bounds = assemble_bounds({an.place}, 1, log_abs(an.disc_factors), log_abs(an.stable_factors), eps);
    return an;
}

HeightDifferenceBounds height_bounds(const CurveQ &curve, double eps, const OptimizerConfig &config)
{
    return analyze(curve, eps, config).bounds;
}

HeightDifferenceBounds height_bounds_embedded(const std::vector<EmbeddedPlace> &places, int degree,
                                              double log_abs_norm_disc, double log_stable_norm, double eps,
                                              const OptimizerConfig &config)
{
    if (degree <= 0) {
        throw std::invalid_argument("degree must be positive");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    std::vector<PlaceSummary> summaries;
    summaries.reserve(places.size());
    for (const EmbeddedPlace &pl : places) {
        if (pl.eps_v != 1 && pl.eps_v != 2) {
            throw std::invalid_argument("eps_v must be 1 or 2");
        }
        summaries.push_back(run_place(embed(pl.a), pl.eps_v, eps, config));
    }
    return assemble_bounds(summaries, degree, log_abs_norm_disc, log_stable_norm, eps);
}

} // namespace hb
