#ifndef HEIGHTBOUNDS_ASSEMBLE_HPP
#define HEIGHTBOUNDS_ASSEMBLE_HPP

#include <array>
#include <vector>

#include "heightbounds/arith.hpp"
#include "heightbounds/optimizer.hpp"

namespace hb
{

/// Bounds on h - hhat over the algebraic closure, assembled from certified
/// archimedean extrema and the exact arithmetic terms:
///   degree * inf(h - hhat) = sum_v eps_v inf phi_v - log|N Delta| / 6
///   degree * sup(h - hhat) = sum_v eps_v sup phi_v + degree * log Delta_stable / 12
struct HeightDifferenceBounds {
    double inf_bound = 0.0;
    double sup_bound = 0.0;
    std::vector<double> phi_inf; // certified per-place extrema (mu values)
    std::vector<double> phi_sup;
    double log_abs_norm_disc = 0.0;
    double log_stable_disc = 0.0;
    int degree = 1;
    double eps = 0.0;
    double eps_total = 0.0;
    bool certified = false;
};

/// One archimedean place fully processed.
struct PlaceSummary {
    EmbeddedCurve ec;
    Lattice lat;
    PhiContext ctx;
    ExtremumCertificate sup_cert;
    ExtremumCertificate inf_cert;
    int eps_v = 1;
};

/// The rational case: everything a report needs in one pass.
struct CurveAnalysis {
    CurveQ curve;
    InvariantSet inv;
    FactoredInt disc_factors;
    FactoredInt stable_factors;
    PlaceSummary place;
    HeightDifferenceBounds bounds;
};

/// K = Q: one real place with eps_v = 1, extrema over E(C), exact
/// discriminant logs from the factorizations.
HeightDifferenceBounds height_bounds(const CurveQ &curve, double eps, const OptimizerConfig &config = {});

CurveAnalysis analyze(const CurveQ &curve, double eps, const OptimizerConfig &config = {});

/// General-K entry point: the caller supplies the embedded coefficients per
/// archimedean place, the local degrees eps_v in {1, 2}, and both arithmetic
/// log terms in norm form (log |N Delta| and log Nm Delta_min; the stored
/// log_stable_disc is the degree-normalized value). Only the archimedean
/// pipeline runs here.
struct EmbeddedPlace {
    std::array<cplx, 5> a; // a1, a2, a3, a4, a6 under the embedding
    int eps_v = 1;
};

HeightDifferenceBounds height_bounds_embedded(const std::vector<EmbeddedPlace> &places, int degree,
                                              double log_abs_norm_disc, double log_stable_norm, double eps,
                                              const OptimizerConfig &config = {});

} // namespace hb

#endif
