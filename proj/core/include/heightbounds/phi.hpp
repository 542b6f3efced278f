#ifndef HEIGHTBOUNDS_PHI_HPP
#define HEIGHTBOUNDS_PHI_HPP

#include "heightbounds/efun.hpp"

namespace hb
{

/// The two branches of phi, separated by the level set
/// S = { z : |p(z) - b2/12| = 1 }.
enum class Branch { inside, outside };

/// Branch selection on the boundary strip |r - 1| <= 1e-12: both branch
/// values agree to within the I_v matching tolerance; an optimizer picks the
/// side matching its direction.
enum class TieRule { mean, upper, lower };

/// Everything needed to evaluate phi and its certified bound constants on
/// one archimedean place.
struct PhiContext {
    Lattice lat;
    cplx eb2, eb4, eb6;  // embedded b-invariants
    double log_abs_disc; // log |Delta| of the embedded equation
    TorusPoint t1;       // p(t1) = b2/12; t2 = -t1
    TorusPoint p_seed;   // a point of S used to fix I_v and the seed bounds
    double I_v = 0.0;
    double M1 = 0.0, M2 = 0.0;
    double J = 0.0;
    double B_in = 0.0, B_out = 0.0;
    double M_global = 0.0;
};

/// Certified global bound data from a single seed evaluation on S.
struct SeedBounds {
    double B_in;
    double B_out;
    double M_global;
};

/// Assemble the full context: t1, a seed on S, the matching constant I_v
/// (checked for consistency at three further points of S), J, M1, M2 and the
/// global derivative bound.
PhiContext build_context(const EmbeddedCurve &ec, const Lattice &lat);

/// |p(z) - b2/12|; +infinity at the pole z = 0.
double branch_radius(cplx z, const PhiContext &ctx);

/// The archimedean correction function. Defined everywhere, z = 0 included.
double phi(cplx z, const PhiContext &ctx, TieRule tie = TieRule::mean);

/// The derivative field W of phi away from S; throws boundary_error when z
/// lies within 1e-12 of S in branch radius.
cplx W(cplx z, const PhiContext &ctx);

/// Certified upper bound for
///   J = int_0^{2pi} dtheta / |4 e^{3 i theta} + b2 e^{2 i theta}
///                              + 2 b4 e^{i theta} + b6|^{1/2}.
/// Near-circle roots of the cubic are handled by an integrable-singularity
/// bound; throws unbounded_error when even that fails.
double path_bound_J(cplx b2, cplx b4, cplx b6);

/// Global bound on |W| over C/Lambda minus S from one seed point.
SeedBounds seed_bounds(const PhiContext &ctx);
SeedBounds seed_bounds(const PhiContext &ctx, TorusPoint seed);

/// Lipschitz constant for W on any convex region contained in a single
/// branch.
double local_lipschitz(const PhiContext &ctx, Branch branch);

} // namespace hb

#endif
