#include "heightbounds/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "heightbounds/detail/cubic.hpp"

namespace hb
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double boundary_tol = 1e-12;

double lambda_v(cplx z, const PhiContext &ctx)
{
    return -log_abs_sigma(z, ctx.lat) + 0.5 * quadratic_form(z, ctx.lat) - ctx.log_abs_disc / 12.0;
}

double phi_outside(cplx z, const PhiContext &ctx)
{
    return -lambda_v(z - ctx.t1.z, ctx) - lambda_v(z + ctx.t1.z, ctx) + ctx.I_v;
}

double phi_inside(cplx z, const PhiContext &ctx)
{
    return -2.0 * lambda_v(z, ctx);
}

} // namespace

double branch_radius(cplx z, const PhiContext &ctx)
{
    try {
        return std::abs(wp(z, ctx.lat) - ctx.eb2 / 12.0);
    } catch (const pole_error &) {
        return std::numeric_limits<double>::infinity();
    }
}

double phi(cplx z, const PhiContext &ctx, TieRule tie)
{
    double r = branch_radius(z, ctx);
    if (r >= 1.0 + boundary_tol) {
        return phi_outside(z, ctx);
    }
    if (r <= 1.0 - boundary_tol) {
        return phi_inside(z, ctx);
    }
    double out = phi_outside(z, ctx), in = phi_inside(z, ctx);
    switch (tie) {
        case TieRule::upper:
            return std::max(out, in);
        case TieRule::lower:
            return std::min(out, in);
        default:
            return 0.5 * (out + in);
    }
}

cplx W(cplx z, const PhiContext &ctx)
{
    double r = branch_radius(z, ctx);
    if (std::abs(r - 1.0) < boundary_tol) {
        throw boundary_error("W queried on the branch boundary S");
    }
    if (r > 1.0) {
        return 0.5 * (Z_field(z - ctx.t1.z, ctx.lat) + Z_field(z + ctx.t1.z, ctx.lat));
    }
    return Z_field(z, ctx.lat);
}

// ---------------------------------------------------------------------------
// Certified upper bound for J.
//
// |P(e^{i theta})| = 4 prod_j |e^{i theta} - r_j| over the roots of the
// cubic. Over an angular interval the minimum of each factor is attained at
// the angle closest to arg(r_j), which gives a rigorous interval lower bound
// for |P| and hence an upper bound h/sqrt(min|P|) for the contribution.
// Intervals are split adaptively; a root on or near the circle makes that
// minimum useless, and its factor is instead bounded through the exact
// identity |e^{i theta} - rho e^{i alpha}|^2 = (1-rho)^2 +
// 4 rho sin^2((theta-alpha)/2) linearized from below by the chord slope of
// sin, which leaves a closed-form integrable model for the interval.
// ---------------------------------------------------------------------------

namespace
{

struct CircleRoot {
    double rho;   // modulus
    double alpha; // argument
    double delta; // |rho - 1| deflated by the positional uncertainty
    double err;
};

double angular_distance(double theta, double alpha)
{
    double d = std::fmod(std::abs(theta - alpha), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

// Angular offsets of [a, b] from alpha: t_lo = 0 when alpha lies inside.
void offsets(double a, double b, double alpha, double &t_lo, double &t_hi, double &left, double &right)
{
    bool contains = false;
    double al = alpha;
    for (int k = -1; k <= 1; ++k) {
        double cand = alpha + 2.0 * pi * k;
        if (cand >= a && cand <= b) {
            contains = true;
            al = cand;
        }
    }
    if (contains) {
        t_lo = 0.0;
        left = al - a;
        right = b - al;
        t_hi = std::max(left, right);
    } else {
        double da = angular_distance(a, alpha), db = angular_distance(b, alpha);
        t_lo = std::min(da, db);
        t_hi = std::max(da, db);
        left = right = 0.0;
    }
}

// Exact minimum of |e^{i theta} - r| over theta in [a, b] (deflated): the
// chord distance is monotone in the angular offset.
double min_dist(const CircleRoot &r, double a, double b)
{
    double t_lo, t_hi, l, rr;
    offsets(a, b, r.alpha, t_lo, t_hi, l, rr);
    double d = std::sqrt((1.0 - r.rho) * (1.0 - r.rho) + 4.0 * r.rho * std::pow(std::sin(t_lo / 2.0), 2));
    return std::max(0.0, d - r.err);
}

// int_0^t ds / sqrt(max(delta, beta s)): the closed-form primitive of the
// linearized singular factor.
double singular_primitive(double delta, double beta, double t)
{
    if (t <= 0.0) {
        return 0.0;
    }
    if (delta <= 0.0) {
        return 2.0 * std::sqrt(t / beta);
    }
    double knee = delta / beta;
    if (t <= knee) {
        return t / std::sqrt(delta);
    }
    return knee / std::sqrt(delta) + 2.0 * (std::sqrt(t) - std::sqrt(knee)) / std::sqrt(beta);
}

} // namespace

double path_bound_J(cplx b2, cplx b4, cplx b6)
{
    auto roots = detail::cubic_roots(b2 / 4.0, b4 / 2.0, b6 / 4.0);
    // A clustered pair near the unit circle cannot be told apart from a
    // double root at this precision, and a double root on the circle makes
    // the integral diverge; refuse to certify either.
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[i] - roots[j]) < 1e-5 &&
                std::min(std::abs(std::abs(roots[i]) - 1.0), std::abs(std::abs(roots[j]) - 1.0)) < 1e-4) {
                throw unbounded_error("path_bound_J: (near-)double root on the unit circle");
            }
        }
    }
    std::vector<CircleRoot> cr;
    for (cplx r : roots) {
        // a-posteriori positional error of the polished root
        cplx pr = ((4.0 * r + b2) * r + 2.0 * b4) * r + b6;
        cplx dpr = (12.0 * r + 2.0 * b2) * r + 2.0 * b4;
        double err = 1e-12 * (1.0 + std::abs(r));
        if (std::abs(dpr) > 1e-30) {
            err += 2.0 * std::abs(pr) / std::abs(dpr);
        } else {
            err += 1.0; // degenerate; forces the conservative path
        }
        double rho = std::abs(r);
        cr.push_back({rho, std::arg(r), std::max(0.0, std::abs(rho - 1.0) - err), err});
    }

    auto value_at = [&](double theta) {
        cplx w = std::polar(1.0, theta);
        return std::abs(((4.0 * w + b2) * w + 2.0 * b4) * w + b6);
    };

    // Upper bound for the contribution of [a, b] when a single root
    // dominates the small values of |P| there; c bounds 4 * the product of
    // the other factors from below. Valid only while the angular offset from
    // alpha is monotone across the interval (no antipode crossing), so wide
    // intervals return infinity and get split instead.
    auto model_bound = [&](const CircleRoot &r, double c, double a, double b) {
        double h = b - a;
        double t_lo, t_hi, left, right;
        offsets(a, b, r.alpha, t_lo, t_hi, left, right);
        if (h > pi / 2.0 || t_lo + h > pi) {
            return std::numeric_limits<double>::infinity();
        }
        double theta_span = std::min(t_lo + h, pi);
        // chord slope: 2 sqrt(rho) |sin(t/2)| >= beta * t on [0, theta_span]
        double beta = theta_span > 0.0
                          ? std::sqrt(r.rho) * std::sin(theta_span / 2.0) / (theta_span / 2.0)
                          : std::sqrt(r.rho);
        beta = std::max(beta - r.err, 1e-300);
        double integral = (t_lo == 0.0)
                              ? singular_primitive(r.delta, beta, left) + singular_primitive(r.delta, beta, right)
                              : singular_primitive(r.delta, beta, t_lo + h) - singular_primitive(r.delta, beta, t_lo);
        return integral / std::sqrt(c);
    };

    struct Interval {
        double a, b;
    };
    std::vector<Interval> stack{{0.0, 2.0 * pi}};
    double total = 0.0;
    const double width_floor = 2.0 * pi / std::pow(2.0, 40); // ~5.7e-12
    std::size_t processed = 0;

    while (!stack.empty()) {
        if (++processed > 2000000) {
            throw no_convergence_error("path_bound_J: refinement budget exhausted");
        }
        Interval iv = stack.back();
        stack.pop_back();
        double h = iv.b - iv.a;

        std::array<double, 3> dist{};
        int nearest = -1; // near-circle root whose factor may vanish here
        for (int k = 0; k < 3; ++k) {
            dist[k] = min_dist(cr[k], iv.a, iv.b);
            if (cr[k].delta < 0.05 && dist[k] < 0.1 && (nearest < 0 || dist[k] < dist[nearest])) {
                nearest = k;
            }
        }

        double m_all = 4.0 * dist[0] * dist[1] * dist[2];
        if (m_all > 0.0) {
            double ub = h / std::sqrt(m_all);
            if (nearest >= 0) {
                double c = 4.0;
                for (int k = 0; k < 3; ++k) {
                    if (k != nearest) {
                        c *= dist[k];
                    }
                }
                ub = std::min(ub, model_bound(cr[nearest], c, iv.a, iv.b));
            }
            double v = value_at(0.5 * (iv.a + iv.b));
            double est = v > 0.0 ? h / std::sqrt(v) : std::numeric_limits<double>::infinity();
            if (ub <= est * (1.0 + 1e-4) + 1e-13 || h <= width_floor) {
                total += ub;
                continue;
            }
        } else {
            // Some factor vanishes on this interval: the midpoint sample says
            // nothing, so shrink to a fixed width before trusting the
            // integrable-singularity model.
            double c = 4.0;
            bool c_ok = nearest >= 0;
            for (int k = 0; k < 3; ++k) {
                if (k != nearest) {
                    if (dist[k] <= 0.0) {
                        c_ok = false; // two vanishing factors; keep splitting
                    }
                    c *= dist[k];
                }
            }
            if (c_ok && h <= 1e-4) {
                double ub = model_bound(cr[nearest], c, iv.a, iv.b);
                if (std::isfinite(ub)) {
                    total += ub;
                    continue;
                }
            }
            if (!c_ok && h <= width_floor) {
                // Two vanishing factors inside a ~6e-12 interval.
                throw unbounded_error("path_bound_J: singular fallback failed");
            }
        }
        double mid = 0.5 * (iv.a + iv.b);
        stack.push_back({iv.a, mid});
        stack.push_back({mid, iv.b});
    }
    return total;
}

SeedBounds seed_bounds(const PhiContext &ctx, TorusPoint seed)
{
    double zin = std::abs(Z_field(seed.z, ctx.lat));
    double zout = std::abs(0.5 * (Z_field(seed.z - ctx.t1.z, ctx.lat) + Z_field(seed.z + ctx.t1.z, ctx.lat)));
    SeedBounds sb;
    sb.B_in = zin + ctx.M1 * ctx.J;
    sb.B_out = zout + ctx.M2 * ctx.J;
    sb.M_global = std::max(sb.B_in, sb.B_out);
    return sb;
}

SeedBounds seed_bounds(const PhiContext &ctx)
{
    return seed_bounds(ctx, ctx.p_seed);
}

double local_lipschitz(const PhiContext &ctx, Branch branch)
{
    double base = std::abs(ctx.lat.C + ctx.eb2 / 12.0) + std::abs(ctx.lat.D);
    if (branch == Branch::inside) {
        return base + 1.0;
    }
    return base + 0.5 * (std::abs(ctx.eb4) + std::abs(ctx.eb6));
}

PhiContext build_context(const EmbeddedCurve &ec, const Lattice &lat)
{
    PhiContext ctx;
    ctx.lat = lat;
    ctx.eb2 = ec.b2;
    ctx.eb4 = ec.b4;
    ctx.eb6 = ec.b6;
    ctx.log_abs_disc = std::log(std::abs(ec.disc));
    ctx.t1 = elliptic_log(0.0, lat, ec.b2);

    // Seeds on S: x-values on the unit circle whose elliptic logs land
    // cleanly (away from the poles of the two branch formulas).
    const double omega_scale = std::abs(lat.omega2);
    std::vector<TorusPoint> seeds;
    for (int k = 0; k < 12 && seeds.size() < 4; ++k) {
        double theta = 2.0 * pi * k / 12.0 + 0.1;
        TorusPoint p;
        try {
            p = elliptic_log(std::polar(1.0, theta), lat, ec.b2);
        } catch (const no_convergence_error &) {
            continue;
        }
        if (std::abs(branch_radius(p.z, ctx) - 1.0) > 1e-7) {
            continue;
        }
        if (std::abs(reduce_z(p.z - ctx.t1.z, lat)) < 1e-6 * omega_scale ||
            std::abs(reduce_z(p.z + ctx.t1.z, lat)) < 1e-6 * omega_scale ||
            std::abs(p.z) < 1e-6 * omega_scale) {
            continue;
        }
        seeds.push_back(p);
    }
    if (seeds.size() < 4) {
        throw no_convergence_error("build_context: could not place four seed points on S");
    }

    auto matching_constant = [&](const TorusPoint &p) {
        return -2.0 * lambda_v(p.z, ctx) + lambda_v(p.z - ctx.t1.z, ctx) + lambda_v(p.z + ctx.t1.z, ctx);
    };
    ctx.p_seed = seeds[0];
    ctx.I_v = matching_constant(seeds[0]);
    for (std::size_t k = 1; k < 4; ++k) {
        if (std::abs(matching_constant(seeds[k]) - ctx.I_v) > 1e-6) {
            throw no_convergence_error("build_context: I_v mismatch between seed points on S");
        }
    }

    ctx.J = path_bound_J(ec.b2, ec.b4, ec.b6);
    ctx.M1 = std::abs(lat.C + ec.b2 / 12.0) + std::abs(lat.D) + 1.0;
    ctx.M2 = std::abs(lat.C + ec.b2 / 12.0) + std::abs(lat.D) + 0.5 * (std::abs(ec.b4) + std::abs(ec.b6));
    SeedBounds sb = seed_bounds(ctx, ctx.p_seed);
    ctx.B_in = sb.B_in;
    ctx.B_out = sb.B_out;
    ctx.M_global = sb.M_global;
    return ctx;
}

} // namespace hb
