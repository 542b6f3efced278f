#ifndef HEIGHTBOUNDS_TESTS_ORACLES_HPP
#define HEIGHTBOUNDS_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "heightbounds/assemble.hpp"

// Slow, implementation-independent reference routes used to freeze expected
// values: raw pairwise lattice sums for the Weierstrass functions, cotangent
// partial-fraction sums for the Eisenstein invariants, plain quadrature for
// the integrals. None of this shares code with the q-expansion production
// path.
namespace oracles
{

using hb::cplx;

struct Fixture {
    hb::CurveQ curve;
    hb::InvariantSet inv;
    hb::EmbeddedCurve ec;
    hb::Lattice lat;
    hb::PhiContext ctx;
};

/// Shared per-curve pipeline state, built once per process.
const Fixture &fix(const std::string &curve_text);

/// The four example curves: 11A3, 15A4, 5077A1 and the rank-4 curve.
const std::vector<std::string> &paper_curves();

/// p(z) by the absolutely convergent pairwise lattice sum over |m|,|n| <= N.
cplx wp_sum(cplx z, const hb::Lattice &lat, int N);

/// zeta(z) by the pairwise lattice sum.
cplx zeta_sum(cplx z, const hb::Lattice &lat, int N);

/// g2, g3 through cotangent partial fractions (no q-expansion involved).
cplx g2_cot(const hb::Lattice &lat);
cplx g3_cot(const hb::Lattice &lat);

/// Midpoint quadrature of the torus average of log|p - b2/12|.
double quad_Iv(const hb::PhiContext &ctx, int n);

/// Midpoint quadrature of int |dx| / |4x^3 + b2 x^2 + 2 b4 x + b6|^{1/2}
/// over the circle |x| = r.
double contour_integral(cplx b2, cplx b4, cplx b6, double r, int n);

/// (min, max) of phi over an n x n offset grid of the fundamental cell.
std::pair<double, double> phi_grid_extrema(const hb::PhiContext &ctx, int n);

/// Uniform point of the fundamental cell, at least `margin` cell units away
/// from the half-lattice points where test formulas degenerate.
cplx random_cell_point(const hb::Lattice &lat, std::mt19937_64 &rng, double margin = 0.02);

/// Centered finite differences: gradient of a real field and the Wirtinger
/// d/dz of a complex field.
std::pair<double, double> fd_gradient(const std::function<double(cplx)> &f, cplx z, double h);
cplx fd_wirtinger(const std::function<cplx(cplx)> &f, cplx z, double h);

} // namespace oracles

#endif
