#ifndef HEIGHTBOUNDS_EFUN_HPP
#define HEIGHTBOUNDS_EFUN_HPP

#include "heightbounds/lattice.hpp"

namespace hb
{

/// A point of C/Lambda, stored in reduced form (reduce_z applied).
struct TorusPoint {
    cplx z;
};

TorusPoint to_torus(cplx z, const Lattice &lat);

/// Weierstrass p-function. Throws pole_error when z reduces to a lattice
/// point (within 1e-14 * |omega2|).
cplx wp(cplx z, const Lattice &lat);

/// Derivative of the p-function (same pole guard).
cplx wp_prime(cplx z, const Lattice &lat);

/// Weierstrass zeta function, quasi-periodic in z as computed:
/// zeta(z + omega) = zeta(z) + eta(omega).
cplx zeta(cplx z, const Lattice &lat);

/// log |sigma(z)|, stable for arbitrary lifts: the quasi-periodicity factor
/// is applied additively in log space.
double log_abs_sigma(cplx z, const Lattice &lat);

/// Archimedean local height
///   lambda(z) = -log|sigma(z)| + Q(z)/2 - log(disc_abs)/12,
/// Lambda-periodic as computed.
double local_height(cplx z, const Lattice &lat, double disc_abs);

/// Z(z) = zeta(z) - C z - D conj(z); Lambda-periodic, odd, and the
/// derivative field of -2*lambda.
cplx Z_field(cplx z, const Lattice &lat);

/// Invert p(z) = x + b2/12: returns one of the two preimages +-z. Robust
/// rather than fast: damped Newton seeded from the leading-order inverse,
/// with grid-scan restarts. Throws no_convergence_error when every restart
/// fails.
TorusPoint elliptic_log(cplx x, const Lattice &lat, cplx b2);

} // namespace hb

#endif
