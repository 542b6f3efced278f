#ifndef HEIGHTBOUNDS_LATTICE_HPP
#define HEIGHTBOUNDS_LATTICE_HPP

#include <array>
#include <complex>
#include <utility>

#include "heightbounds/errors.hpp"
#include "heightbounds/model.hpp"

namespace hb
{

using cplx = std::complex<double>;

/// A Weierstrass equation moved into C by an embedding (or supplied raw in
/// embedded mode). Satisfies c4^3 - c6^2 = 1728*disc up to relative 1e-12.
struct EmbeddedCurve {
    cplx a1, a2, a3, a4, a6;
    cplx b2, b4, b6, b8;
    cplx c4, c6;
    cplx disc;
};

EmbeddedCurve embed(const CurveQ &curve);
EmbeddedCurve embed(const std::array<cplx, 5> &a); // a1, a2, a3, a4, a6

/// Period lattice data for the invariant differential dx/(2y + a1 x + a3),
/// with the quasi-periods and the derived constants.
///
/// Invariants maintained by construction:
///  - Im(omega1/omega2) > 0, tau = omega1/omega2 reduced to the standard
///    fundamental domain (|Re tau| <= 1/2, |tau| >= 1);
///  - Legendre relation eta2*omega1 - eta1*omega2 = 2*pi*i;
///  - vol = Im(omega1 * conj(omega2)) > 0, D = pi/vol;
///  - g2, g3 reproduce the embedded c4/12, c6/216.
struct Lattice {
    cplx omega1, omega2;
    cplx tau;
    cplx eta1, eta2;
    double vol = 0.0;
    cplx C;
    double D = 0.0;
    cplx q;      // e^{2 pi i tau}
    cplx g2_tau; // eta(omega2)*omega2, i.e. the weight-2 Eisenstein value at tau
    cplx g2, g3; // invariants of the lattice itself
};

/// A Z-basis (omega1, omega2) of the period lattice, oriented and reduced.
/// Throws singular_curve_error or no_convergence_error.
std::pair<cplx, cplx> periods(const EmbeddedCurve &ec);

/// Quasi-periods eta_i = 2*zeta(omega_i/2) for the given oriented basis.
std::pair<cplx, cplx> quasi_periods(cplx omega1, cplx omega2);

/// vol, C, D from the basis and quasi-periods (closed forms).
std::tuple<double, cplx, double> lattice_constants(cplx omega1, cplx omega2, cplx eta1, cplx eta2);

/// Full pipeline: periods, quasi-periods, constants, cached series data.
Lattice make_lattice(const EmbeddedCurve &ec);

/// Assemble a Lattice directly from a basis (no curve involved); used when
/// working with abstract lattices such as Z + Zi.
Lattice make_lattice_from_periods(cplx omega1, cplx omega2);

/// Representative z' == z (mod Lambda) with z' = s1*omega1 + s2*omega2,
/// s1, s2 in [-1/2, 1/2).
cplx reduce_z(cplx z, const Lattice &lat);

/// Same, also reporting the subtracted lattice vector z - z' = m1*omega1 +
/// m2*omega2.
cplx reduce_z(cplx z, const Lattice &lat, long &m1, long &m2);

/// The real quadratic form Q(z) = Re(C z^2) + D |z|^2; satisfies
/// Q(omega) = Re(omega * eta(omega)) on lattice points.
double quadratic_form(cplx z, const Lattice &lat);

} // namespace hb

#endif
