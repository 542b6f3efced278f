#include "heightbounds/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "heightbounds/detail/cubic.hpp"

namespace hb
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx imag_unit{0.0, 1.0};

cplx embed_b2(cplx a1, cplx a2) { return a1 * a1 + 4.0 * a2; }

EmbeddedCurve embed_impl(cplx a1, cplx a2, cplx a3, cplx a4, cplx a6)
{
    EmbeddedCurve ec;
    ec.a1 = a1;
    ec.a2 = a2;
    ec.a3 = a3;
    ec.a4 = a4;
    ec.a6 = a6;
    ec.b2 = embed_b2(a1, a2);
    ec.b4 = 2.0 * a4 + a1 * a3;
    ec.b6 = a3 * a3 + 4.0 * a6;
    ec.b8 = a1 * a1 * a6 + 4.0 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    ec.c4 = ec.b2 * ec.b2 - 24.0 * ec.b4;
    ec.c6 = -ec.b2 * ec.b2 * ec.b2 + 36.0 * ec.b2 * ec.b4 - 216.0 * ec.b6;
    ec.disc = -ec.b2 * ec.b2 * ec.b8 - 8.0 * ec.b4 * ec.b4 * ec.b4 - 27.0 * ec.b6 * ec.b6 +
              9.0 * ec.b2 * ec.b4 * ec.b6;
    return ec;
}

// Arithmetic-geometric mean with the "right choice" of square root at every
// step: |a_{n+1} - b_{n+1}| <= |a_{n+1} + b_{n+1}|, ties broken towards
// Im(b/a) > 0.
cplx agm(cplx a, cplx b)
{
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) {
        throw no_convergence_error("agm of zero argument");
    }
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= 1e-16 * (std::abs(a) + std::abs(b))) {
            return (a + b) / 2.0;
        }
        cplx a1 = (a + b) / 2.0;
        cplx b1 = std::sqrt(a * b);
        double dm = std::abs(a1 - b1), dp = std::abs(a1 + b1);
        if (dm > dp || (dm == dp && std::imag(b1 / a1) < 0.0)) {
            b1 = -b1;
        }
        a = a1;
        b = b1;
    }
    throw no_convergence_error("agm failed to converge");
}

long lround_half_down(double s)
{
    // m with s - m in [-1/2, 1/2)
    return static_cast<long>(std::floor(s + 0.5));
}

struct BasisReduction {
    cplx w1, w2;
    long a = 1, b = 0, c = 0, d = 1; // (w1; w2) = (a b; c d) (in1; in2)
};

// Reduce to the standard fundamental domain: |Re tau| <= 1/2, |tau| >= 1,
// with the boundary folded to Re tau = +1/2 and, on |tau| = 1, Re tau >= 0.
// Also normalizes signs so that omega2 points into the right half plane.
BasisReduction reduce_basis(cplx in1, cplx in2)
{
    BasisReduction r;
    r.w1 = in1;
    r.w2 = in2;
    if (std::imag(in1 / in2) < 0.0) {
        r.w1 = -r.w1;
        r.a = -1;
    }
    for (int it = 0; it < 128; ++it) {
        long t = lround_half_down(std::real(r.w1 / r.w2));
        if (t != 0) {
            r.w1 -= static_cast<double>(t) * r.w2;
            r.a -= t * r.c;
            r.b -= t * r.d;
        }
        if (std::abs(r.w1) < std::abs(r.w2) * (1.0 - 1e-15)) {
            cplx tmp = r.w1;
            r.w1 = -r.w2;
            r.w2 = tmp;
            long na = -r.c, nb = -r.d;
            r.c = r.a;
            r.d = r.b;
            r.a = na;
            r.b = nb;
        } else {
            break;
        }
    }
    cplx tau = r.w1 / r.w2;
    if (std::real(tau) <= -0.5 + 1e-12) {
        r.w1 += r.w2;
        r.a += r.c;
        r.b += r.d;
        tau = r.w1 / r.w2;
    }
    if (std::abs(tau) <= 1.0 + 1e-12 && std::real(tau) < -1e-12) {
        cplx tmp = r.w1;
        r.w1 = -r.w2;
        r.w2 = tmp;
        long na = -r.c, nb = -r.d;
        r.c = r.a;
        r.d = r.b;
        r.a = na;
        r.b = nb;
    }
    if (std::real(r.w2) < -1e-12 * std::abs(r.w2) ||
        (std::abs(std::real(r.w2)) <= 1e-12 * std::abs(r.w2) && std::imag(r.w2) < 0.0)) {
        r.w1 = -r.w1;
        r.w2 = -r.w2;
        r.a = -r.a;
        r.b = -r.b;
        r.c = -r.c;
        r.d = -r.d;
    }
    return r;
}

double divisor_sum(int n, int k)
{
    double s = 0.0;
    for (int d = 1; d <= n; ++d) {
        if (n % d == 0) {
            s += std::pow(static_cast<double>(d), k);
        }
    }
    return s;
}

cplx eisenstein_sum(cplx q, int weight)
{
    cplx s = 0.0, qn = 1.0;
    for (int n = 1; n <= 40; ++n) {
        qn *= q;
        s += divisor_sum(n, weight - 1) * qn;
    }
    return s;
}

cplx eisenstein_E2(cplx q) { return 1.0 - 24.0 * eisenstein_sum(q, 2); }
cplx eisenstein_E4(cplx q) { return 1.0 + 240.0 * eisenstein_sum(q, 4); }
cplx eisenstein_E6(cplx q) { return 1.0 - 504.0 * eisenstein_sum(q, 6); }

// g2, g3 of the lattice spanned by the reduced basis (omega1, omega2).
std::pair<cplx, cplx> lattice_g2g3(cplx w1, cplx w2)
{
    cplx tau = w1 / w2;
    cplx q = std::exp(2.0 * pi * imag_unit * tau);
    cplx w2_2 = w2 * w2;
    cplx w2_4 = w2_2 * w2_2;
    cplx g2 = (4.0 * std::pow(pi, 4) / 3.0) * eisenstein_E4(q) / w2_4;
    cplx g3 = (8.0 * std::pow(pi, 6) / 27.0) * eisenstein_E6(q) / (w2_4 * w2_2);
    return {g2, g3};
}

bool verify_invariants(cplx w1, cplx w2, cplx g2_target, cplx g3_target, double rel_tol)
{
    auto [g2, g3] = lattice_g2g3(w1, w2);
    double scale = std::max(std::pow(std::abs(g2_target), 0.25), std::pow(std::abs(g3_target), 1.0 / 6.0));
    if (scale == 0.0) {
        return false;
    }
    return std::abs(g2 - g2_target) <= rel_tol * std::pow(scale, 4) &&
           std::abs(g3 - g3_target) <= rel_tol * std::pow(scale, 6);
}

} // namespace

EmbeddedCurve embed(const CurveQ &curve)
{
    return embed_impl(to_double(curve.a1), to_double(curve.a2), to_double(curve.a3), to_double(curve.a4),
                      to_double(curve.a6));
}

EmbeddedCurve embed(const std::array<cplx, 5> &a)
{
    return embed_impl(a[0], a[1], a[2], a[3], a[4]);
}

std::pair<cplx, cplx> periods(const EmbeddedCurve &ec)
{
    if (ec.disc == 0.0) {
        throw singular_curve_error();
    }
    const cplx g2_target = ec.c4 / 12.0;
    const cplx g3_target = ec.c6 / 216.0;

    // 2-torsion x-coordinates: roots of 4x^3 + b2 x^2 + 2 b4 x + b6.
    auto roots = detail::cubic_roots(ec.b2 / 4.0, ec.b4 / 2.0, ec.b6 / 4.0);

    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto &perm : perms) {
        cplx e1 = roots[perm[0]], e2 = roots[perm[1]], e3 = roots[perm[2]];
        cplx lam = (e2 - e3) / (e1 - e3);
        if (std::abs(lam) < 1e-12 || std::abs(1.0 - lam) < 1e-12) {
            continue;
        }
        cplx m1, m2, w1, w2;
        try {
            m1 = agm(1.0, std::sqrt(1.0 - lam));
            m2 = agm(1.0, std::sqrt(lam));
            cplx root13 = std::sqrt(e1 - e3);
            w2 = pi / (m1 * root13);
            w1 = imag_unit * pi / (m2 * root13);
        } catch (const no_convergence_error &) {
            continue;
        }

        // The pair spans some sublattice of the period lattice; verify the
        // Eisenstein invariants and enlarge by index 2 if needed.
        std::vector<std::pair<cplx, cplx>> queue{{w1, w2}};
        for (std::size_t i = 0; i < queue.size() && i < 16; ++i) {
            auto [u1, u2] = queue[i];
            if (std::abs(std::imag(u1 * std::conj(u2))) <= 1e-12 * std::abs(u1) * std::abs(u2)) {
                continue;
            }
            BasisReduction red = reduce_basis(u1, u2);
            if (verify_invariants(red.w1, red.w2, g2_target, g3_target, 1e-8)) {
                return {red.w1, red.w2};
            }
            if (i < 4) { // breadth 1 + 3, then their children up to index 4
                queue.emplace_back((u1 + u2) / 2.0, u2);
                queue.emplace_back(u1 / 2.0, u2);
                queue.emplace_back(u1, u2 / 2.0);
            }
        }
    }
    throw no_convergence_error("periods: no root ordering produced a verified lattice");
}

std::pair<cplx, cplx> quasi_periods(cplx omega1, cplx omega2)
{
    if (!(std::imag(omega1 / omega2) > 0.0)) {
        throw std::invalid_argument("quasi_periods: basis must satisfy Im(omega1/omega2) > 0");
    }
    BasisReduction red = reduce_basis(omega1, omega2);
    cplx tau = red.w1 / red.w2;
    cplx q = std::exp(2.0 * pi * imag_unit * tau);
    cplx G2 = pi * pi / 3.0 * eisenstein_E2(q);
    cplx eta2r = G2 / red.w2;
    cplx eta1r = (eta2r * red.w1 - 2.0 * pi * imag_unit) / red.w2;
    // (eta1r, eta2r) = M (eta1, eta2); invert the unimodular M.
    double det = static_cast<double>(red.a * red.d - red.b * red.c);
    cplx eta1 = (static_cast<double>(red.d) * eta1r - static_cast<double>(red.b) * eta2r) / det;
    cplx eta2 = (-static_cast<double>(red.c) * eta1r + static_cast<double>(red.a) * eta2r) / det;
    return {eta1, eta2};
}

std::tuple<double, cplx, double> lattice_constants(cplx omega1, cplx omega2, cplx eta1, cplx eta2)
{
    double vol = std::imag(omega1 * std::conj(omega2));
    cplx C = (eta1 * std::conj(omega2) - eta2 * std::conj(omega1)) / (2.0 * imag_unit * vol);
    double D = pi / vol;
    return {vol, C, D};
}

namespace
{

Lattice finish_lattice(cplx w1, cplx w2)
{
    Lattice lat;
    lat.omega1 = w1;
    lat.omega2 = w2;
    lat.tau = w1 / w2;
    lat.q = std::exp(2.0 * pi * imag_unit * lat.tau);
    cplx G2 = pi * pi / 3.0 * eisenstein_E2(lat.q);
    lat.eta2 = G2 / w2;
    lat.eta1 = (lat.eta2 * w1 - 2.0 * pi * imag_unit) / w2;
    lat.g2_tau = G2;
    auto [vol, C, D] = lattice_constants(w1, w2, lat.eta1, lat.eta2);
    lat.vol = vol;
    lat.C = C;
    lat.D = D;
    std::tie(lat.g2, lat.g3) = lattice_g2g3(w1, w2);
    return lat;
}

} // namespace

Lattice make_lattice(const EmbeddedCurve &ec)
{
    auto [w1, w2] = periods(ec);
    return finish_lattice(w1, w2);
}

Lattice make_lattice_from_periods(cplx omega1, cplx omega2)
{
    if (std::imag(omega1 / omega2) == 0.0) {
        throw std::invalid_argument("degenerate basis");
    }
    BasisReduction red = reduce_basis(omega1, omega2);
    return finish_lattice(red.w1, red.w2);
}

cplx reduce_z(cplx z, const Lattice &lat, long &m1, long &m2)
{
    double s1 = std::imag(z * std::conj(lat.omega2)) / lat.vol;
    double s2 = -std::imag(z * std::conj(lat.omega1)) / lat.vol;
    m1 = lround_half_down(s1);
    m2 = lround_half_down(s2);
    return z - static_cast<double>(m1) * lat.omega1 - static_cast<double>(m2) * lat.omega2;
}

cplx reduce_z(cplx z, const Lattice &lat)
{
    long m1, m2;
    return reduce_z(z, lat, m1, m2);
}

double quadratic_form(cplx z, const Lattice &lat)
{
    return std::real(lat.C * z * z) + lat.D * std::norm(z);
}

} // namespace hb
