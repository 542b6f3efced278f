#include "heightbounds/efun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace hb
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx imag_unit{0.0, 1.0};
constexpr double pole_guard_rel = 1e-14;
constexpr int series_cap = 256;

void check_pole(cplx z_red, const Lattice &lat, const char *where)
{
    if (std::abs(z_red) < pole_guard_rel * std::abs(lat.omega2)) {
        throw pole_error(std::string(where) + ": evaluation at a lattice point");
    }
}

// Series state for the q-expansions on the unit lattice Z*tau + Z with
// w = z/omega2 reduced, u = e^{2 pi i w}. With tau reduced, |q| <= 0.00434
// and |q^n u^{+-1}| <= |q|^{n - 1/2}, so a handful of terms reaches double
// precision; every loop carries a geometric tail estimate and a hard cap.
struct QSeries {
    cplx u, q;
    double qabs;
};

QSeries setup(cplx z_red, const Lattice &lat)
{
    cplx w = z_red / lat.omega2;
    return QSeries{std::exp(2.0 * pi * imag_unit * w), lat.q, std::abs(lat.q)};
}

void tail_check(int n, double term, double acc, bool &done)
{
    // Geometric tail: the remaining sum is below term * q/(1-q) << term.
    if (term <= 1e-16 * (acc + 1.0)) {
        done = true;
    }
    if (n >= series_cap) {
        throw no_convergence_error("q-series failed to settle within 256 terms");
    }
}

cplx wp_tau(const QSeries &s)
{
    const cplx u = s.u;
    cplx acc = 1.0 / 12.0 + u / ((1.0 - u) * (1.0 - u));
    cplx qu = u, qiu = 1.0 / u, qn = 1.0;
    bool done = false;
    for (int n = 1; !done; ++n) {
        qu *= s.q;
        qiu *= s.q;
        qn *= s.q;
        cplx term = qu / ((1.0 - qu) * (1.0 - qu)) + qiu / ((1.0 - qiu) * (1.0 - qiu)) -
                    2.0 * qn / ((1.0 - qn) * (1.0 - qn));
        acc += term;
        tail_check(n, std::abs(term), std::abs(acc), done);
    }
    return -4.0 * pi * pi * acc; // (2 pi i)^2
}

cplx wp_prime_tau(const QSeries &s)
{
    const cplx u = s.u;
    auto cube = [](cplx v) { return v * v * v; };
    cplx acc = u * (1.0 + u) / cube(1.0 - u);
    cplx qu = u, qiu = 1.0 / u;
    bool done = false;
    for (int n = 1; !done; ++n) {
        qu *= s.q;
        qiu *= s.q;
        cplx term = qu * (1.0 + qu) / cube(1.0 - qu) - qiu * (1.0 + qiu) / cube(1.0 - qiu);
        acc += term;
        tail_check(n, std::abs(term), std::abs(acc), done);
    }
    const cplx twopii = 2.0 * pi * imag_unit;
    return twopii * twopii * twopii * acc;
}

cplx zeta_tau(const QSeries &s, cplx w, cplx G2)
{
    const cplx u = s.u;
    // pi*cot(pi w) = pi*i*(u+1)/(u-1)
    cplx acc = pi * imag_unit * (u + 1.0) / (u - 1.0);
    cplx qu = u, qiu = 1.0 / u;
    bool done = false;
    for (int n = 1; !done; ++n) {
        qu *= s.q;
        qiu *= s.q;
        cplx term = -2.0 * pi * imag_unit * (qu / (1.0 - qu) - qiu / (1.0 - qiu));
        acc += term;
        tail_check(n, std::abs(term), std::abs(acc), done);
    }
    return G2 * w + acc;
}

double log_abs_sigma_tau(const QSeries &s, cplx w, cplx G2)
{
    const cplx u = s.u;
    // |2 sin(pi w)| = |u - 1| * e^{pi Im w}
    double acc = -std::log(2.0 * pi) + 0.5 * std::real(G2 * w * w) + std::log(std::abs(u - 1.0)) +
                 pi * std::imag(w);
    cplx qu = u, qiu = 1.0 / u, qn = 1.0;
    bool done = false;
    for (int n = 1; !done; ++n) {
        qu *= s.q;
        qiu *= s.q;
        qn *= s.q;
        double term = std::log(std::abs(1.0 - qu)) + std::log(std::abs(1.0 - qiu)) -
                      2.0 * std::log(std::abs(1.0 - qn));
        acc += term;
        tail_check(n, std::abs(term), std::abs(acc), done);
    }
    return acc;
}

} // namespace

TorusPoint to_torus(cplx z, const Lattice &lat)
{
    return TorusPoint{reduce_z(z, lat)};
}

cplx wp(cplx z, const Lattice &lat)
{
    cplx z0 = reduce_z(z, lat);
    check_pole(z0, lat, "wp");
    return wp_tau(setup(z0, lat)) / (lat.omega2 * lat.omega2);
}

cplx wp_prime(cplx z, const Lattice &lat)
{
    cplx z0 = reduce_z(z, lat);
    check_pole(z0, lat, "wp_prime");
    return wp_prime_tau(setup(z0, lat)) / (lat.omega2 * lat.omega2 * lat.omega2);
}

cplx zeta(cplx z, const Lattice &lat)
{
    long m1, m2;
    cplx z0 = reduce_z(z, lat, m1, m2);
    check_pole(z0, lat, "zeta");
    cplx w = z0 / lat.omega2;
    cplx base = zeta_tau(setup(z0, lat), w, lat.g2_tau) / lat.omega2;
    return base + static_cast<double>(m1) * lat.eta1 + static_cast<double>(m2) * lat.eta2;
}

double log_abs_sigma(cplx z, const Lattice &lat)
{
    long m1, m2;
    cplx z0 = reduce_z(z, lat, m1, m2);
    check_pole(z0, lat, "log_abs_sigma");
    cplx w = z0 / lat.omega2;
    double base = std::log(std::abs(lat.omega2)) + log_abs_sigma_tau(setup(z0, lat), w, lat.g2_tau);
    if (m1 == 0 && m2 == 0) {
        return base;
    }
    // sigma(z0 + omega) = +-sigma(z0) exp(eta(omega) (z0 + omega/2))
    cplx omega = static_cast<double>(m1) * lat.omega1 + static_cast<double>(m2) * lat.omega2;
    cplx eta = static_cast<double>(m1) * lat.eta1 + static_cast<double>(m2) * lat.eta2;
    return base + std::real(eta * (z0 + omega / 2.0));
}

double local_height(cplx z, const Lattice &lat, double disc_abs)
{
    return -log_abs_sigma(z, lat) + 0.5 * quadratic_form(z, lat) - std::log(disc_abs) / 12.0;
}

cplx Z_field(cplx z, const Lattice &lat)
{
    return zeta(z, lat) - lat.C * z - lat.D * std::conj(z);
}

namespace
{

// One damped Newton run for p(z) = target; returns true on success.
bool newton_elliptic_log(cplx target, const Lattice &lat, cplx z, double tol, cplx &out)
{
    const double guard = pole_guard_rel * std::abs(lat.omega2) * 10.0;
    const double max_step = 0.5 * std::abs(lat.omega2);
    for (int it = 0; it < 80; ++it) {
        z = reduce_z(z, lat);
        if (std::abs(z) < guard) {
            z += 0.05 * lat.omega2; // walked into the pole; nudge off it
        }
        cplx f = wp_tau(setup(z, lat)) / (lat.omega2 * lat.omega2) - target;
        if (std::abs(f) <= tol) {
            out = reduce_z(z, lat);
            return true;
        }
        cplx df = wp_prime_tau(setup(z, lat)) / (lat.omega2 * lat.omega2 * lat.omega2);
        if (std::abs(df) < 1e-300) {
            z += 0.03 * lat.omega1; // stationary point (2-torsion); step aside
            continue;
        }
        cplx step = f / df;
        if (std::abs(step) > max_step) {
            step *= max_step / std::abs(step);
        }
        bool improved = false;
        for (int half = 0; half < 10; ++half) {
            cplx zn = reduce_z(z - step, lat);
            if (std::abs(zn) < guard) {
                step /= 2.0;
                continue;
            }
            cplx fn = wp_tau(setup(zn, lat)) / (lat.omega2 * lat.omega2) - target;
            if (std::abs(fn) < std::abs(f)) {
                z = zn;
                improved = true;
                break;
            }
            step /= 2.0;
        }
        if (!improved) {
            return false; // stagnated; caller restarts from a grid seed
        }
    }
    return false;
}

std::vector<cplx> grid_seeds(cplx target, const Lattice &lat, int n, std::size_t keep)
{
    struct Scored {
        double score;
        cplx z;
    };
    std::vector<Scored> scored;
    scored.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s1 = (i + 0.5) / n - 0.5;
            double s2 = (j + 0.5) / n - 0.5;
            cplx z = s1 * lat.omega1 + s2 * lat.omega2;
            if (std::abs(z) < 1e-3 * std::abs(lat.omega2)) {
                continue;
            }
            cplx f = wp_tau(setup(z, lat)) / (lat.omega2 * lat.omega2) - target;
            scored.push_back({std::abs(f), z});
        }
    }
    std::sort(scored.begin(), scored.end(), [](const Scored &a, const Scored &b) { return a.score < b.score; });
    std::vector<cplx> out;
    for (std::size_t k = 0; k < scored.size() && k < keep; ++k) {
        out.push_back(scored[k].z);
    }
    return out;
}

} // namespace

namespace
{

// Near a 2-torsion target the root of p(z) - target is a critical point of
// p, which caps plain Newton at square-root accuracy in position. A few
// Newton steps on p' (with p'' = 6 p^2 - g2/2) recover full precision; the
// refinement is kept only when it does not disturb the value contract.
cplx polish_critical(cplx z, cplx target, double accept, const Lattice &lat)
{
    cplx zr = z;
    for (int it = 0; it < 6; ++it) {
        cplx ddp = 6.0 * wp(zr, lat) * wp(zr, lat) - lat.g2 / 2.0;
        if (std::abs(ddp) < 1e-300) {
            return z;
        }
        cplx step = wp_prime(zr, lat) / ddp;
        if (std::abs(step) > 1e-2 * std::abs(lat.omega2)) {
            return z; // not actually near a critical point
        }
        zr = reduce_z(zr - step, lat);
        if (std::abs(zr) < pole_guard_rel * std::abs(lat.omega2) * 10.0) {
            return z;
        }
    }
    bool local = std::abs(reduce_z(zr - z, lat)) <= 1e-2 * std::abs(lat.omega2);
    return (local && std::abs(wp(zr, lat) - target) <= accept) ? zr : z;
}

} // namespace

TorusPoint elliptic_log(cplx x, const Lattice &lat, cplx b2)
{
    const cplx target = x + b2 / 12.0;
    const double tol = 1e-11 * std::max(1.0, std::abs(target));
    const double accept = 1e-8 * std::max(1.0, std::abs(x));

    std::vector<cplx> seeds;
    if (std::abs(target) > 1e-12) {
        seeds.push_back(1.0 / std::sqrt(target)); // p(z) ~ 1/z^2 near 0
    }
    cplx out;
    for (int round = 0; round < 3; ++round) {
        for (cplx seed : seeds) {
            if (newton_elliptic_log(target, lat, seed, tol, out) ||
                newton_elliptic_log(target, lat, seed, accept, out)) {
                return TorusPoint{polish_critical(out, target, accept, lat)};
            }
        }
        seeds = grid_seeds(target, lat, round == 0 ? 16 : 64, 6);
    }
    throw no_convergence_error("elliptic_log: all Newton restarts stagnated");
}

} // namespace hb
