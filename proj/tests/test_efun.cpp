#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "heightbounds/efun.hpp"
#include "oracles.hpp"

using namespace hb;
using oracles::fix;
using oracles::random_cell_point;

TEST_SUITE("efun")
{
    TEST_CASE("wp at half-periods: 2-torsion x-roots of y^2 = x^3 - x")
    {
        auto lat = make_lattice(embed(parse_curve("0,0,0,-1,0"))); // b2 = 0
        CHECK(std::abs(wp(lat.omega2 / 2.0, lat) - 1.0) < 1e-9);
        std::vector<double> roots;
        for (cplx h : {lat.omega1 / 2.0, lat.omega2 / 2.0, (lat.omega1 + lat.omega2) / 2.0}) {
            cplx v = wp(h, lat);
            CHECK(std::abs(v.imag()) < 1e-9);
            roots.push_back(v.real());
        }
        std::sort(roots.begin(), roots.end());
        CHECK(std::abs(roots[0] + 1.0) < 1e-9);
        CHECK(std::abs(roots[1]) < 1e-9);
        CHECK(std::abs(roots[2] - 1.0) < 1e-9);
    }

    TEST_CASE("wp: parity and defining ODE")
    {
        const auto &f = fix("0,-1,1,0,0");
        std::mt19937_64 rng(17);
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(f.lat, rng);
            cplx p = wp(z, f.lat);
            CHECK(std::abs(wp(-z, f.lat) - p) <= 1e-10 * (1.0 + std::abs(p)));
            cplx dp = wp_prime(z, f.lat);
            cplx lhs = dp * dp;
            cplx rhs = 4.0 * p * p * p - (f.ec.c4 / 12.0) * p - f.ec.c6 / 216.0;
            double scale = std::abs(lhs) + std::abs(4.0 * p * p * p) + std::abs(f.ec.c4 / 12.0 * p) +
                           std::abs(f.ec.c6 / 216.0);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + scale));
        }
        CHECK_THROWS_AS(wp(cplx(0.0, 0.0), f.lat), pole_error);
        CHECK_THROWS_AS(wp(1e-16 * f.lat.omega2, f.lat), pole_error);
    }

    TEST_CASE("wp against the raw pairwise lattice sum")
    {
        const auto &f = fix("0,-1,1,0,0");
        std::mt19937_64 rng(23);
        for (int it = 0; it < 4; ++it) {
            cplx z = random_cell_point(f.lat, rng, 0.08);
            cplx slow = oracles::wp_sum(z, f.lat, 220);
            CHECK(std::abs(wp(z, f.lat) - slow) <= 2e-5 * (1.0 + std::abs(slow)));
        }
    }

    TEST_CASE("zeta: parity, quasi-periodicity, half-period value")
    {
        const auto &f = fix("0,-1,1,0,0");
        const Lattice &lat = f.lat;
        std::mt19937_64 rng(31);
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(lat, rng);
            CHECK(std::abs(zeta(-z, lat) + zeta(z, lat)) <= 1e-10 * (1.0 + std::abs(zeta(z, lat))));
            CHECK(std::abs(zeta(z + lat.omega1, lat) - zeta(z, lat) - lat.eta1) <=
                  1e-9 * (1.0 + std::abs(lat.eta1)));
        }
        CHECK(std::abs(zeta(lat.omega2 / 2.0, lat) - lat.eta2 / 2.0) <= 1e-9 * (1.0 + std::abs(lat.eta2)));
        // derivative of zeta is -wp
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(lat, rng, 0.05);
            double h = 1e-6 * std::abs(lat.omega2);
            cplx dz = (zeta(z + h, lat) - zeta(z - h, lat)) / (2.0 * h);
            CHECK(std::abs(dz + wp(z, lat)) <= 1e-6 * (1.0 + std::abs(wp(z, lat))));
        }
        // independent lattice-sum spot check
        cplx z0 = 0.31 * lat.omega1 + 0.17 * lat.omega2;
        CHECK(std::abs(zeta(z0, lat) - oracles::zeta_sum(z0, lat, 300)) < 1e-4);
    }

    TEST_CASE("log|sigma|: near-zero expansion, parity, derivative")
    {
        const auto &f = fix("0,-1,1,0,0");
        const Lattice &lat = f.lat;
        cplx tiny = 1e-6 * std::abs(lat.omega2) * std::polar(1.0, 0.7);
        CHECK(std::abs(log_abs_sigma(tiny, lat) - std::log(std::abs(tiny))) < 1e-6);
        std::mt19937_64 rng(37);
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(lat, rng);
            CHECK(log_abs_sigma(-z, lat) ==
                  doctest::Approx(log_abs_sigma(z, lat)).epsilon(1e-10).scale(1.0));
            double h = 1e-6 * std::abs(lat.omega2);
            auto [fx, fy] = oracles::fd_gradient([&](cplx w) { return log_abs_sigma(w, lat); }, z, h);
            cplx zv = zeta(z, lat);
            CHECK(std::abs(fx - zv.real()) <= 1e-6 * (1.0 + std::abs(zv)));
            CHECK(std::abs(fy + zv.imag()) <= 1e-6 * (1.0 + std::abs(zv)));
        }
        CHECK_THROWS_AS(log_abs_sigma(cplx(0.0, 0.0), lat), pole_error);
    }

    TEST_CASE("local height: periodicity, parity, logarithmic singularity")
    {
        const auto &f = fix("0,-1,1,0,0");
        const Lattice &lat = f.lat;
        const double disc_abs = std::abs(f.ec.disc);
        std::mt19937_64 rng(41);
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(lat, rng);
            double l = local_height(z, lat, disc_abs);
            CHECK(std::abs(local_height(z + lat.omega1, lat, disc_abs) - l) <= 1e-9 * (1.0 + std::abs(l)));
            CHECK(std::abs(local_height(-z, lat, disc_abs) - l) <= 1e-10 * (1.0 + std::abs(l)));
        }
        cplx tiny = 1e-6 * std::abs(lat.omega2) * std::polar(1.0, 1.2);
        CHECK(std::abs(local_height(tiny, lat, disc_abs) + std::log(std::abs(tiny)) +
                       std::log(disc_abs) / 12.0) < 1e-6);
    }

    TEST_CASE("Z field: parity, differential of the local height, periodicity")
    {
        const auto &f = fix("0,-1,1,0,0");
        const Lattice &lat = f.lat;
        const double disc_abs = std::abs(f.ec.disc);
        std::mt19937_64 rng(43);
        for (int it = 0; it < 100; ++it) {
            cplx z = random_cell_point(lat, rng, 0.05);
            cplx zf = Z_field(z, lat);
            CHECK(std::abs(Z_field(-z, lat) + zf) <= 1e-10 * (1.0 + std::abs(zf)));
            // periodicity as computed: the eta increment cancels against C w + D conj(w)
            CHECK(std::abs(Z_field(z + lat.omega2, lat) - zf) <= 1e-9 * (1.0 + std::abs(zf)));
            if (it >= 20) {
                continue; // the finite-difference block samples 20 points
            }
            // d lambda = -(1/2)(Z dz + conj(Z) dconj(z)):
            // d/dx lambda = -Re Z, d/dy lambda = +Im Z
            double h = 1e-6 * std::abs(lat.omega2);
            auto [fx, fy] = oracles::fd_gradient([&](cplx w) { return local_height(w, lat, disc_abs); }, z, h);
            CHECK(std::abs(fx + zf.real()) <= 1e-5 * (1.0 + std::abs(zf)));
            CHECK(std::abs(fy - zf.imag()) <= 1e-5 * (1.0 + std::abs(zf)));
        }
    }

    TEST_CASE("elliptic_log: 2-torsion targets land on half-periods")
    {
        auto ec = embed(parse_curve("0,0,0,-1,0"));
        auto lat = make_lattice(ec);
        for (double x : {1.0, 0.0, -1.0}) {
            TorusPoint t = elliptic_log(x, lat, ec.b2);
            double best = 1e300;
            for (cplx h : {lat.omega1 / 2.0, lat.omega2 / 2.0, (lat.omega1 + lat.omega2) / 2.0}) {
                best = std::min({best, std::abs(reduce_z(t.z - h, lat)), std::abs(reduce_z(t.z + h, lat))});
            }
            CHECK(best < 1e-8 * std::abs(lat.omega2));
        }
    }

    TEST_CASE("elliptic_log: round trip on random targets")
    {
        const auto &f = fix("0,-1,1,0,0");
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> mag(0.0, 10.0), ang(0.0, 2.0 * 3.14159265358979);
        for (int it = 0; it < 100; ++it) {
            cplx x = std::polar(mag(rng), ang(rng));
            TorusPoint t = elliptic_log(x, f.lat, f.ec.b2);
            CHECK(std::abs(wp(t.z, f.lat) - f.ec.b2 / 12.0 - x) <= 1e-8 * std::max(1.0, std::abs(x)));
        }
        // x = 0 gives the zero t1 of p(z) - b2/12
        TorusPoint t1 = elliptic_log(0.0, f.lat, f.ec.b2);
        CHECK(std::abs(wp(t1.z, f.lat) - f.ec.b2 / 12.0) <= 1e-8);
    }
}
