#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace hb;

TEST_SUITE("assemble")
{
    TEST_CASE("11A3 bounds against the known values")
    {
        auto b = height_bounds(parse_curve("0,-1,1,0,0"), 1e-3);
        CHECK(b.certified);
        CHECK(std::abs(b.inf_bound - (-0.556)) < 3e-3);
        CHECK(std::abs(b.sup_bound - 0.798) < 3e-3);
        CHECK(b.inf_bound < 0.0);
        CHECK(b.sup_bound > 0.0);
        CHECK(b.degree == 1);
        CHECK(b.eps_total > b.eps);
        CHECK(b.eps_total < b.eps + 1e-7);
    }

    TEST_CASE("assembly identities hold to 1e-12")
    {
        auto b = height_bounds(parse_curve("0,0,1,-7,6"), 1e-2);
        REQUIRE(b.phi_sup.size() == 1);
        double sum_sup = b.phi_sup[0], sum_inf = b.phi_inf[0];
        CHECK(std::abs(b.sup_bound - sum_sup / b.degree - b.log_stable_disc / 12.0) <= 1e-12);
        CHECK(std::abs(b.inf_bound - sum_inf / b.degree + b.log_abs_norm_disc / (6.0 * b.degree)) <= 1e-12);
        CHECK(b.log_stable_disc == doctest::Approx(std::log(5077.0)).epsilon(1e-12));
        CHECK(b.log_abs_norm_disc == doctest::Approx(std::log(5077.0)).epsilon(1e-12));
    }

    TEST_CASE("embedded entry point is consistent with the rational one")
    {
        const double eps = 1e-2;
        auto direct = height_bounds(parse_curve("0,-1,1,0,0"), eps);
        EmbeddedPlace place;
        place.a = {cplx(0.0), cplx(-1.0), cplx(1.0), cplx(0.0), cplx(0.0)};
        place.eps_v = 1;
        double log_disc = std::log(11.0);
        auto embedded = height_bounds_embedded({place}, 1, log_disc, log_disc, eps);
        CHECK(embedded.inf_bound == doctest::Approx(direct.inf_bound).epsilon(1e-13));
        CHECK(embedded.sup_bound == doctest::Approx(direct.sup_bound).epsilon(1e-13));
        CHECK(embedded.certified == direct.certified);
    }

    TEST_CASE("degree homogeneity")
    {
        const double eps = 1e-2;
        EmbeddedPlace place;
        place.a = {cplx(0.0), cplx(-1.0), cplx(1.0), cplx(0.0), cplx(0.0)};
        place.eps_v = 1;
        double log_disc = std::log(11.0);
        auto single = height_bounds_embedded({place}, 1, log_disc, log_disc, eps);
        auto doubled = height_bounds_embedded({place, place}, 2, 2.0 * log_disc, 2.0 * log_disc, eps);
        CHECK(doubled.inf_bound == doctest::Approx(single.inf_bound).epsilon(1e-13));
        CHECK(doubled.sup_bound == doctest::Approx(single.sup_bound).epsilon(1e-13));
    }

    TEST_CASE("zero archimedean contribution reduces to the arithmetic terms")
    {
        double l1 = 3.7, l2 = 1.9;
        auto b = height_bounds_embedded({}, 2, l1, l2, 1e-3);
        CHECK(b.inf_bound == doctest::Approx(-l1 / 12.0).epsilon(1e-14)); // -l1/(6*degree)
        CHECK(b.sup_bound == doctest::Approx((l2 / 2.0) / 12.0).epsilon(1e-14));
        CHECK(b.certified);
    }

    TEST_CASE("x = 0 two-torsion: t1 on a half-period, circle roots in J")
    {
        // y^2 = x^3 - x: the zero of p - b2/12 is a half-period, and the
        // 2-torsion cubic has roots exactly on the unit circle.
        auto b = height_bounds(parse_curve("0,0,0,-1,0"), 1e-2);
        CHECK(b.certified);
        CHECK(b.inf_bound < b.sup_bound);
        CHECK(std::isfinite(b.sup_bound));
        auto b2 = height_bounds(parse_curve("0,0,0,1,0"), 1e-2); // y^2 = x^3 + x
        CHECK(b2.certified);
    }

    TEST_CASE("random small curves certify end to end")
    {
        std::mt19937_64 rng(2026);
        std::uniform_int_distribution<long> coeff(-6, 6);
        int done = 0;
        while (done < 5) {
            CurveQ c{coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
            if (invariants(c).disc == 0) {
                continue;
            }
            auto b = height_bounds(c, 1e-2);
            CHECK(b.certified);
            CHECK(b.inf_bound <= b.sup_bound);
            CHECK(std::abs(b.sup_bound - b.phi_sup[0] - b.log_stable_disc / 12.0) <= 1e-12);
            CHECK(std::abs(b.inf_bound - b.phi_inf[0] + b.log_abs_norm_disc / 6.0) <= 1e-12);
            ++done;
        }
    }

    TEST_CASE("input validation")
    {
        CHECK_THROWS_AS(height_bounds(parse_curve("0,0,0,0,0"), 1e-3), singular_curve_error);
        CHECK_THROWS_AS(height_bounds(parse_curve("0,-1,1,0,0"), -1.0), std::invalid_argument);
        EmbeddedPlace bad;
        bad.a = {cplx(0.0), cplx(-1.0), cplx(1.0), cplx(0.0), cplx(0.0)};
        bad.eps_v = 3;
        CHECK_THROWS_AS(height_bounds_embedded({bad}, 1, 0.0, 0.0, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(height_bounds_embedded({}, 0, 0.0, 0.0, 1e-3), std::invalid_argument);
    }
}
