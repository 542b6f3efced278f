#include <doctest.h>

#include <random>

#include "heightbounds/model.hpp"

using namespace hb;

TEST_SUITE("model")
{
    TEST_CASE("Tate invariants of 11A3")
    {
        auto inv = invariants(parse_curve("0,-1,1,0,0"));
        CHECK(inv.b2 == -4);
        CHECK(inv.b4 == 0);
        CHECK(inv.b6 == 1);
        CHECK(inv.b8 == -1);
        CHECK(inv.c4 == 16);
        CHECK(inv.c6 == -152);
        CHECK(inv.disc == -11);
        CHECK(inv.j.num == -4096);
        CHECK(inv.j.den == 11);
    }

    TEST_CASE("discriminants of the example curves")
    {
        CHECK(invariants(parse_curve("0,0,1,-7,6")).disc == 5077);
        CHECK(invariants(parse_curve("1,1,1,35,-28")).disc == -3515625);
        // 2^4 * 199 * 362793983647
        int128 expected = 16;
        expected = checked_mul(expected, 199);
        expected = checked_mul(expected, parse_int128("362793983647"));
        CHECK(invariants(parse_curve("0,-459,0,-3478,169057")).disc == expected);
    }

    TEST_CASE("validate")
    {
        CHECK_THROWS_AS(validate(parse_curve("0,0,0,0,0")), singular_curve_error);
        CHECK_NOTHROW(validate(parse_curve("0,0,0,0,1")));
        CHECK(invariants(parse_curve("0,0,0,0,1")).disc == -432);
        CHECK_NOTHROW(validate(parse_curve("0,-1,1,0,0")));
    }

    TEST_CASE("standard identities on random curves")
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<long> coeff(-50, 50);
        int nonsingular = 0;
        for (int it = 0; it < 1000; ++it) {
            CurveQ c{coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
            auto inv = invariants(c);
            CHECK(checked_mul(4, inv.b8) == checked_sub(checked_mul(inv.b2, inv.b6), checked_mul(inv.b4, inv.b4)));
            int128 c4cubed = checked_mul(checked_mul(inv.c4, inv.c4), inv.c4);
            CHECK(checked_sub(c4cubed, checked_mul(inv.c6, inv.c6)) == checked_mul(1728, inv.disc));
            if (inv.disc != 0) {
                ++nonsingular;
                CHECK(inv.j.den > 0);
                CHECK(gcd128(inv.j.num, inv.j.den) == 1);
            }
        }
        CHECK(nonsingular > 900); // singular draws are rare
    }

    TEST_CASE("invariants is a pure function")
    {
        CurveQ c = parse_curve("1,1,1,35,-28");
        auto a = invariants(c);
        auto b = invariants(c);
        CHECK(a.b8 == b.b8);
        CHECK(a.disc == b.disc);
        CHECK(a.j.num == b.j.num);
        CHECK(a.j.den == b.j.den);
    }

    TEST_CASE("overflow is reported, not wrapped")
    {
        CurveQ big;
        big.a4 = checked_mul(parse_int128("1267650600228229401496703205376"), 1); // 2^100
        CHECK_THROWS_AS(invariants(big), overflow_error);
        CHECK_THROWS_AS(parse_int128("170141183460469231731687303715884105728"), overflow_error); // 2^127
        CHECK(parse_int128("170141183460469231731687303715884105727") ==
              checked_add(checked_mul(parse_int128("85070591730234615865843651857942052863"), 2), 1));
    }

    TEST_CASE("curve text form")
    {
        CurveQ c = parse_curve(" 0, -1 ,1, 0,0 ");
        CHECK(c.a2 == -1);
        CHECK(to_string(c) == "0,-1,1,0,0");
        CHECK_THROWS_AS(parse_curve("1,2,3,4"), std::invalid_argument);
        CHECK_THROWS_AS(parse_curve("1,2,3,4,x"), std::invalid_argument);
    }
}
