#include <doctest.h>

#include <random>

#include "heightbounds/arith.hpp"

using namespace hb;

namespace
{

bool factors_equal(const FactoredInt &f, std::vector<std::pair<uint128, unsigned>> expected)
{
    return f.factors == expected;
}

} // namespace

TEST_SUITE("arith")
{
    TEST_CASE("factor: paper values")
    {
        CHECK(factors_equal(factor(11), {{11, 1}}));
        CHECK(factors_equal(factor(3515625), {{3, 2}, {5, 8}}));
        auto cps = factor(invariants(parse_curve("0,-459,0,-3478,169057")).disc);
        CHECK(factors_equal(cps, {{2, 4}, {199, 1}, {static_cast<uint128>(362793983647ull), 1}}));
        CHECK(cps.sign == 1);
        CHECK(factor(-11).sign == -1);
    }

    TEST_CASE("factor reconstructs its input")
    {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<long long> small(2, 1000000000LL);
        for (int it = 0; it < 10000; ++it) {
            int128 n = small(rng);
            if (it % 2) {
                n = -n;
            }
            CHECK(reconstruct(factor(n)) == n);
        }
        // structured cases around the trial-division boundary
        int128 p6 = 999983; // prime just below 10^6
        CHECK(factors_equal(factor(checked_mul(p6, p6)), {{static_cast<uint128>(999983), 2}}));
        int128 m61 = parse_int128("2305843009213693951"); // 2^61 - 1, prime
        CHECK(factors_equal(factor(m61), {{static_cast<uint128>(2305843009213693951ull), 1}}));
        int128 semi = checked_mul(2147483647, m61); // (2^31-1)(2^61-1), 92 bits
        auto f = factor(semi);
        CHECK(factors_equal(f, {{2147483647u, 1}, {static_cast<uint128>(2305843009213693951ull), 1}}));
        CHECK(reconstruct(f) == semi);
    }

    TEST_CASE("primality")
    {
        CHECK(is_prime(2));
        CHECK(is_prime(999983));
        CHECK(is_prime(2147483647));
        CHECK(is_prime(static_cast<uint128>(362793983647ull)));
        CHECK_FALSE(is_prime(1));
        CHECK_FALSE(is_prime(561));   // Carmichael
        CHECK_FALSE(is_prime(29341)); // Carmichael
        CHECK_FALSE(is_prime(2047));  // strong pseudoprime base 2
        // above 2^64: 2^89 - 1 is a Mersenne prime
        uint128 m89 = (uint128(1) << 89) - 1;
        CHECK(is_prime(m89));
        CHECK_FALSE(is_prime(m89 - 2)); // 3 | 2^89 - 3
        CHECK_FALSE(is_prime((uint128(1) << 89) + 1));
    }

    TEST_CASE("ord_p")
    {
        CHECK(ord_p(Rational{16, 3}, 2) == 4);
        CHECK(ord_p(Rational{16, 3}, 3) == -1);
        CHECK(ord_p(invariants(parse_curve("0,-1,1,0,0")).j, 11) == -1);
        CHECK(ord_p(int128(48), 2) == 4);
        CHECK_THROWS_AS(ord_p(int128(0), 2), std::invalid_argument);
    }

    TEST_CASE("stable discriminant: paper values")
    {
        CHECK(factors_equal(stable_discriminant(invariants(parse_curve("0,-1,1,0,0"))), {{11, 1}}));
        CHECK(factors_equal(stable_discriminant(invariants(parse_curve("1,1,1,35,-28"))), {{3, 2}, {5, 8}}));
        CHECK(factors_equal(stable_discriminant(invariants(parse_curve("0,0,1,-7,6"))), {{5077, 1}}));
        // the factor 2^4 of the discriminant drops out
        CHECK(factors_equal(stable_discriminant(invariants(parse_curve("0,-459,0,-3478,169057"))),
                            {{199, 1}, {static_cast<uint128>(362793983647ull), 1}}));
        // j = 0: empty product
        CHECK(stable_discriminant(invariants(parse_curve("0,0,0,0,1"))).factors.empty());
        CHECK_THROWS_AS(stable_discriminant(invariants(parse_curve("0,0,0,0,0"))), singular_curve_error);
    }

    TEST_CASE("stable discriminant divides |disc|, equality in the semistable case")
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> coeff(-20, 20);
        for (int it = 0; it < 300; ++it) {
            CurveQ c{coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
            auto inv = invariants(c);
            if (inv.disc == 0) {
                continue;
            }
            auto disc_f = factor(inv.disc);
            auto stable = stable_discriminant(inv);
            auto stable_exp = [&](uint128 p) {
                for (const auto &[q, f] : stable.factors) {
                    if (q == p) {
                        return static_cast<int>(f);
                    }
                }
                return 0;
            };
            bool semistable = inv.c4 != 0;
            for (const auto &[p, e] : disc_f.factors) {
                CHECK(stable_exp(p) <= static_cast<int>(e)); // divisibility
                if (inv.c4 == 0 || ord_p(inv.c4, p) != 0) {
                    semistable = false;
                }
            }
            if (semistable) {
                CHECK(reconstruct(stable) == (inv.disc < 0 ? -inv.disc : inv.disc));
            }
        }
        // the three semistable example curves: stable part equals |disc|
        for (const char *text : {"0,-1,1,0,0", "1,1,1,35,-28", "0,0,1,-7,6"}) {
            auto inv = invariants(parse_curve(text));
            CHECK(reconstruct(stable_discriminant(inv)) == (inv.disc < 0 ? -inv.disc : inv.disc));
        }
    }

    TEST_CASE("rendering and logs")
    {
        auto f = factor(parse_int128("1155136043932048"));
        CHECK(to_string(f) == "2^4 * 199 * 362793983647");
        CHECK(log_abs(f) == doctest::Approx(std::log(1155136043932048.0)).epsilon(1e-14));
        CHECK(to_string(factor(1)) == "1");
        CHECK_THROWS_AS(factor(0), std::invalid_argument);
    }
}
