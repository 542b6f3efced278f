#include "heightbounds/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hb
{

namespace
{

uint128 mulmod(uint128 a, uint128 b, uint128 m)
{
    a %= m;
    b %= m;
    if (m <= (uint128(1) << 64)) {
        return (a * b) % m; // no overflow: both factors < 2^64, product < 2^128
    }
    // Shift-and-add for 128-bit moduli; slow but exercised only above 2^64.
    uint128 r = 0;
    while (b != 0) {
        if (b & 1) {
            r += a;
            if (r >= m) {
                r -= m;
            }
        }
        a <<= 1;
        if (a >= m) {
            a -= m;
        }
        b >>= 1;
    }
    return r;
}

uint128 powmod(uint128 base, uint128 exp, uint128 m)
{
    uint128 r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) {
            r = mulmod(r, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Strong probable-prime test to the given base.
bool sprp(uint128 n, uint128 base)
{
    base %= n;
    if (base == 0) {
        return true;
    }
    uint128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    uint128 x = powmod(base, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

int jacobi(int128 a, uint128 n)
{
    // n odd positive
    a %= static_cast<int128>(n);
    if (a < 0) {
        a += static_cast<int128>(n);
    }
    uint128 ua = static_cast<uint128>(a);
    int result = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            uint128 r = n & 7;
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) {
            result = -result;
        }
        ua %= n;
    }
    return n == 1 ? result : 0;
}

uint128 isqrt(uint128 n)
{
    if (n == 0) {
        return 0;
    }
    uint128 x = static_cast<uint128>(std::sqrt(static_cast<double>(n)));
    if (x == 0) {
        x = 1;
    }
    for (int i = 0; i < 64; ++i) {
        uint128 y = (x + n / x) / 2;
        if (y >= x) {
            break;
        }
        x = y;
    }
    while (x * x > n) {
        --x;
    }
    while ((x + 1) * (x + 1) <= n) {
        ++x;
    }
    return x;
}

bool is_square(uint128 n)
{
    uint128 r = isqrt(n);
    return r * r == n;
}

// Strong Lucas probable-prime test with Selfridge parameters.
bool strong_lucas(uint128 n)
{
    int128 d = 5;
    while (true) {
        int j = jacobi(d, n);
        if (j == 0) {
            return false; // shares a factor with D
        }
        if (j == -1) {
            break;
        }
        d = d > 0 ? -(d + 2) : -(d - 2);
    }
    // P = 1, Q = (1 - D)/4
    int128 q_signed = (1 - d) / 4;
    uint128 q = static_cast<uint128>(((q_signed % static_cast<int128>(n)) + static_cast<int128>(n)) %
                                     static_cast<int128>(n));
    uint128 dd = static_cast<uint128>(((d % static_cast<int128>(n)) + static_cast<int128>(n)) %
                                      static_cast<int128>(n));

    uint128 delta = n + 1;
    unsigned s = 0;
    while ((delta & 1) == 0) {
        delta >>= 1;
        ++s;
    }
    // (U, V, Q^k) ladder over the bits of the odd part of n+1.
    uint128 u = 1, v = 1, qk = q;
    int bits = 0;
    for (uint128 t = delta; t > 1; t >>= 1) {
        ++bits;
    }
    const uint128 inv2 = (n + 1) / 2; // 2^{-1} mod n for odd n
    for (int i = bits - 1; i >= 0; --i) {
        // U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        u = mulmod(u, v, n);
        v = mulmod(v, v, n);
        v = (v + n - (2 * qk) % n) % n;
        qk = mulmod(qk, qk, n);
        if ((delta >> i) & 1) {
            // U_{k+1} = (U_k + V_k)/2, V_{k+1} = (D U_k + V_k)/2
            uint128 tu = mulmod((u + v) % n, inv2, n);
            uint128 tv = mulmod((mulmod(dd, u, n) + v) % n, inv2, n);
            u = tu;
            v = tv;
            qk = mulmod(qk, q, n);
        }
    }
    if (u == 0 || v == 0) {
        return true;
    }
    for (unsigned r = 1; r < s; ++r) {
        v = mulmod(v, v, n);
        v = (v + n - (2 * qk) % n) % n;
        if (v == 0) {
            return true;
        }
        qk = mulmod(qk, qk, n);
    }
    return false;
}

uint128 abs_u128(int128 v)
{
    return v < 0 ? static_cast<uint128>(~static_cast<uint128>(v) + 1) : static_cast<uint128>(v);
}

uint128 gcd_u128(uint128 a, uint128 b)
{
    while (b != 0) {
        uint128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's variant of Pollard rho; n odd composite, not a prime power guard
// is unnecessary (the recursion handles repeated factors).
uint128 brent_rho(uint128 n, uint64_t seed)
{
    if ((n & 1) == 0) {
        return 2;
    }
    uint128 y = seed % n, c = 1 + seed % (n - 1), m = 128;
    uint128 g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (uint128 i = 0; i < r; ++i) {
            y = (mulmod(y, y, n) + c) % n;
        }
        uint128 k = 0;
        while (k < r && g == 1) {
            ys = y;
            uint128 lim = std::min<uint128>(m, r - k);
            for (uint128 i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u128(q, n);
            k += m;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            g = gcd_u128(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_rec(uint128 n, std::vector<uint128> &primes)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    uint128 d = n;
    for (uint64_t seed = 2; d == n; ++seed) {
        d = brent_rho(n, seed);
    }
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

constexpr uint64_t trial_limit = 1000000;

} // namespace

bool is_prime(uint128 n)
{
    if (n < 2) {
        return false;
    }
    for (uint128 p : {uint128(2), uint128(3), uint128(5), uint128(7), uint128(11), uint128(13)}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    if (n < uint128(1) << 64) {
        // Deterministic base set for the 64-bit range.
        for (uint64_t base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
            if (!sprp(n, base)) {
                return false;
            }
        }
        return true;
    }
    // Baillie–PSW above 2^64: no counterexample is known in this range.
    if (!sprp(n, 2)) {
        return false;
    }
    if (is_square(n)) {
        return false;
    }
    return strong_lucas(n);
}

FactoredInt factor(int128 n)
{
    if (n == 0) {
        throw std::invalid_argument("factor: zero input");
    }
    FactoredInt out;
    out.sign = n < 0 ? -1 : 1;
    uint128 m = abs_u128(n);
    if (m >= (uint128(1) << 127)) {
        throw overflow_error("factor: input exceeds 127-bit magnitude");
    }

    std::vector<uint128> primes;
    for (uint64_t p = 2; p < trial_limit && static_cast<uint128>(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) {
        if (m < static_cast<uint128>(trial_limit) * trial_limit) {
            primes.push_back(m); // below the square of the trial bound, so prime
        } else {
            factor_rec(m, primes);
        }
    }
    std::sort(primes.begin(), primes.end());
    for (uint128 p : primes) {
        if (!out.factors.empty() && out.factors.back().first == p) {
            ++out.factors.back().second;
        } else {
            out.factors.emplace_back(p, 1u);
        }
    }
    return out;
}

int ord_p(int128 n, uint128 p)
{
    if (n == 0) {
        throw std::invalid_argument("ord_p: zero input");
    }
    if (p < 2) {
        throw std::invalid_argument("ord_p: p must be a prime");
    }
    uint128 m = abs_u128(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int ord_p(const Rational &q, uint128 p)
{
    return ord_p(q.num, p) - ord_p(q.den, p);
}

FactoredInt stable_discriminant(const InvariantSet &inv)
{
    if (inv.disc == 0) {
        throw singular_curve_error();
    }
    // j = 0 has no denominator: potentially good reduction everywhere.
    if (inv.j.num == 0) {
        return FactoredInt{};
    }
    return factor(inv.j.den);
}

int128 reconstruct(const FactoredInt &f)
{
    int128 v = f.sign;
    for (const auto &[p, e] : f.factors) {
        if (p >= (uint128(1) << 127)) {
            throw overflow_error("reconstruct: prime exceeds 127-bit magnitude");
        }
        for (unsigned i = 0; i < e; ++i) {
            v = checked_mul(v, static_cast<int128>(p));
        }
    }
    return v;
}

double log_abs(const FactoredInt &f)
{
    double s = 0.0;
    for (const auto &[p, e] : f.factors) {
        s += static_cast<double>(e) * std::log(static_cast<double>(p));
    }
    return s;
}

std::string to_string(const FactoredInt &f)
{
    if (f.factors.empty()) {
        return "1";
    }
    std::string out;
    for (const auto &[p, e] : f.factors) {
        if (!out.empty()) {
            out += " * ";
        }
        out += to_string(p);
        if (e > 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

} // namespace hb
