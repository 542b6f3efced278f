#include "heightbounds/int128.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace hb
{

namespace
{

const int128 int128_min = int128(uint128(1) << 127);

} // namespace

int128 checked_add(int128 a, int128 b)
{
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw overflow_error("integer addition exceeds 128-bit range");
    }
    return r;
}

int128 checked_sub(int128 a, int128 b)
{
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw overflow_error("integer subtraction exceeds 128-bit range");
    }
    return r;
}

int128 checked_mul(int128 a, int128 b)
{
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw overflow_error("integer multiplication exceeds 128-bit range");
    }
    return r;
}

int128 checked_neg(int128 a)
{
    if (a == int128_min) {
        throw overflow_error("integer negation exceeds 128-bit range");
    }
    return -a;
}

int128 gcd128(int128 a, int128 b)
{
    // |INT128_MIN| is not representable; callers never pass it (all curve
    // invariants are products of checked operations that reject it).
    if (a < 0) {
        a = checked_neg(a);
    }
    if (b < 0) {
        b = checked_neg(b);
    }
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int128 parse_int128(std::string_view s)
{
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw std::invalid_argument("expected a decimal integer, got \"" + std::string(s) + "\"");
    }
    uint128 mag = 0;
    const uint128 limit = neg ? (uint128(1) << 127) : ((uint128(1) << 127) - 1);
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        unsigned d = static_cast<unsigned>(s[i] - '0');
        if (mag > (limit - d) / 10) {
            throw overflow_error("integer literal exceeds 128-bit range");
        }
        mag = mag * 10 + d;
    }
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    if (i != s.size()) {
        throw std::invalid_argument("trailing characters in integer \"" + std::string(s) + "\"");
    }
    return neg ? -static_cast<int128>(mag) : static_cast<int128>(mag);
}

std::string to_string(uint128 v)
{
    if (v == 0) {
        return "0";
    }
    std::string out;
    while (v != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return out;
}

std::string to_string(int128 v)
{
    if (v < 0) {
        // Two's complement magnitude, valid for INT128_MIN as well.
        return "-" + to_string(static_cast<uint128>(~static_cast<uint128>(v) + 1));
    }
    return to_string(static_cast<uint128>(v));
}

double to_double(int128 v)
{
    return static_cast<double>(v);
}

Rational make_rational(int128 num, int128 den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    if (num == 0) {
        return Rational{0, 1};
    }
    int128 g = gcd128(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = checked_neg(num);
        den = checked_neg(den);
    }
    return Rational{num, den};
}

} // namespace hb
