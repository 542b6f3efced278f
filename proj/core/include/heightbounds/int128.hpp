#ifndef HEIGHTBOUNDS_INT128_HPP
#define HEIGHTBOUNDS_INT128_HPP

#include <string>
#include <string_view>

#include "heightbounds/errors.hpp"

namespace hb
{

using int128 = __int128;
using uint128 = unsigned __int128;

/// Overflow-checked signed arithmetic. Wraparound would silently corrupt
/// every bound computed downstream, so these throw hb::overflow_error
/// instead of wrapping.
int128 checked_add(int128 a, int128 b);
int128 checked_sub(int128 a, int128 b);
int128 checked_mul(int128 a, int128 b);
int128 checked_neg(int128 a);

int128 gcd128(int128 a, int128 b);

/// Parse a (possibly signed) decimal integer; throws overflow_error when the
/// value does not fit in a signed 128-bit integer, std::invalid_argument on
/// malformed text.
int128 parse_int128(std::string_view s);

std::string to_string(int128 v);
std::string to_string(uint128 v);

double to_double(int128 v);

/// Exact rational number, always stored in lowest terms with den > 0.
struct Rational {
    int128 num = 0;
    int128 den = 1;
};

Rational make_rational(int128 num, int128 den);

} // namespace hb

#endif
