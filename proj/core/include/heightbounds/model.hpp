#ifndef HEIGHTBOUNDS_MODEL_HPP
#define HEIGHTBOUNDS_MODEL_HPP

#include <string_view>

#include "heightbounds/int128.hpp"

namespace hb
{

/// An elliptic curve y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with
/// integer coefficients.
struct CurveQ {
    int128 a1 = 0;
    int128 a2 = 0;
    int128 a3 = 0;
    int128 a4 = 0;
    int128 a6 = 0;
};

/// Tate's standard quantities attached to a Weierstrass equation, all exact.
/// Invariants maintained: 4*b8 = b2*b6 - b4^2, c4^3 - c6^2 = 1728*disc and,
/// when disc != 0, j = c4^3/disc in lowest terms.
struct InvariantSet {
    int128 b2 = 0;
    int128 b4 = 0;
    int128 b6 = 0;
    int128 b8 = 0;
    int128 c4 = 0;
    int128 c6 = 0;
    int128 disc = 0;
    Rational j; // {0,1} placeholder when disc == 0; validate() is the gate
};

/// Evaluate Tate's formulas in exact integer arithmetic; throws
/// overflow_error if any intermediate leaves the 128-bit range.
InvariantSet invariants(const CurveQ &curve);

/// Succeeds iff the discriminant is nonzero; throws singular_curve_error
/// otherwise.
void validate(const CurveQ &curve);

/// Parse the textual form "a1,a2,a3,a4,a6" (optional whitespace).
CurveQ parse_curve(std::string_view text);

std::string to_string(const CurveQ &curve);

} // namespace hb

#endif
