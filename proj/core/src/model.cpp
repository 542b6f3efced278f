#include "heightbounds/model.hpp"

#include <stdexcept>
#include <vector>

namespace hb
{

namespace
{

// c4^3 / disc in lowest terms without forming c4^3 first: strip the gcd with
// the denominator from each of the three factors, then multiply what is left.
Rational reduced_j(int128 c4, int128 disc)
{
    if (c4 == 0) {
        return Rational{0, 1};
    }
    int128 den = disc;
    int128 n1 = c4, n2 = c4, n3 = c4;
    for (int128 *n : {&n1, &n2, &n3}) {
        int128 g = gcd128(*n, den);
        *n /= g;
        den /= g;
    }
    int128 num = checked_mul(checked_mul(n1, n2), n3);
    if (den < 0) {
        num = checked_neg(num);
        den = checked_neg(den);
    }
    return Rational{num, den};
}

} // namespace

InvariantSet invariants(const CurveQ &curve)
{
    const int128 a1 = curve.a1, a2 = curve.a2, a3 = curve.a3, a4 = curve.a4, a6 = curve.a6;

    InvariantSet inv;
    inv.b2 = checked_add(checked_mul(a1, a1), checked_mul(4, a2));
    inv.b4 = checked_add(checked_mul(2, a4), checked_mul(a1, a3));
    inv.b6 = checked_add(checked_mul(a3, a3), checked_mul(4, a6));
    // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    inv.b8 = checked_mul(checked_mul(a1, a1), a6);
    inv.b8 = checked_add(inv.b8, checked_mul(checked_mul(4, a2), a6));
    inv.b8 = checked_sub(inv.b8, checked_mul(checked_mul(a1, a3), a4));
    inv.b8 = checked_add(inv.b8, checked_mul(a2, checked_mul(a3, a3)));
    inv.b8 = checked_sub(inv.b8, checked_mul(a4, a4));

    inv.c4 = checked_sub(checked_mul(inv.b2, inv.b2), checked_mul(24, inv.b4));
    inv.c6 = checked_neg(checked_mul(checked_mul(inv.b2, inv.b2), inv.b2));
    inv.c6 = checked_add(inv.c6, checked_mul(36, checked_mul(inv.b2, inv.b4)));
    inv.c6 = checked_sub(inv.c6, checked_mul(216, inv.b6));

    // disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    inv.disc = checked_neg(checked_mul(checked_mul(inv.b2, inv.b2), inv.b8));
    inv.disc = checked_sub(inv.disc, checked_mul(8, checked_mul(checked_mul(inv.b4, inv.b4), inv.b4)));
    inv.disc = checked_sub(inv.disc, checked_mul(27, checked_mul(inv.b6, inv.b6)));
    inv.disc = checked_add(inv.disc, checked_mul(9, checked_mul(inv.b2, checked_mul(inv.b4, inv.b6))));

    inv.j = (inv.disc != 0) ? reduced_j(inv.c4, inv.disc) : Rational{0, 1};
    return inv;
}

void validate(const CurveQ &curve)
{
    if (invariants(curve).disc == 0) {
        throw singular_curve_error();
    }
}

CurveQ parse_curve(std::string_view text)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    if (parts.size() != 5) {
        throw std::invalid_argument("expected \"a1,a2,a3,a4,a6\", got \"" + std::string(text) + "\"");
    }
    CurveQ c;
    c.a1 = parse_int128(parts[0]);
    c.a2 = parse_int128(parts[1]);
    c.a3 = parse_int128(parts[2]);
    c.a4 = parse_int128(parts[3]);
    c.a6 = parse_int128(parts[4]);
    return c;
}

std::string to_string(const CurveQ &curve)
{
    return to_string(curve.a1) + "," + to_string(curve.a2) + "," + to_string(curve.a3) + "," +
           to_string(curve.a4) + "," + to_string(curve.a6);
}

} // namespace hb
