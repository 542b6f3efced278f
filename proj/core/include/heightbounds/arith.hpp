#ifndef HEIGHTBOUNDS_ARITH_HPP
#define HEIGHTBOUNDS_ARITH_HPP

#include <utility>
#include <vector>

#include "heightbounds/int128.hpp"
#include "heightbounds/model.hpp"

namespace hb
{

/// Complete prime factorization of a nonzero integer: sign * prod p^e with
/// the primes strictly increasing.
struct FactoredInt {
    int sign = 1;
    std::vector<std::pair<uint128, unsigned>> factors;
};

/// Trial division below 10^6, then Brent's rho with a strong-pseudoprime
/// primality test on what remains. Throws overflow_error for |n| >= 2^127.
FactoredInt factor(int128 n);

bool is_prime(uint128 n);

/// p-adic valuation. ord_p(0) is undefined and throws.
int ord_p(int128 n, uint128 p);
int ord_p(const Rational &q, uint128 p);

/// The stable discriminant over Q: prod_p p^max(0, -ord_p(j)), i.e. the
/// denominator of j in lowest terms, factored. Always positive.
FactoredInt stable_discriminant(const InvariantSet &inv);

/// Reassemble the factored integer; throws overflow_error if it no longer
/// fits (cannot happen for outputs of factor()).
int128 reconstruct(const FactoredInt &f);

/// log of the absolute value, as sum e*log(p); exact-input logs keep large
/// discriminants accurate.
double log_abs(const FactoredInt &f);

/// "2^4 * 199 * 362793983647" style rendering of |f|; "1" for empty.
std::string to_string(const FactoredInt &f);

} // namespace hb

#endif
