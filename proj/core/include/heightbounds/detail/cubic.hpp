#ifndef HEIGHTBOUNDS_DETAIL_CUBIC_HPP
#define HEIGHTBOUNDS_DETAIL_CUBIC_HPP

#include <array>
#include <cmath>
#include <complex>

namespace hb::detail
{

/// Roots of the monic cubic x^3 + p x^2 + q x + r by Cardano, each polished
/// by a few Newton steps.
inline std::array<std::complex<double>, 3> cubic_roots(std::complex<double> p, std::complex<double> q,
                                                       std::complex<double> r)
{
    using cplx = std::complex<double>;
    const cplx shift = p / 3.0;
    const cplx A = q - p * p / 3.0;
    const cplx B = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;

    std::array<cplx, 3> roots;
    cplx s = std::sqrt(B * B / 4.0 + A * A * A / 27.0);
    cplx base = -B / 2.0 + s;
    if (std::abs(-B / 2.0 - s) > std::abs(base)) {
        base = -B / 2.0 - s;
    }
    const cplx w{-0.5, std::sqrt(3.0) / 2.0};
    cplx c = std::pow(base, 1.0 / 3.0);
    if (std::abs(c) == 0.0) {
        cplx t = std::pow(-B, 1.0 / 3.0); // A == 0: three cube roots of -B
        roots = {t, t * w, t * w * w};
    } else {
        cplx ck = c;
        for (int k = 0; k < 3; ++k) {
            roots[k] = ck - A / (3.0 * ck);
            ck *= w;
        }
    }
    for (auto &x : roots) {
        x -= shift;
        for (int it = 0; it < 3; ++it) {
            cplx f = ((x + p) * x + q) * x + r;
            cplx df = (3.0 * x + 2.0 * p) * x + q;
            if (std::abs(df) == 0.0) {
                break;
            }
            x -= f / df;
        }
    }
    return roots;
}

} // namespace hb::detail

#endif
