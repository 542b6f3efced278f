#ifndef HEIGHTBOUNDS_ERRORS_HPP
#define HEIGHTBOUNDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hb
{

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The Weierstrass equation has vanishing discriminant.
struct singular_curve_error : error {
    singular_curve_error() : error("singular (\xce\x94=0)") {}
    explicit singular_curve_error(const std::string &msg) : error(msg) {}
};

/// Exact integer arithmetic left the supported 128-bit signed range.
struct overflow_error : error {
    explicit overflow_error(const std::string &msg) : error(msg) {}
};

/// An iteration or series failed to settle within its hard cap.
struct no_convergence_error : error {
    explicit no_convergence_error(const std::string &msg) : error(msg) {}
};

/// Evaluation requested at (or too close to) a lattice point.
struct pole_error : error {
    explicit pole_error(const std::string &msg) : error(msg) {}
};

/// The derivative field was queried on the branch boundary S; the caller
/// must pick a branch explicitly.
struct boundary_error : error {
    explicit boundary_error(const std::string &msg) : error(msg) {}
};

/// The path-length integral J admits no finite certified bound.
struct unbounded_error : error {
    explicit unbounded_error(const std::string &msg) : error(msg) {}
};

} // namespace hb

#endif
