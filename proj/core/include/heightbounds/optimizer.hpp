#ifndef HEIGHTBOUNDS_OPTIMIZER_HPP
#define HEIGHTBOUNDS_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "heightbounds/phi.hpp"

namespace hb
{

/// Region z0 + s1*z1 + s2*z2 with s1, s2 in [-1/2, 1/2]; z1, z2 are
/// R-linearly independent.
struct Parallelogram {
    cplx z0, z1, z2;
};

/// sup_{z in R} |z - z0| = max(|z1 - z2|, |z1 + z2|)/2 (attained at a
/// corner).
double d_radius(cplx z1, cplx z2);

enum class Direction { sup, inf };
enum class Strategy { best_first, paper_order };
enum class BoundMode { global, local_certified };

struct OptimizerConfig {
    double eps = 1e-4;
    std::uint64_t node_cap = 5000000;
    int depth_cap = 80;
    Strategy strategy = Strategy::best_first;
    // local_certified regions fall back to the global constant whenever the
    // single-branch membership certificate fails, so both modes are sound;
    // the local constants keep the node count bounded near the extremum.
    BoundMode bound_mode = BoundMode::local_certified;
    int workers = 1;              // >1: the region queue is processed concurrently
    std::size_t audit_sample = 0; // reservoir-sample this many pruned regions
};

/// Certified extremum: for sup, true_sup - eps_effective < mu <= true_sup
/// whenever certified is set (mirrored for inf). mu is always an evaluated
/// value of phi.
struct ExtremumCertificate {
    Direction direction = Direction::sup;
    double mu = 0.0;
    double eps = 0.0;
    double eps_effective = 0.0;
    std::uint64_t nodes_expanded = 0;
    int max_depth = 0;
    double wall_seconds = 0.0;
    bool certified = false;
    std::vector<Parallelogram> audited_pruned; // filled when audit_sample > 0
};

/// Recursive parallelogram bisection over the fundamental domain
/// R(0, omega1, omega2), pruning with the derivative bound
/// |phi(z) - phi(z0)| <= 2 d(z1, z2) M.
ExtremumCertificate optimize(const PhiContext &ctx, Direction direction, const OptimizerConfig &config = {});

} // namespace hb

#endif
