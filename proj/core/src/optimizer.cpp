#include "heightbounds/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <random>
#include <thread>

namespace hb
{

double d_radius(cplx z1, cplx z2)
{
    return 0.5 * std::max(std::abs(z1 - z2), std::abs(z1 + z2));
}

namespace
{

constexpr double delta_num = 1e-9; // slack absorbing binary64 evaluation noise

struct Node {
    cplx z0, z1, z2;
    double fz0 = 0.0;
    double bound = 0.0; // fz0 + 2 d M
    int depth = 0;
};

struct NodeOrder {
    bool operator()(const Node &a, const Node &b) const { return a.bound < b.bound; }
};

// A-posteriori enclosure of p over a region of radius d around the center:
// if L(s) bounds |p'| while |p| <= s and L(rho0 + dr) * d < dr, then
// |p - p(z0)| <= dr everywhere on the region (continuity along segments from
// the center; a pole inside would contradict the boundedness).
struct Enclosure {
    bool ok = false;
    cplx value;
    double radius = 0.0;
    double cap = 0.0; // |p| <= cap on the region
};

Enclosure enclose_wp(cplx center, double d, const PhiContext &ctx)
{
    Enclosure e;
    try {
        e.value = wp(center, ctx.lat);
    } catch (const pole_error &) {
        return e;
    }
    const double g2 = std::abs(ctx.lat.g2), g3 = std::abs(ctx.lat.g3);
    auto wp_prime_cap = [&](double s) { return std::sqrt(4.0 * s * s * s + g2 * s + g3); };
    const double rho0 = std::abs(e.value);
    double dr = 2.0 * d * wp_prime_cap(rho0 + 1.0);
    for (int it = 0; it < 4; ++it) {
        if (wp_prime_cap(rho0 + dr) * d < dr) {
            e.ok = true;
            e.radius = dr;
            e.cap = rho0 + dr;
            return e;
        }
        dr *= 4.0;
    }
    return e;
}

// Bound for |W| over the region. The global seed constant is always valid;
// in local-certified mode each branch field is bounded through its own
// derivative: dZ(z) = (-p(z) - C) dz - D dz~, so a p-enclosure turns one
// field evaluation at the center into a Lipschitz bound over the region.
// Away from S only the active branch matters; across S the max of the two
// field bounds still dominates |W|.
double region_bound(const PhiContext &ctx, const Node &n, double d, BoundMode mode)
{
    if (mode == BoundMode::global) {
        return ctx.M_global;
    }
    Enclosure e0 = enclose_wp(n.z0, d, ctx);
    if (!e0.ok) {
        return ctx.M_global;
    }
    const double abs_C = std::abs(ctx.lat.C);
    const double r0 = std::abs(e0.value - ctx.eb2 / 12.0);
    const bool inside_only = r0 + e0.radius < 1.0;
    const bool outside_only = r0 - e0.radius > 1.0;

    double bound_in = ctx.M_global;
    if (!outside_only) {
        try {
            double lip = e0.cap + abs_C + ctx.lat.D;
            if (inside_only) {
                lip = std::min(lip, local_lipschitz(ctx, Branch::inside));
            }
            bound_in = std::abs(Z_field(n.z0, ctx.lat)) + lip * d;
        } catch (const pole_error &) {
            return ctx.M_global;
        }
    }
    if (inside_only) {
        return std::min(bound_in, ctx.M_global);
    }

    double bound_out = ctx.M_global;
    Enclosure e1 = enclose_wp(n.z0 - ctx.t1.z, d, ctx);
    Enclosure e2 = enclose_wp(n.z0 + ctx.t1.z, d, ctx);
    if (e1.ok && e2.ok) {
        try {
            double lip = 0.5 * (e1.cap + e2.cap) + abs_C + ctx.lat.D;
            if (outside_only) {
                lip = std::min(lip, local_lipschitz(ctx, Branch::outside));
            }
            cplx field = 0.5 * (Z_field(n.z0 - ctx.t1.z, ctx.lat) + Z_field(n.z0 + ctx.t1.z, ctx.lat));
            bound_out = std::abs(field) + lip * d;
        } catch (const pole_error &) {
            bound_out = ctx.M_global;
        }
    }
    if (outside_only) {
        return std::min(bound_out, ctx.M_global);
    }
    return std::min(std::max(bound_in, bound_out), ctx.M_global);
}

class Reservoir
{
  public:
    explicit Reservoir(std::size_t cap) : cap_(cap), rng_(0x9e3779b97f4a7c15ull) {}

    void offer(const Node &n)
    {
        if (cap_ == 0) {
            return;
        }
        ++seen_;
        if (sample_.size() < cap_) {
            sample_.push_back({n.z0, n.z1, n.z2});
        } else {
            std::uniform_int_distribution<std::uint64_t> pick(0, seen_ - 1);
            std::uint64_t k = pick(rng_);
            if (k < cap_) {
                sample_[static_cast<std::size_t>(k)] = {n.z0, n.z1, n.z2};
            }
        }
    }

    std::vector<Parallelogram> take() { return std::move(sample_); }

  private:
    std::size_t cap_;
    std::uint64_t seen_ = 0;
    std::mt19937_64 rng_;
    std::vector<Parallelogram> sample_;
};

struct Work {
    // Best-first uses the heap; paper order uses the LIFO stack.
    std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
    std::vector<Node> stack;
    Strategy strategy;

    explicit Work(Strategy s) : strategy(s) {}

    bool empty() const { return strategy == Strategy::best_first ? heap.empty() : stack.empty(); }

    void push(Node n)
    {
        if (strategy == Strategy::best_first) {
            heap.push(std::move(n));
        } else {
            stack.push_back(std::move(n));
        }
    }

    Node pop()
    {
        if (strategy == Strategy::best_first) {
            Node n = heap.top();
            heap.pop();
            return n;
        }
        Node n = stack.back();
        stack.pop_back();
        return n;
    }
};

void atomic_max(std::atomic<double> &target, double v)
{
    double cur = target.load(std::memory_order_relaxed);
    while (v > cur && !target.compare_exchange_weak(cur, v)) {
    }
}

} // namespace

ExtremumCertificate optimize(const PhiContext &ctx, Direction direction, const OptimizerConfig &config)
{
    const auto t_start = std::chrono::steady_clock::now();
    const TieRule tie = direction == Direction::sup ? TieRule::upper : TieRule::lower;
    const double sign = direction == Direction::sup ? 1.0 : -1.0;
    auto f = [&](cplx z) { return sign * phi(z, ctx, tie); };

    std::atomic<double> mu{f(0.0)};
    std::atomic<std::uint64_t> nodes{1};
    std::atomic<int> max_depth{0};
    std::atomic<bool> budget_hit{false};

    Work work(config.strategy);
    Reservoir reservoir(config.audit_sample);
    std::mutex work_mutex; // guards work + reservoir in concurrent mode
    std::condition_variable work_cv;
    int in_flight = 0;
    std::exception_ptr failure;

    {
        Node root;
        root.z0 = 0.0;
        root.z1 = ctx.lat.omega1;
        root.z2 = ctx.lat.omega2;
        root.fz0 = mu.load();
        root.bound = root.fz0 + 2.0 * d_radius(root.z1, root.z2) * region_bound(ctx, root, d_radius(root.z1, root.z2), config.bound_mode);
        work.push(root);
    }

    // Expand one region: prune or split into the two halves along the line
    // through the center parallel to the minimal side.
    auto expand = [&](const Node &n, std::vector<Node> &out) {
        out.clear();
        cplx half1 = n.z1, half2 = n.z2, offset;
        if (std::abs(n.z1) >= std::abs(n.z2)) {
            half1 = n.z1 / 2.0;
            offset = n.z1 / 4.0;
        } else {
            half2 = n.z2 / 2.0;
            offset = n.z2 / 4.0;
        }
        for (double s : {-1.0, 1.0}) {
            Node child;
            child.z0 = n.z0 + s * offset;
            child.z1 = half1;
            child.z2 = half2;
            child.depth = n.depth + 1;
            child.fz0 = f(child.z0);
            atomic_max(mu, child.fz0);
            double d = d_radius(child.z1, child.z2);
            child.bound = child.fz0 + 2.0 * d * region_bound(ctx, child, d, config.bound_mode);
            out.push_back(child);
        }
        nodes.fetch_add(2, std::memory_order_relaxed);
        int depth_seen = n.depth + 1;
        int cur = max_depth.load(std::memory_order_relaxed);
        while (depth_seen > cur && !max_depth.compare_exchange_weak(cur, depth_seen)) {
        }
        if (nodes.load(std::memory_order_relaxed) > config.node_cap || depth_seen > config.depth_cap) {
            budget_hit.store(true);
        }
    };

    auto prune_or_push = [&](std::vector<Node> &children) {
        std::size_t pushed = 0;
        for (Node &child : children) {
            if (child.bound < mu.load(std::memory_order_relaxed) + config.eps + delta_num) {
                reservoir.offer(child);
            } else {
                work.push(std::move(child));
                ++pushed;
            }
        }
        return pushed;
    };

    if (config.workers <= 1) {
        std::vector<Node> children;
        while (!work.empty() && !budget_hit.load()) {
            Node n = work.pop();
            if (n.bound < mu.load() + config.eps + delta_num) {
                reservoir.offer(n);
                continue;
            }
            expand(n, children);
            prune_or_push(children);
        }
    } else {
        auto worker = [&]() {
            std::vector<Node> children;
            std::unique_lock<std::mutex> lock(work_mutex);
            while (true) {
                work_cv.wait(lock, [&] { return !work.empty() || in_flight == 0 || budget_hit.load(); });
                if (budget_hit.load() || (work.empty() && in_flight == 0)) {
                    work_cv.notify_all();
                    return;
                }
                if (work.empty()) {
                    continue;
                }
                Node n = work.pop();
                ++in_flight;
                lock.unlock();
                bool ok = true;
                try {
                    if (n.bound < mu.load() + config.eps + delta_num) {
                        std::lock_guard<std::mutex> g(work_mutex);
                        reservoir.offer(n);
                    } else {
                        expand(n, children);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> g(work_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    budget_hit.store(true);
                    ok = false;
                }
                lock.lock();
                std::size_t pushed = 0;
                if (ok && !children.empty()) {
                    pushed = prune_or_push(children);
                    children.clear();
                }
                --in_flight;
                // This worker immediately consumes one pushed region itself;
                // wake others only when there is surplus or we are done.
                if (budget_hit.load() || (work.empty() && in_flight == 0)) {
                    work_cv.notify_all();
                } else if (pushed > 1) {
                    work_cv.notify_one();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < config.workers; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    ExtremumCertificate cert;
    cert.direction = direction;
    cert.mu = sign * mu.load();
    cert.eps = config.eps;
    cert.eps_effective = config.eps + 2.0 * delta_num;
    cert.nodes_expanded = nodes.load();
    cert.max_depth = max_depth.load();
    cert.certified = !budget_hit.load();
    cert.audited_pruned = reservoir.take();
    cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return cert;
}

} // namespace hb
