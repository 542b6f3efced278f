#include <benchmark/benchmark.h>

#include "heightbounds/assemble.hpp"

namespace
{

using namespace hb;

const PhiContext &ctx_11a3()
{
    static const PhiContext ctx = [] {
        auto ec = embed(parse_curve("0,-1,1,0,0"));
        return build_context(ec, make_lattice(ec));
    }();
    return ctx;
}

void BM_wp(benchmark::State &state)
{
    const auto &ctx = ctx_11a3();
    cplx z = 0.23 * ctx.lat.omega1 + 0.11 * ctx.lat.omega2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wp(z, ctx.lat));
    }
}
BENCHMARK(BM_wp);

void BM_local_height(benchmark::State &state)
{
    const auto &ctx = ctx_11a3();
    cplx z = 0.23 * ctx.lat.omega1 + 0.11 * ctx.lat.omega2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(local_height(z, ctx.lat, 11.0));
    }
}
BENCHMARK(BM_local_height);

void BM_phi(benchmark::State &state)
{
    const auto &ctx = ctx_11a3();
    cplx z = 0.23 * ctx.lat.omega1 + 0.11 * ctx.lat.omega2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi(z, ctx));
    }
}
BENCHMARK(BM_phi);

void BM_make_lattice(benchmark::State &state)
{
    auto ec = embed(parse_curve("0,-1,1,0,0"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_lattice(ec));
    }
}
BENCHMARK(BM_make_lattice);

void BM_elliptic_log(benchmark::State &state)
{
    const auto &ctx = ctx_11a3();
    for (auto _ : state) {
        benchmark::DoNotOptimize(elliptic_log(cplx(0.37, 1.21), ctx.lat, ctx.eb2));
    }
}
BENCHMARK(BM_elliptic_log);

void BM_optimize_sup(benchmark::State &state)
{
    const auto &ctx = ctx_11a3();
    OptimizerConfig cfg;
    cfg.eps = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(ctx, Direction::sup, cfg));
    }
}
BENCHMARK(BM_optimize_sup)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
