// Micro benchmarks for the hot paths: pair counting, birth/death chain
// throughput, and full shadow sweeps at the experiment's scale.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gibbsmap/models.hpp"
#include "gibbsmap/pattern.hpp"
#include "gibbsmap/rng.hpp"
#include "gibbsmap/sampler.hpp"
#include "gibbsmap/shadow.hpp"

using namespace gibbsmap;

namespace {

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform01(), rng.uniform01()});
    return pts;
}

void bm_count_pairs_quadratic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointPattern pattern(Window::unit_square(), random_points(n, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_close_pairs(pattern, 0.1));
    }
    state.SetComplexityN(state.range(0));
}

void bm_count_pairs_grid(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointPattern pattern(Window::unit_square(), random_points(n, 1));
    const IndexedPattern grid(pattern, 0.1);
    for (auto _ : state) {
        long long total = 0;
        for (const Point& p : pattern.points()) total += grid.count_within(p) - 1;
        benchmark::DoNotOptimize(total / 2);
    }
    state.SetComplexityN(state.range(0));
}

void bm_mh_step(benchmark::State& state) {
    const GibbsModel model = StraussModel(0.1, Window::unit_square());
    RngStream rng(2);
    MhChain chain(model, {std::log(100.0), std::log(0.5)}, PointPattern(Window::unit_square()),
                  MhConfig{});
    chain.run(5000, rng); // reach the stationary occupancy first
    for (auto _ : state) {
        chain.step(rng);
    }
    benchmark::DoNotOptimize(chain.size());
}

void bm_shadow_sweep(benchmark::State& state) {
    const GibbsModel model = StraussModel(0.1, Window::unit_square());
    const PriorBox prior({0.0, -7.0}, {7.0, 0.0});
    ShadowConfig config;
    config.delta = {0.01, 0.01};
    config.inner_steps = 200;
    RngStream rng(3);
    ShadowState shadow = make_initial_state(model, {std::log(100.0), std::log(0.5)});
    for (auto _ : state) {
        SweepResult res = shadow_sweep(std::move(shadow), model, {45.30, 17.99}, config, prior,
                                       1.0, rng);
        shadow = std::move(res.state);
    }
    benchmark::DoNotOptimize(shadow.theta);
}

} // namespace

BENCHMARK(bm_count_pairs_quadratic)->Arg(50)->Arg(200)->Arg(800)->Complexity();
BENCHMARK(bm_count_pairs_grid)->Arg(50)->Arg(200)->Arg(800)->Complexity();
BENCHMARK(bm_mh_step);
BENCHMARK(bm_shadow_sweep);

BENCHMARK_MAIN();
