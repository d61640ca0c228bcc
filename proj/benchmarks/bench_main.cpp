#include <benchmark/benchmark.h>

#include <random>

#include "lfr/raytrace.hpp"
#include "lfr/reflector.hpp"
#include "lfr/scene.hpp"

using namespace lfr;

namespace {

const Scene& focused_l() {
    static const Scene s = configure_scene(build_hallway_L(), ReflectorMode::beamfocus, 9);
    return s;
}

}  // namespace

static void BM_Bisector(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const Vector3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(bisector_normal(a, b, c));
}
BENCHMARK(BM_Bisector);

static void BM_Beamfocus70Tiles(benchmark::State& state) {
    const Scene& s = focused_l();
    for (auto _ : state) benchmark::DoNotOptimize(configure_beamfocus(s.arrays[0], s.ap, s.ue_positions[4]));
}
BENCHMARK(BM_Beamfocus70Tiles);

static void BM_TraceSingleRay(benchmark::State& state) {
    const SceneGeometry g(focused_l());
    const auto dirs = launch_directions(4096);
    TraceOptions o;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace(g, {focused_l().ap, dirs[i++ % dirs.size()]}, o));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TraceSingleRay);

static void BM_CoverageMap(benchmark::State& state) {
    CoverageOptions o;
    o.n_rays = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(coverage_map(focused_l(), o));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoverageMap)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_PointPaths(benchmark::State& state) {
    ProbeOptions o;
    o.n_rays = 100'000;
    for (auto _ : state) benchmark::DoNotOptimize(point_paths(focused_l(), focused_l().ue_positions[8], o));
}
BENCHMARK(BM_PointPaths)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
