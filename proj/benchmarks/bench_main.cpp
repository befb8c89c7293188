#include <benchmark/benchmark.h>

#include "gsforge/boussinesq.hpp"
#include "gsforge/euler.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/ipm.hpp"
#include "gsforge/localization.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"

using namespace gsforge;

static void BM_SeriesExact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_z_zeta_exact(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SeriesExact)->Arg(12)->Arg(24);

static void BM_BuildPhi(benchmark::State& state) {
    const Hodograph h(make_euler_profiles());
    const int n = static_cast<int>(state.range(0));
    const Grid2D g = Grid2D::symmetric(0.12, 0.12, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(build_phi(g, h));
}
BENCHMARK(BM_BuildPhi)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

static void BM_AssembleAndVerify(benchmark::State& state) {
    const Hodograph h(make_euler_profiles());
    const int n = static_cast<int>(state.range(0));
    const GridField phi = build_phi(Grid2D::symmetric(0.12, 0.12, n, n), h);
    for (auto _ : state) {
        const CylField f = assemble_velocity(phi, h, DimensionalParams{});
        benchmark::DoNotOptimize(euler_steady_residual(f.state()));
    }
}
BENCHMARK(BM_AssembleAndVerify)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

static void BM_ApplyCutoff(benchmark::State& state) {
    const Hodograph h(make_euler_profiles());
    const GridField phi = build_phi(Grid2D::symmetric(0.12, 0.12, 401, 401), h);
    const CylField f = assemble_velocity(phi, h, DimensionalParams{});
    const ShellThresholds th = annulus_thresholds(f, kDefaultShellRadius);
    const CutoffSpec c = CutoffSpec::bump(th.p_lo, th.p_hi);
    for (auto _ : state) benchmark::DoNotOptimize(apply_cutoff(f, c));
}
BENCHMARK(BM_ApplyCutoff)->Unit(benchmark::kMillisecond);

static void BM_MultiscaleSample(benchmark::State& state) {
    auto t = make_template();
    const MultiscaleField field(t, helical_placements(20, 1.0 / 3.0, HelixSpec{}, t->bounding_radius()));
    const Vec3 xi{1.08, 0.01, 0.02};
    std::size_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(field(field.to_world(n % 20, xi)));
        ++n;
    }
}
BENCHMARK(BM_MultiscaleSample);

static void BM_Boussinesq(benchmark::State& state) {
    const auto params = BoussinesqParams::with_k(1.0);
    const BoussinesqProfiles p(params);
    const Grid2D g = boussinesq_grid(params, 0.025, 0.2, 101, 401);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_boussinesq(build_psi(g, p), p));
}
BENCHMARK(BM_Boussinesq)->Unit(benchmark::kMillisecond);

static void BM_IpmResidual(benchmark::State& state) {
    const IpmSolution sol(IpmParams{});
    const Grid2D g(1.1, 1.3, 0.0, 0.2, 201, 201);
    for (auto _ : state) benchmark::DoNotOptimize(ipm_residual(sol.sample(g).state()));
}
BENCHMARK(BM_IpmResidual)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
