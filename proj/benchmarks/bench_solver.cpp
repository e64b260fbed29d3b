#include <benchmark/benchmark.h>

#include "skorohod/analysis.hpp"
#include "skorohod/interaction.hpp"
#include "skorohod/rng.hpp"
#include "skorohod/scenario.hpp"

using namespace skorohod;

namespace {

SkorohodProblem interval_problem() {
    static const SkorohodProblem problem = [] {
        Scenario sc = load_scenario("static-interval");
        return build_problem(sc);
    }();
    return problem;
}

void BM_SolveStaticInterval(benchmark::State& state) {
    const auto problem = interval_problem();
    const TimeGrid grid = TimeGrid::dyadic(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto solution = solve(problem, grid);
        benchmark::DoNotOptimize(solution.x.values().back());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.step_count()));
}
BENCHMARK(BM_SolveStaticInterval)->Arg(8)->Arg(10)->Arg(12);

void BM_ObliqueProjectBall(benchmark::State& state) {
    const MovingBall ball({constant_fn(0.0), constant_fn(0.0)}, constant_fn(1.0), 1.0);
    const auto cone = ConeField::rotated_normal(constant_fn(0.3));
    Vec y(2);
    y << 1.05, 0.02;
    const ProjectionParams params{0.5, 2.0};
    for (auto _ : state) {
        auto proj = oblique_project(ball, cone, 0.0, y, params);
        benchmark::DoNotOptimize(proj.point);
    }
}
BENCHMARK(BM_ObliqueProjectBall);

void BM_CounterRngNormal(benchmark::State& state) {
    const CounterRng rng(7);
    std::uint64_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal(1, ++k, 0));
}
BENCHMARK(BM_CounterRngNormal);

void BM_QuantityA_Annulus(benchmark::State& state) {
    const AnnulusDomain ring({constant_fn(0.0), constant_fn(0.0)}, constant_fn(0.5),
                             constant_fn(1.5), 1.0);
    Vec z(2);
    z << 0.5, 0.0;
    Resolution res;
    res.spatial = 128;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            quantity_a(ring, ConeField::normal(), 0.0, z, 0.2, 0.125, res));
}
BENCHMARK(BM_QuantityA_Annulus);

void BM_EulerReflected(benchmark::State& state) {
    const MovingBox box({constant_fn(0.0)}, {constant_fn(1.0)}, 1.0);
    GeometryBudget budget;
    budget.convex_slices = true;
    budget.l_table = ModulusTable::zero();
    SdeCoefficients coeffs;
    coeffs.brownian_dim = 1;
    coeffs.drift = [](double, const Vec&) { return Vec::Zero(1); };
    coeffs.sigma = [](double, const Vec&) { return Mat(Mat::Identity(1, 1)); };
    coeffs.drift_bound = 0.0;
    coeffs.sigma_bound = 1.0;
    Vec z0(1);
    z0 << 0.5;
    std::uint64_t path = 0;
    for (auto _ : state) {
        auto out = euler_reflected(coeffs, box, ConeField::normal(), budget, z0, 1.0,
                                   static_cast<int>(state.range(0)), 11, ++path);
        benchmark::DoNotOptimize(out.x.values().back());
    }
}
BENCHMARK(BM_EulerReflected)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
