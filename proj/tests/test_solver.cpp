#include <doctest.h>

#include <cmath>

#include "skorohod/analysis.hpp"
#include "skorohod/errors.hpp"
#include "skorohod/scenario.hpp"
#include "skorohod/solver.hpp"

using namespace skorohod;

namespace {

Vec v1(double x) {
    Vec v(1);
    v << x;
    return v;
}

SampledCadlagPath linear_driver(double intercept, double slope, double horizon, int level) {
    const TimeGrid grid = TimeGrid::dyadic(horizon, level);
    std::vector<Vec> values;
    for (double t : grid.times()) values.push_back(v1(intercept + slope * t));
    return SampledCadlagPath(grid, std::move(values));
}

GeometryBudget interval_budget() {
    GeometryBudget b;
    b.r0 = 10.0;
    b.rho0 = 0.45;
    b.eta0 = 0.25;
    b.a = 1.0;
    b.e = 0.0;
    b.delta0 = 0.2;
    b.h0 = 1.05;
    b.l_table = ModulusTable::zero();
    b.convex_slices = true;
    return b;
}

SkorohodProblem static_interval_problem(int driver_level = 16) {
    auto box = std::make_shared<MovingBox>(std::vector<TimeFnPtr>{constant_fn(0.0)},
                                           std::vector<TimeFnPtr>{constant_fn(1.0)}, 1.0);
    return SkorohodProblem{box, ConeField::normal(),
                           linear_driver(0.5, -1.0, 1.0, driver_level), interval_budget()};
}

}  // namespace

TEST_CASE("discretize driver") {
    SUBCASE("step path on its own grid is unchanged") {
        const auto w = linear_driver(0.0, 1.0, 1.0, 3);
        CHECK(discretize_driver(w, w.grid()) == w);
    }
    SUBCASE("linear ramp on the level-2 grid") {
        const auto w = linear_driver(0.0, 1.0, 1.0, 12);
        const auto d = discretize_driver(w, TimeGrid::dyadic(1.0, 2));
        const std::vector<double> expected{0.0, 0.25, 0.5, 0.75, 1.0};
        REQUIRE(d.grid().node_count() == 5);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(d.values()[k](0) == doctest::Approx(expected[k]).epsilon(1e-12));
    }
    SUBCASE("sup distance to the original is bounded by the mesh oscillation") {
        const TimeGrid fine = TimeGrid::dyadic(1.0, 12);
        std::vector<Vec> values;
        for (double t : fine.times()) values.push_back(v1(std::sin(5.0 * t)));
        const SampledCadlagPath w(fine, std::move(values));
        const TimeGrid coarse = TimeGrid::dyadic(1.0, 4);
        const auto d = discretize_driver(w, coarse);
        double worst_gap = 0.0;
        for (double t : fine.times())
            worst_gap = std::max(worst_gap, (w.at(t) - d.at(t)).norm());
        double worst_osc = 0.0;
        for (std::size_t k = 0; k + 1 < coarse.node_count(); ++k)
            worst_osc = std::max(
                worst_osc, oscillation(w, coarse.times()[k], coarse.times()[k + 1]));
        CHECK(worst_gap <= worst_osc + 1e-12);
    }
}

TEST_CASE("admissibility") {
    SUBCASE("convex slices waive the conditions") {
        auto problem = static_interval_problem();
        const auto report = admissibility_check(problem, TimeGrid::dyadic(1.0, 3));
        CHECK(report.pass);
        CHECK(report.waived_convex);
    }
    SUBCASE("continuous driver passes at small mesh without the waiver") {
        auto problem = static_interval_problem();
        problem.budget.convex_slices = false;
        const auto fail = admissibility_check(problem, TimeGrid::dyadic(1.0, 2));
        CHECK(!fail.pass);  // per-interval oscillation 0.25 exceeds the thresholds
        const auto pass = admissibility_check(problem, TimeGrid::dyadic(1.0, 6));
        CHECK(pass.pass);
        for (double m : pass.margins) CHECK(m > 0.0);
    }
    SUBCASE("a delta0-sized driver jump can never pass") {
        auto problem = static_interval_problem(4);
        problem.budget.convex_slices = false;
        auto values = problem.driver.values();
        values[8] = v1(values[8](0) + problem.budget.delta0);
        for (std::size_t k = 9; k < values.size(); ++k)
            values[k] = v1(values[k](0) + problem.budget.delta0);
        problem.driver = SampledCadlagPath(problem.driver.grid(), std::move(values));
        const auto report = admissibility_check(problem, TimeGrid::dyadic(1.0, 4));
        CHECK(!report.pass);
        CHECK(report.driver_inadmissible);
    }
}

TEST_CASE("solve") {
    SUBCASE("constant interior driver never moves") {
        auto problem = static_interval_problem();
        problem.driver = linear_driver(0.25, 0.0, 1.0, 8);
        const auto sol = solve(problem, TimeGrid::dyadic(1.0, 8));
        for (const Vec& x : sol.x.values()) CHECK(x(0) == 0.25);
        CHECK(sol.reflection.total_variation.back() == 0.0);
        CHECK(validate_solution(problem, sol).empty());
    }
    SUBCASE("static interval matches the closed-form map") {
        const auto problem = static_interval_problem();
        const auto sol = solve(problem, TimeGrid::dyadic(1.0, 10));
        const auto& times = sol.x.grid().times();
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double expected = std::max(0.5 - times[k], 0.0);
            CHECK(sol.x.values()[k](0) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(sol.reflection.total_variation[k] ==
                  doctest::Approx(std::max(times[k] - 0.5, 0.0)).epsilon(1e-9));
        }
        CHECK(validate_solution(problem, sol).empty());
    }
    SUBCASE("moving floor sweeps the state") {
        auto box = std::make_shared<MovingBox>(
            std::vector<TimeFnPtr>{linear_fn(0.0, 1.0)},
            std::vector<TimeFnPtr>{constant_fn(10.0)}, 1.0);
        GeometryBudget budget = interval_budget();
        // the floor moves: modulus l(r) = r
        budget.l_table = ModulusTable({0.0, 1.0}, {0.0, 1.0});
        SkorohodProblem problem{box, ConeField::normal(), linear_driver(0.5, 0.0, 1.0, 16),
                                budget};
        const auto sol = solve(problem, TimeGrid::dyadic(1.0, 12));
        const auto oracle = oracle_1d(*box, problem.driver, 16);
        double gap = 0.0;
        for (std::size_t k = 0; k < sol.x.grid().node_count(); ++k)
            gap = std::max(gap, std::abs(sol.x.values()[k](0) -
                                         oracle.at(sol.x.grid().times()[k])(0)));
        CHECK(gap <= 1e-12);  // dyadic nesting makes both recursions exact here
        CHECK(validate_solution(problem, sol).empty());
    }
    SUBCASE("deterministic replay is bit identical") {
        const auto problem = static_interval_problem();
        const auto a = solve(problem, TimeGrid::dyadic(1.0, 9));
        const auto b = solve(problem, TimeGrid::dyadic(1.0, 9));
        CHECK(a.x == b.x);
    }
}

TEST_CASE("refinement ladder") {
    SUBCASE("static interval converges to the oracle") {
        const auto problem = static_interval_problem();
        const auto refined = refine_solve(problem, 4, 10);
        REQUIRE(refined.report.consecutive_distances.size() >= 2);
        CHECK(refined.report.cauchy);
        CHECK(refined.report.final_gap < 2e-3);

        const auto oracle = oracle_1d(
            MovingBox({constant_fn(0.0)}, {constant_fn(1.0)}, 1.0), problem.driver, 16);
        const auto& finest = refined.solutions.back().x;
        double gap = 0.0;
        for (std::size_t k = 0; k < finest.grid().node_count(); ++k)
            gap = std::max(gap, std::abs(finest.values()[k](0) -
                                         oracle.at(finest.grid().times()[k])(0)));
        CHECK(gap <= 2.0 * std::pow(2.0, -10) + 1e-12);
    }
    SUBCASE("time-independent refinement matches a direct solve") {
        const auto problem = static_interval_problem();
        const auto refined = refine_solve(problem, 6, 8);
        const auto direct = solve(problem, TimeGrid::dyadic(1.0, 8));
        CHECK(refined.solutions.back().x == direct.x);
    }
}

TEST_CASE("validate solution flags corruptions") {
    const auto problem = static_interval_problem();
    const auto sol = solve(problem, TimeGrid::dyadic(1.0, 8));
    REQUIRE(validate_solution(problem, sol).empty());

    SUBCASE("scaled lambda breaks additivity") {
        SkorohodSolution bad = sol;
        for (auto& l : bad.reflection.lambda) l *= 1.1;
        const auto violations = validate_solution(problem, bad);
        bool additivity = false;
        for (const auto& v : violations)
            if (v.find("x != w + lambda") != std::string::npos) additivity = true;
        CHECK(additivity);
    }
    SUBCASE("interior node with variation growth breaks complementarity") {
        SkorohodSolution bad = sol;
        // find a pushing step and move its state into the interior
        for (std::size_t k = 0; k + 1 < bad.x.grid().node_count(); ++k) {
            if (bad.reflection.total_variation[k + 1] >
                bad.reflection.total_variation[k]) {
                auto values = bad.x.values();
                values[k + 1] = v1(0.5);
                bad.x = SampledCadlagPath(bad.x.grid(), std::move(values));
                break;
            }
        }
        const auto violations = validate_solution(problem, bad);
        bool sp4 = false;
        for (const auto& v : violations)
            if (v.find("interior node") != std::string::npos) sp4 = true;
        CHECK(sp4);
    }
}

TEST_CASE("3-D ball with a radial ramp") {
    auto ball = std::make_shared<MovingBall>(
        std::vector<TimeFnPtr>{constant_fn(0.0), constant_fn(0.0), constant_fn(0.0)},
        constant_fn(1.0), 1.0);
    const Vec dir = unit((Eigen::Vector3d() << 1.0, 2.0, -0.5).finished());
    const TimeGrid grid = TimeGrid::dyadic(1.0, 8);
    std::vector<Vec> values;
    for (double t : grid.times()) values.push_back(Vec(1.6 * t * dir));
    SkorohodProblem problem{ball, ConeField::normal(), SampledCadlagPath(grid, values),
                            interval_budget()};
    const auto sol = solve(problem, grid);
    CHECK(validate_solution(problem, sol).empty());
    // radial drivers clamp radially: x = min(|w|, 1) * direction
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const double r = std::min(1.6 * grid.times()[k], 1.0);
        CHECK((sol.x.values()[k] - r * dir).norm() < 1e-9);
    }
    CHECK(sol.reflection.total_variation.back() ==
          doctest::Approx(0.6).epsilon(1e-2));
}

TEST_CASE("polytope with per-face generators") {
    // square [-1,1]^2; the bottom face reflects along a tilted generator
    auto square = std::make_shared<MovingConvexPolytope>(
        std::vector<Vec>{(Eigen::Vector2d() << 0, -1).finished(),
                         (Eigen::Vector2d() << 0, 1).finished(),
                         (Eigen::Vector2d() << -1, 0).finished(),
                         (Eigen::Vector2d() << 1, 0).finished()},
        std::vector<TimeFnPtr>{constant_fn(1.0), constant_fn(1.0), constant_fn(1.0),
                               constant_fn(1.0)},
        1.0);
    const Vec tilted = unit((Eigen::Vector2d() << 0.3, 1.0).finished());
    const auto cone = ConeField::finite_generators(
        {{tilted},
         {(Eigen::Vector2d() << 0, -1).finished()},
         {(Eigen::Vector2d() << 1, 0).finished()},
         {(Eigen::Vector2d() << -1, 0).finished()}});

    // drive straight through the bottom wall
    const TimeGrid grid = TimeGrid::dyadic(1.0, 8);
    std::vector<Vec> values;
    for (double t : grid.times())
        values.push_back((Eigen::Vector2d() << 0.0, -0.2 - 1.1 * t).finished());
    GeometryBudget budget = interval_budget();
    budget.h0 = 1.2;
    SkorohodProblem problem{square, cone, SampledCadlagPath(grid, values), budget};

    const auto sol = solve(problem, grid);
    CHECK(validate_solution(problem, sol).empty());
    CHECK(sol.reflection.total_variation.back() > 0.0);
    // pushes ride the tilted generator, so the state drifts right along the wall
    CHECK(sol.x.values().back()(0) > 0.05);
    CHECK(sol.x.values().back()(1) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("refinement skips inadmissible coarse levels") {
    auto problem = static_interval_problem();
    problem.budget.convex_slices = false;
    const auto refined = refine_solve(problem, 2, 8);
    CHECK(!refined.report.skipped_levels.empty());
    CHECK(refined.report.levels.front() > 2);
    CHECK(refined.report.cauchy);
}

TEST_CASE("annulus solve stays valid") {
    // nonconvex scenario: straight pull toward and around the hole
    const Scenario sc = load_scenario("annulus-normal");
    const SkorohodProblem problem = build_problem(sc);
    const auto sol = solve(problem, TimeGrid::dyadic(1.0, 9));
    CHECK(validate_solution(problem, sol).empty());
    CHECK(sol.reflection.total_variation.back() > 0.0);  // the wall was hit
    const auto jumps = jump_bound_check(problem, sol);
    CHECK(jumps.all_pass);
}
