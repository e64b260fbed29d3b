#include "skorohod/solver.hpp"

#include <cmath>

#include "skorohod/errors.hpp"

namespace skorohod {

using nlohmann::json;

json SolveDiagnostics::to_json() const {
    json steps_json = json::array();
    for (const auto& s : steps)
        steps_json.push_back({{"projection_distance", s.projection_distance},
                              {"step_jump", s.step_jump},
                              {"iterations", s.iterations}});
    return {{"steps", steps_json},
            {"max_step_jump", max_step_jump},
            {"mesh", mesh},
            {"l_mesh", l_mesh},
            {"violations", violations}};
}

json AdmissibilityReport::to_json() const {
    return {{"pass", pass},
            {"waived_convex", waived_convex},
            {"driver_inadmissible", driver_inadmissible},
            {"jump_bound", jump_bound},
            {"threshold", threshold},
            {"mesh", mesh},
            {"l_mesh", l_mesh},
            {"margins", margins},
            {"suggestion", suggestion}};
}

json RefineReport::to_json() const {
    return {{"levels", levels},
            {"consecutive_distances", consecutive_distances},
            {"cauchy", cauchy},
            {"final_gap", final_gap},
            {"skipped_levels", skipped_levels}};
}

SampledCadlagPath discretize_driver(const SampledCadlagPath& w, const TimeGrid& grid) {
    if (grid.horizon() > w.horizon() * (1.0 + 1e-12))
        throw ConfigError("grid horizon exceeds the driver horizon");
    std::vector<Vec> values;
    values.reserve(grid.node_count());
    for (double t : grid.times()) values.push_back(w.at(t));
    // the step approximation ends at w_T when the horizons coincide
    if (grid.horizon() >= w.horizon() * (1.0 - 1e-12)) values.back() = w.values().back();
    return SampledCadlagPath(grid, std::move(values));
}

AdmissibilityReport admissibility_check(const SkorohodProblem& problem, const TimeGrid& grid) {
    const GeometryBudget& b = problem.budget;
    AdmissibilityReport report;
    report.mesh = grid.mesh();
    report.l_mesh = b.l(report.mesh);
    report.jump_bound = std::min(b.delta0 / 4.0, b.rho0 / (4.0 * b.h0));
    report.threshold = std::min(b.delta0 / 2.0, b.rho0 / (2.0 * b.h0));
    report.waived_convex = b.convex_slices;

    const auto& times = grid.times();
    double worst_osc = 0.0;
    bool all_ok = true;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double osc = oscillation(problem.driver, times[k], times[k + 1]);
        worst_osc = std::max(worst_osc, osc);
        const double margin = report.threshold - (osc + report.l_mesh);
        report.margins.push_back(margin);
        if (!(margin > 0.0)) all_ok = false;
    }

    const double driver_jump = max_jump(problem.driver);
    const bool jump_ok = driver_jump < report.jump_bound;

    if (report.waived_convex) {
        report.pass = true;
        report.suggestion = all_ok ? "" : "convex slices waive the step-size restrictions";
        return report;
    }
    report.pass = all_ok && jump_ok;
    if (!jump_ok) {
        report.driver_inadmissible = true;
        report.suggestion = "driver jump " + std::to_string(driver_jump) +
                            " >= bound " + std::to_string(report.jump_bound) +
                            "; no refinement can fix this";
    } else if (!all_ok) {
        report.suggestion = "interval oscillation + l(mesh) exceeds the threshold; refine the grid";
    }
    return report;
}

SkorohodSolution solve(const SkorohodProblem& problem, const TimeGrid& grid) {
    const auto& domain = *problem.domain;
    const GeometryBudget& b = problem.budget;
    const SampledCadlagPath w = discretize_driver(problem.driver, grid);
    const auto& times = grid.times();
    const std::size_t n = grid.node_count();

    if (domain.distance_to_slice(0.0, w.values().front()) > 1e-9)
        throw SolverError(0, "driver start lies outside the initial slice closure");

    SolveDiagnostics diag;
    diag.mesh = grid.mesh();
    diag.l_mesh = b.l(diag.mesh);

    std::vector<Vec> x(n);
    std::vector<Vec> lambda(n);
    std::vector<double> tv(n, 0.0);
    std::vector<std::optional<Vec>> gammas(n - 1);

    x[0] = w.values().front();
    lambda[0] = Vec::Zero(w.dimension());

    ProjectionParams proj_params{b.delta0, b.h0};
    if (b.convex_slices) {
        // convex slices admit projections at any reach
        proj_params.enforce_budget = false;
        proj_params.delta0 = std::max(b.delta0, 4.0 * (max_jump(w) + diag.l_mesh) + 1e-9);
    }

    for (std::size_t k = 1; k < n; ++k) {
        const double t = times[k];
        const Vec increment = w.values()[k] - w.values()[k - 1];
        const Vec candidate = x[k - 1] + increment;
        StepDiagnostics step;

        if (domain.membership(t, candidate) != Membership::Exterior) {
            x[k] = candidate;
            lambda[k] = lambda[k - 1];
            tv[k] = tv[k - 1];
        } else {
            const double dist = domain.distance_to_slice(t, candidate);
            step.projection_distance = dist;
            if (!b.convex_slices && dist >= b.delta0)
                throw SolverError(k, "candidate " + std::to_string(dist) +
                                         " from the slice exceeds the delta0 budget");
            ProjectionResult proj;
            try {
                proj = oblique_project(domain, problem.cone, t, candidate, proj_params);
            } catch (const ProjectionError& err) {
                throw SolverError(k, std::string("projection failed: ") + err.what());
            }
            const Vec push = proj.point - candidate;
            x[k] = proj.point;
            lambda[k] = lambda[k - 1] + push;
            const double push_len = push.norm();
            tv[k] = tv[k - 1] + push_len;
            if (push_len > 0.0) gammas[k - 1] = unit(push);
            step.iterations = proj.iterations;
        }

        step.step_jump = (x[k] - x[k - 1]).norm();
        diag.max_step_jump = std::max(diag.max_step_jump, step.step_jump);
        if (!b.convex_slices && !(step.step_jump < b.rho0))
            throw SolverError(k, "state jump " + std::to_string(step.step_jump) +
                                     " reached rho0 = " + std::to_string(b.rho0));
        diag.steps.push_back(step);
    }

    SkorohodSolution solution{
        SampledCadlagPath(grid, std::move(x)),
        ReflectionRecord{grid, std::move(lambda), std::move(tv), std::move(gammas)},
        std::move(diag)};
    return solution;
}

RefineResult refine_solve(const SkorohodProblem& problem, int n_min, int n_max) {
    if (n_min > n_max) throw ConfigError("refine_solve needs n_min <= n_max");
    const double T = problem.driver.horizon();
    RefineResult out;
    for (int level = n_min; level <= n_max; ++level) {
        const TimeGrid grid = TimeGrid::dyadic(T, level);
        const auto report = admissibility_check(problem, grid);
        if (!report.pass) {
            if (report.driver_inadmissible)
                throw SolverError(0, "driver inadmissible: " + report.suggestion);
            out.report.skipped_levels.push_back(level);
            continue;
        }
        out.solutions.push_back(solve(problem, grid));
        out.report.levels.push_back(level);
    }
    if (out.solutions.empty())
        throw SolverError(0, "no level in the range passed the admissibility check");

    for (std::size_t i = 0; i + 1 < out.solutions.size(); ++i) {
        const auto& coarse = out.solutions[i].x;
        const auto& fine = out.solutions[i + 1].x;
        double gap = 0.0;
        const auto& times = coarse.grid().times();
        for (std::size_t k = 0; k < times.size(); ++k)
            gap = std::max(gap, (coarse.values()[k] - fine.at(times[k])).norm());
        out.report.consecutive_distances.push_back(gap);
    }
    int exceptions = 0;
    const auto& d = out.report.consecutive_distances;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i + 1] > d[i]) ++exceptions;
    out.report.cauchy = exceptions <= 1;
    out.report.final_gap = d.empty() ? 0.0 : d.back();
    return out;
}

std::vector<std::string> validate_solution(const SkorohodProblem& problem,
                                           const SkorohodSolution& solution, double tol) {
    std::vector<std::string> violations;
    const auto& domain = *problem.domain;
    const auto& grid = solution.x.grid();
    const auto& times = grid.times();
    const SampledCadlagPath w = discretize_driver(problem.driver, grid);
    const auto& rec = solution.reflection;

    // record-level structure first
    for (auto& v : rec.structural_violations(tol)) violations.push_back(std::move(v));

    const double membership_eps = std::max(tol, 1e-8);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Vec& xk = solution.x.values()[k];
        // SP1 membership
        if (domain.membership(times[k], xk, membership_eps) == Membership::Exterior)
            violations.push_back("x leaves the slice closure at node " + std::to_string(k));
        // SP1 additivity x = w + lambda to relative 1e-12
        const double scale = std::max(1.0, xk.norm());
        if ((xk - (w.values()[k] + rec.lambda[k])).norm() > 1e-12 * scale)
            violations.push_back("x != w + lambda at node " + std::to_string(k));
    }

    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dv = rec.total_variation[k + 1] - rec.total_variation[k];
        const bool pushed = dv > tol;
        const Vec& xk1 = solution.x.values()[k + 1];
        if (pushed) {
            // SP4: pushing only at boundary states (ties count as boundary)
            if (domain.membership(times[k + 1], xk1, membership_eps) == Membership::Interior)
                violations.push_back("variation grows at interior node " +
                                     std::to_string(k + 1));
            // SP2: the recorded direction lies in the cone at (t, x_t)
            if (rec.gammas[k].has_value() &&
                !problem.cone.contains(domain, times[k + 1], xk1, *rec.gammas[k], 1e-5))
                violations.push_back("push direction leaves the cone at step " +
                                     std::to_string(k));
        }
        // discrete complementarity: pushes happen iff the candidate was exterior
        if (k < solution.diagnostics.steps.size()) {
            const bool displaced =
                solution.diagnostics.steps[k].projection_distance > tol;
            if (pushed && !displaced)
                violations.push_back("variation grew without an exterior candidate at step " +
                                     std::to_string(k));
        }
    }

    if (!problem.budget.convex_slices &&
        !(max_jump(solution.x) < problem.budget.rho0))
        violations.push_back("state jump reaches rho0");

    return violations;
}

}  // namespace skorohod
