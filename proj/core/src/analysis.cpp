#include "skorohod/analysis.hpp"

#include <cmath>

#include "skorohod/errors.hpp"

namespace skorohod {

using nlohmann::json;

KConstants k_constants(double a, double e) {
    if (!(a > 0.0)) throw std::domain_error("k_constants needs a > 0");
    if (!(0.0 <= e && e < 1.0)) throw std::domain_error("k_constants needs 0 <= e < 1");
    KConstants k;
    k.k1 = (a + 2.0 * a * a * e + 2.0 + a * e) / (a * (1.0 - e));
    k.k2 = (2.0 * a * a * e + 2.0 + a * e) / (a * (1.0 - e));
    k.k3 = (1.0 + k.k1) / a;
    k.k4 = (1.0 + k.k2) / a;
    return k;
}

EpochDecomposition epoch_decomposition(const SkorohodProblem& problem,
                                       const SkorohodSolution& solution) {
    const auto& domain = *problem.domain;
    const GeometryBudget& b = problem.budget;
    const auto& times = solution.x.grid().times();
    const auto& x = solution.x.values();
    const double T = times.back();
    const double l_mesh = b.l(solution.x.grid().mesh());

    EpochDecomposition out;
    auto on_boundary = [&](std::size_t k) {
        return domain.membership(times[k], x[k]) != Membership::Interior;
    };

    std::size_t cursor = 0;  // node index of the current T_i_hat
    while (cursor < times.size()) {
        // next boundary hit T_{i+1}
        std::size_t hit = cursor;
        while (hit < times.size() && !on_boundary(hit)) ++hit;
        if (hit > cursor)
            out.spans.push_back({times[cursor], hit < times.size() ? times[hit] : T, false});
        if (hit >= times.size()) break;

        // escape time T_hat: |x_t - x_hit| + l(t - t_hit) + l(mesh) reaches rho0
        const double eta_stop = std::min(times[hit] + b.eta0, T);
        std::size_t escape = hit + 1;
        while (escape < times.size() && times[escape] <= eta_stop) {
            const double drift =
                (x[escape] - x[hit]).norm() + b.l(times[escape] - times[hit]) + l_mesh;
            if (drift >= b.rho0) break;
            ++escape;
        }
        double t_hat;
        if (escape >= times.size())
            t_hat = T;
        else if (times[escape] > eta_stop)
            t_hat = eta_stop;
        else
            t_hat = times[escape];
        out.hits.emplace_back(times[hit], t_hat);
        out.spans.push_back({times[hit], t_hat, true});

        if (t_hat >= T) break;
        // continue scanning from the first node at or past t_hat
        std::size_t next = hit;
        while (next < times.size() && times[next] < t_hat) ++next;
        cursor = std::max(next, hit + 1);
    }
    return out;
}

json EstimateReport::to_json() const {
    json win = json::array();
    for (const auto& w : windows)
        win.push_back({{"t1", w.t1},
                       {"t2", w.t2},
                       {"epoch", w.epoch},
                       {"kind", w.kind},
                       {"lhs", w.lhs},
                       {"rhs", w.rhs},
                       {"pass", w.pass}});
    return {{"windows", win},
            {"constants",
             {{"K1", constants.k1},
              {"K2", constants.k2},
              {"K3", constants.k3},
              {"K4", constants.k4},
              {"a", a},
              {"e", e},
              {"mesh", mesh},
              {"l_mesh", l_mesh}}},
            {"ratios",
             {{"oscillation", ratio_oscillation},
              {"variation", ratio_variation},
              {"all_pass", all_pass}}}};
}

EstimateReport check_apriori(const SkorohodProblem& problem, const SkorohodSolution& solution,
                             int max_depth, double tol) {
    const GeometryBudget& b = problem.budget;
    EstimateReport report;
    report.constants = k_constants(b.a, b.e);
    report.a = b.a;
    report.e = b.e;
    report.mesh = solution.x.grid().mesh();
    report.l_mesh = b.l(report.mesh);

    const auto decomposition = epoch_decomposition(problem, solution);
    const auto& times = solution.x.grid().times();
    const auto& tv = solution.reflection.total_variation;

    auto node_at_or_after = [&](double t) {
        std::size_t k = 0;
        while (k < times.size() && times[k] < t) ++k;
        return k;
    };

    report.all_pass = true;
    int epoch_id = 0;
    for (const auto& span : decomposition.spans) {
        // node range [k_lo, k_hi]; spans are checked strictly before their stop
        std::size_t k_lo = node_at_or_after(span.start);
        std::size_t k_hi = k_lo;
        while (k_hi + 1 < times.size() && times[k_hi + 1] < span.stop) ++k_hi;
        if (k_hi <= k_lo) {
            ++epoch_id;
            continue;
        }

        // dyadic windows of the index range, plus the whole span
        std::vector<std::pair<std::size_t, std::size_t>> windows{{k_lo, k_hi}};
        for (int depth = 1; depth <= max_depth; ++depth) {
            const std::size_t pieces = std::size_t{1} << depth;
            if (k_hi - k_lo < pieces) break;
            for (std::size_t p = 0; p < pieces; ++p) {
                const std::size_t a_idx = k_lo + (k_hi - k_lo) * p / pieces;
                const std::size_t b_idx = k_lo + (k_hi - k_lo) * (p + 1) / pieces;
                if (b_idx > a_idx) windows.emplace_back(a_idx, b_idx);
            }
        }

        for (const auto& [ka, kb] : windows) {
            const double t1 = times[ka], t2 = times[kb];
            const double osc_w = oscillation(problem.driver, t1, t2);
            const double l_window = b.l(t2 - t1) + report.l_mesh;
            const double osc_x = oscillation(solution.x, t1, t2);
            const double dv = tv[kb] - tv[ka];

            WindowCheck osc_check{t1, t2, epoch_id, "oscillation", osc_x,
                                  report.constants.k1 * osc_w + report.constants.k2 * l_window,
                                  false};
            osc_check.pass = osc_check.lhs <= osc_check.rhs + tol;
            WindowCheck var_check{t1, t2, epoch_id, "variation", dv,
                                  report.constants.k3 * osc_w + report.constants.k4 * l_window,
                                  false};
            var_check.pass = var_check.lhs <= var_check.rhs + tol;

            report.all_pass = report.all_pass && osc_check.pass && var_check.pass;
            const double denom = osc_w + l_window;
            if (denom > tol) {
                report.ratio_oscillation = std::max(report.ratio_oscillation, osc_x / denom);
                report.ratio_variation = std::max(report.ratio_variation, dv / denom);
            }
            report.windows.push_back(std::move(osc_check));
            report.windows.push_back(std::move(var_check));
        }
        ++epoch_id;
    }
    return report;
}

json JumpBoundReport::to_json() const {
    json rows_json = json::array();
    for (const auto& r : rows)
        rows_json.push_back({{"step", r.step},
                             {"dx", r.dx},
                             {"dlambda", r.dlambda},
                             {"dw", r.dw},
                             {"bound", r.bound},
                             {"pass", r.pass}});
    return {{"rows", rows_json},
            {"factor", factor},
            {"slack", slack},
            {"all_pass", all_pass}};
}

JumpBoundReport jump_bound_check(const SkorohodProblem& problem,
                                 const SkorohodSolution& solution, double tol) {
    const GeometryBudget& b = problem.budget;
    JumpBoundReport report;
    report.factor = 1.0 / std::sqrt(1.0 - b.e);
    report.slack = b.h0 * b.l(solution.x.grid().mesh());
    report.all_pass = true;

    const auto& grid = solution.x.grid();
    const SampledCadlagPath w = discretize_driver(problem.driver, grid);
    const auto& x = solution.x.values();
    const auto& tv = solution.reflection.total_variation;

    for (std::size_t k = 0; k + 1 < grid.node_count(); ++k) {
        const double dx = (x[k + 1] - x[k]).norm();
        const double dlambda = tv[k + 1] - tv[k];
        if (dx <= tol && dlambda <= tol) continue;
        const double dw = (w.values()[k + 1] - w.values()[k]).norm();
        const double bound = report.factor * dw + report.slack;
        const bool pass = dx <= bound + tol && dlambda <= bound + tol;
        report.all_pass = report.all_pass && pass;
        report.rows.push_back({k, dx, dlambda, dw, bound, pass});
    }
    return report;
}

SampledCadlagPath oracle_1d(const MovingBox& interval, const SampledCadlagPath& driver,
                            int fine_level) {
    if (interval.dimension() != 1 || driver.dimension() != 1)
        throw ConfigError("oracle_1d works on 1-D intervals and drivers");
    const double T = driver.horizon();
    const TimeGrid grid = TimeGrid::dyadic(T, fine_level);
    std::vector<Vec> x(grid.node_count());

    auto clamp_to = [&](double t, double v) {
        const double g = interval.lo(t)(0);
        const double h = interval.hi(t)(0);
        if (!(g < h)) throw GeometryError("interval degenerates (floor >= ceiling)");
        return std::min(std::max(v, g), h);
    };

    Vec v0(1);
    v0 << clamp_to(0.0, driver.at(0.0)(0));
    x[0] = v0;
    for (std::size_t k = 1; k < grid.node_count(); ++k) {
        const double t = grid.times()[k];
        const double dw = driver.at(t)(0) - driver.at(grid.times()[k - 1])(0);
        Vec v(1);
        v << clamp_to(t, x[k - 1](0) + dw);
        x[k] = v;
    }
    return SampledCadlagPath(grid, std::move(x));
}

SampledCadlagPath one_sided_floor_map(const TimeFn& floor, const SampledCadlagPath& driver) {
    if (driver.dimension() != 1)
        throw ConfigError("one-sided reflection map works on 1-D drivers");
    const auto& times = driver.grid().times();
    std::vector<Vec> x(times.size());
    double running = 0.0;  // max(0, sup_{s<=t} (g(s) - w_s))
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double w = driver.values()[k](0);
        running = std::max(running, floor(times[k]) - w);
        Vec v(1);
        v << w + std::max(0.0, running);
        x[k] = v;
    }
    return SampledCadlagPath(driver.grid(), std::move(x));
}

}  // namespace skorohod
