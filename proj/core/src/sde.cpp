#include "skorohod/sde.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "skorohod/errors.hpp"
#include "skorohod/projection.hpp"

namespace skorohod {

namespace {

ReflectedSdePath euler_core(const SdeCoefficients& coeffs, const TimeDependentDomain& domain,
                            const ConeField& cone, const GeometryBudget& budget, const Vec& z0,
                            const TimeGrid& grid, std::vector<Vec> wiener, std::uint64_t seed,
                            std::uint64_t path_index) {
    const int d = domain.dimension();
    const int m = coeffs.brownian_dim;
    if (z0.size() != d) throw ConfigError("initial state has the wrong dimension");
    if (domain.distance_to_slice(0.0, z0) > 1e-9)
        throw SolverError(0, "initial state outside the initial slice closure");

    const std::size_t n = grid.node_count();
    std::vector<Vec> x(n), z(n), lambda(n);
    std::vector<double> tv(n, 0.0);
    std::vector<std::optional<Vec>> gammas(n - 1);
    x[0] = z0;
    z[0] = z0;
    lambda[0] = Vec::Zero(d);

    ProjectionParams proj_params{budget.delta0, budget.h0};
    if (budget.convex_slices) proj_params.enforce_budget = false;

    double max_dw = 0.0;
    double max_dz = 0.0;
    double max_dt = 0.0;
    std::vector<std::string> violations;

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double t = grid.times()[k];
        const double t_next = grid.times()[k + 1];
        const double dt = t_next - t;
        max_dt = std::max(max_dt, dt);

        const Vec dw = wiener[k + 1] - wiener[k];
        max_dw = std::max(max_dw, dw.norm());

        const Vec b = coeffs.drift(t, x[k]);
        const Mat s = coeffs.sigma(t, x[k]);
        if (s.rows() != d || s.cols() != m)
            throw ConfigError("sigma evaluation has the wrong shape");
        if (b.norm() > coeffs.drift_bound * (1.0 + 1e-9) + 1e-12)
            violations.push_back("drift exceeds its declared bound at step " +
                                 std::to_string(k));
        const double s_norm =
            s.size() == 0 ? 0.0 : s.jacobiSvd().singularValues()(0);
        if (s_norm > coeffs.sigma_bound * (1.0 + 1e-9) + 1e-12)
            violations.push_back("sigma exceeds its declared bound at step " +
                                 std::to_string(k));

        const Vec dz = dt * b + s * dw;
        max_dz = std::max(max_dz, dz.norm());
        z[k + 1] = z[k] + dz;

        const Vec candidate = x[k] + dz;
        const double dist = domain.distance_to_slice(t_next, candidate);
        if (!budget.convex_slices && dist >= budget.delta0)
            throw SolverError(k, "step rejected: increment pushed the state " +
                                     std::to_string(dist) +
                                     " beyond the delta0 budget; raise the level");

        if (dist == 0.0 || domain.membership(t_next, candidate) != Membership::Exterior) {
            x[k + 1] = candidate;
            lambda[k + 1] = lambda[k];
            tv[k + 1] = tv[k];
        } else {
            ProjectionResult proj;
            try {
                proj = oblique_project(domain, cone, t_next, candidate, proj_params);
            } catch (const ProjectionError& err) {
                throw SolverError(k, std::string("projection failed: ") + err.what());
            }
            const Vec push = proj.point - candidate;
            x[k + 1] = proj.point;
            lambda[k + 1] = lambda[k] + push;
            tv[k + 1] = tv[k] + push.norm();
            if (push.norm() > 0.0) gammas[k] = unit(push);
        }

        // identity Lambda_{k+1} = Lambda_k + X_{k+1} - X_k - (Z_{k+1} - Z_k)
        const Vec identity = lambda[k] + x[k + 1] - x[k] - (z[k + 1] - z[k]);
        const double scale = std::max(1.0, lambda[k + 1].norm());
        if ((lambda[k + 1] - identity).norm() > 1e-12 * scale)
            violations.push_back("reflection identity fails at step " + std::to_string(k));

        if (!budget.convex_slices && !((x[k + 1] - x[k]).norm() < budget.rho0))
            throw SolverError(k, "state jump reached rho0");
    }

    const double epsilon_bound = coeffs.drift_bound * max_dt + coeffs.sigma_bound * max_dw;
    if (max_dz > epsilon_bound * (1.0 + 1e-9) + 1e-12)
        violations.push_back("epsilon residual exceeds its declared bound");

    return ReflectedSdePath{
        SampledCadlagPath(grid, std::move(x)),
        SampledCadlagPath(grid, std::move(z)),
        SampledCadlagPath(grid, std::move(wiener)),
        ReflectionRecord{grid, std::move(lambda), std::move(tv), std::move(gammas)},
        seed,
        path_index,
        max_dz,
        epsilon_bound,
        std::move(violations)};
}

}  // namespace

ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs,
                                 const TimeDependentDomain& domain, const ConeField& cone,
                                 const GeometryBudget& budget, const Vec& z0, double horizon,
                                 int level, std::uint64_t seed, std::uint64_t path_index) {
    const TimeGrid grid = TimeGrid::dyadic(horizon, level);
    const int m = coeffs.brownian_dim;
    const double sqrt_dt = std::sqrt(horizon / static_cast<double>(grid.step_count()));
    const CounterRng rng(seed);
    std::vector<Vec> wiener(grid.node_count());
    wiener[0] = Vec::Zero(m);
    for (std::size_t k = 0; k + 1 < grid.node_count(); ++k) {
        Vec dw(m);
        for (int j = 0; j < m; ++j)
            dw(j) = sqrt_dt * rng.normal(path_index, k, static_cast<std::uint32_t>(j));
        wiener[k + 1] = wiener[k] + dw;
    }
    return euler_core(coeffs, domain, cone, budget, z0, grid, std::move(wiener), seed,
                      path_index);
}

ReflectedSdePath euler_reflected_on(const SdeCoefficients& coeffs,
                                    const TimeDependentDomain& domain, const ConeField& cone,
                                    const GeometryBudget& budget, const Vec& z0,
                                    const SampledCadlagPath& wiener) {
    if (wiener.dimension() != coeffs.brownian_dim)
        throw ConfigError("Wiener path dimension must match the noise dimension");
    return euler_core(coeffs, domain, cone, budget, z0, wiener.grid(), wiener.values(), 0, 0);
}

TerminalStat make_terminal_stat(const std::string& name) {
    if (name == "one") return {name, [](const Vec&) { return 1.0; }};
    if (name == "norm") return {name, [](const Vec& x) { return x.norm(); }};
    if (name.rfind("coord", 0) == 0) {
        const int j = name.size() > 5 ? std::stoi(name.substr(5)) : 0;
        return {name, [j](const Vec& x) {
                    if (j >= x.size()) throw ConfigError("stat coordinate out of range");
                    return x(j);
                }};
    }
    throw ConfigError("unknown terminal statistic '" + name + "'");
}

MonteCarloResult monte_carlo(const SdeCoefficients& coeffs, const TimeDependentDomain& domain,
                             const ConeField& cone, const GeometryBudget& budget, const Vec& z0,
                             double horizon, int level, std::size_t paths, std::uint64_t seed,
                             const TerminalStat& stat) {
    if (paths < 2) throw ConfigError("monte_carlo needs at least 2 paths");

    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SKOROHOD_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) workers = static_cast<std::size_t>(parsed);
    }
    workers = std::max<std::size_t>(1, std::min(workers, paths));

    std::vector<double> stats(paths, 0.0);
    std::vector<std::exception_ptr> errors(workers);

    auto worker = [&](std::size_t w) {
        try {
            for (std::size_t p = w; p < paths; p += workers) {
                const auto path = euler_reflected(coeffs, domain, cone, budget, z0, horizon,
                                                  level, seed, p);
                if (!path.violations.empty())
                    throw SolverError(p, "path invariant violated: " + path.violations.front());
                stats[p] = stat.fn(path.x.values().back());
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    // sequential reduction in path order keeps results schedule-independent
    double sum = 0.0;
    for (double v : stats) sum += v;
    const double mean = sum / static_cast<double>(paths);
    double ss = 0.0;
    for (double v : stats) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(paths - 1);

    MonteCarloResult out;
    out.mean = mean;
    out.std_error = std::sqrt(variance / static_cast<double>(paths));
    out.paths = paths;
    out.level = level;
    return out;
}

std::vector<MonteCarloResult> monte_carlo_ladder(
    const SdeCoefficients& coeffs, const TimeDependentDomain& domain, const ConeField& cone,
    const GeometryBudget& budget, const Vec& z0, double horizon,
    const std::vector<int>& levels, std::size_t paths, std::uint64_t seed,
    const TerminalStat& stat) {
    std::vector<MonteCarloResult> out;
    for (int level : levels)
        out.push_back(monte_carlo(coeffs, domain, cone, budget, z0, horizon, level, paths,
                                  seed, stat));
    return out;
}

}  // namespace skorohod
