#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skorohod/budget.hpp"
#include "skorohod/cone.hpp"
#include "skorohod/domain.hpp"
#include "skorohod/path.hpp"
#include "skorohod/rng.hpp"

namespace skorohod {

struct SdeCoefficients {
    std::function<Vec(double, const Vec&)> drift;   // b(t, z) in R^d
    std::function<Mat(double, const Vec&)> sigma;   // d x m
    int brownian_dim = 1;                           // m
    double drift_bound = 0.0;                       // declared sup |b| on the closure
    double sigma_bound = 0.0;                       // declared sup of the operator norm
};

struct ReflectedSdePath {
    SampledCadlagPath x;        // reflected state
    SampledCadlagPath z;        // unreflected accumulator
    SampledCadlagPath w;        // realized Wiener path
    ReflectionRecord reflection;  // Lambda
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    double epsilon_sup = 0.0;    // realized end-of-interval residual sup
    double epsilon_bound = 0.0;  // (sup|b|) T/2^n + (sup|sigma|) max W oscillation
    std::vector<std::string> violations;  // identity/bound breaches; empty on success
};

// Projected Euler step on the dyadic grid k T / 2^level: the Z increment uses
// frozen coefficients and a keyed Gaussian, the state is obliquely projected
// back into the next slice, Lambda accrues the displacement.
ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs,
                                 const TimeDependentDomain& domain, const ConeField& cone,
                                 const GeometryBudget& budget, const Vec& z0, double horizon,
                                 int level, std::uint64_t seed, std::uint64_t path_index = 0);

// Same recursion driven by a precomputed Wiener path on its own grid; used to
// couple refinement levels through one realization.
ReflectedSdePath euler_reflected_on(const SdeCoefficients& coeffs,
                                    const TimeDependentDomain& domain, const ConeField& cone,
                                    const GeometryBudget& budget, const Vec& z0,
                                    const SampledCadlagPath& wiener);

struct TerminalStat {
    std::string name;
    std::function<double(const Vec&)> fn;
};

// one | norm | coord0, coord1, ...
TerminalStat make_terminal_stat(const std::string& name);

struct MonteCarloResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t paths = 0;
    int level = 0;
};

// Independent keyed paths, merged in path order so results do not depend on
// the execution schedule. SKOROHOD_THREADS caps the worker count.
MonteCarloResult monte_carlo(const SdeCoefficients& coeffs, const TimeDependentDomain& domain,
                             const ConeField& cone, const GeometryBudget& budget, const Vec& z0,
                             double horizon, int level, std::size_t paths, std::uint64_t seed,
                             const TerminalStat& stat);

// per-level run for weak-error slope studies
std::vector<MonteCarloResult> monte_carlo_ladder(
    const SdeCoefficients& coeffs, const TimeDependentDomain& domain, const ConeField& cone,
    const GeometryBudget& budget, const Vec& z0, double horizon,
    const std::vector<int>& levels, std::size_t paths, std::uint64_t seed,
    const TerminalStat& stat);

}  // namespace skorohod
