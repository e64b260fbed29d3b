#pragma once

#include <json.hpp>

#include "skorohod/solver.hpp"

namespace skorohod {

struct KConstants {
    double k1, k2, k3, k4;
};

// K1 = (a + 2a^2 e + 2 + ae)/(a(1-e)), K2 = (2a^2 e + 2 + ae)/(a(1-e)),
// K3 = (1+K1)/a, K4 = (1+K2)/a
KConstants k_constants(double a, double e);

// Alternating boundary-hit / escape spans of the discrete path. Boundary
// spans [T_i, T_i_hat) carry the local estimates; interior spans between them
// move with the driver.
struct EpochSpan {
    double start;
    double stop;
    bool boundary_regime;
};

struct EpochDecomposition {
    std::vector<std::pair<double, double>> hits;  // (T_i, T_i_hat)
    std::vector<EpochSpan> spans;
};

EpochDecomposition epoch_decomposition(const SkorohodProblem& problem,
                                       const SkorohodSolution& solution);

struct WindowCheck {
    double t1, t2;
    int epoch;
    std::string kind;  // "oscillation" or "variation"
    double lhs, rhs;
    bool pass;
};

struct EstimateReport {
    std::vector<WindowCheck> windows;
    KConstants constants{0, 0, 0, 0};
    double a = 0.0, e = 0.0, mesh = 0.0, l_mesh = 0.0;
    double ratio_oscillation = 0.0;  // max lhs / (|w| + l terms), constants stripped
    double ratio_variation = 0.0;
    bool all_pass = false;

    nlohmann::json to_json() const;
};

// Both localization inequalities on every dyadic window (depth <= max_depth)
// inside each epoch span, with the mesh modulus slack. Report-only: failures
// are findings, not exceptions.
EstimateReport check_apriori(const SkorohodProblem& problem, const SkorohodSolution& solution,
                             int max_depth = 6, double tol = 1e-9);

struct JumpBoundRow {
    std::size_t step;
    double dx, dlambda, dw, bound;
    bool pass;
};

struct JumpBoundReport {
    std::vector<JumpBoundRow> rows;  // steps where the state actually moved
    double factor = 1.0;             // 1/sqrt(1-e)
    double slack = 0.0;              // h0 * l(mesh)
    bool all_pass = false;

    nlohmann::json to_json() const;
};

// |dx_k| <= |dw_k|/sqrt(1-e) + h0 l(mesh) per step, same for the variation
// increment; the slack is the frozen-domain discretization's contribution.
JumpBoundReport jump_bound_check(const SkorohodProblem& problem,
                                 const SkorohodSolution& solution, double tol = 1e-9);

// Ground truth for time-dependent intervals: brute-force clamp recursion on a
// fine dyadic grid. Errors when the interval degenerates.
SampledCadlagPath oracle_1d(const MovingBox& interval, const SampledCadlagPath& driver,
                            int fine_level = 16);

// One-sided reflection at a moving floor g(t):
// x_t = w_t + max(0, sup_{s <= t} (g(s) - w_s)), evaluated on the driver grid.
SampledCadlagPath one_sided_floor_map(const TimeFn& floor, const SampledCadlagPath& driver);

}  // namespace skorohod
