#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "skorohod/budget.hpp"
#include "skorohod/cone.hpp"
#include "skorohod/domain.hpp"
#include "skorohod/path.hpp"
#include "skorohod/projection.hpp"

namespace skorohod {

struct SkorohodProblem {
    DomainPtr domain;
    ConeField cone;
    SampledCadlagPath driver;  // reference-resolution w with w_0 in D_0 closure
    GeometryBudget budget;
};

struct StepDiagnostics {
    double projection_distance = 0.0;  // d(candidate, slice closure) before the push
    double step_jump = 0.0;            // |x_k - x_{k-1}|
    int iterations = 0;
};

struct SolveDiagnostics {
    std::vector<StepDiagnostics> steps;
    double max_step_jump = 0.0;
    double mesh = 0.0;
    double l_mesh = 0.0;
    std::vector<std::string> violations;  // empty on success

    nlohmann::json to_json() const;
};

struct SkorohodSolution {
    SampledCadlagPath x;
    ReflectionRecord reflection;
    SolveDiagnostics diagnostics;
};

// Step-function approximation of w on the grid; node values are w sampled
// cadlag at the nodes, the final value is w_T.
SampledCadlagPath discretize_driver(const SampledCadlagPath& w, const TimeGrid& grid);

struct AdmissibilityReport {
    bool pass = false;
    bool waived_convex = false;       // convex slices drop the jump restrictions
    bool driver_inadmissible = false; // a driver jump no refinement can fix
    double jump_bound = 0.0;          // delta0/4 ^ rho0/(4 h0)
    double threshold = 0.0;           // min(delta0/2, rho0/(2 h0))
    double mesh = 0.0;
    double l_mesh = 0.0;
    std::vector<double> margins;      // per interval: threshold - (osc_k + l(mesh))
    std::string suggestion;

    nlohmann::json to_json() const;
};

// Per-interval margins of the step-size conditions the construction needs;
// fails that shrink with the mesh come back with a refine suggestion.
AdmissibilityReport admissibility_check(const SkorohodProblem& problem, const TimeGrid& grid);

// The projection recursion: x constant until the first node, then per node
// candidate = x_{k-1} + w_k - w_{k-1}, kept when inside the slice closure,
// obliquely projected otherwise, lambda accruing the displacement.
SkorohodSolution solve(const SkorohodProblem& problem, const TimeGrid& grid);

struct RefineReport {
    std::vector<int> levels;                  // solved dyadic levels
    std::vector<double> consecutive_distances;  // coarse-grid sup distances
    bool cauchy = false;                      // decreasing after at most one exception
    double final_gap = 0.0;
    std::vector<int> skipped_levels;          // failed admissibility below n0

    nlohmann::json to_json() const;
};

struct RefineResult {
    std::vector<SkorohodSolution> solutions;
    RefineReport report;
};

// Solves on dyadic grids 2^n for n in [n_min, n_max] and tracks the grid-sup
// distance between consecutive solutions on the coarser grid.
RefineResult refine_solve(const SkorohodProblem& problem, int n_min, int n_max);

// Discrete Definition-level checks: membership of x at every node, additivity
// x = w + lambda, recorded push directions inside the cone, variation growth
// only at boundary nodes, record invariants, and the rho0 jump bound.
std::vector<std::string> validate_solution(const SkorohodProblem& problem,
                                           const SkorohodSolution& solution,
                                           double tol = 1e-9);

}  // namespace skorohod
