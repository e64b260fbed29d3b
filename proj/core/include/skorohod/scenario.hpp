#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "skorohod/analysis.hpp"
#include "skorohod/geometry.hpp"
#include "skorohod/sde.hpp"
#include "skorohod/solver.hpp"

namespace skorohod {

// One runnable configuration: geometry, reflection field, budget policy,
// driver, task, and knobs. All randomness flows from the single seed.
struct Scenario {
    int schema = 1;
    std::string name;
    double horizon = 1.0;
    DomainPtr domain;
    ConeField cone;
    nlohmann::json budget_spec;  // {"measure": true} and/or explicit overrides
    nlohmann::json driver_spec;
    nlohmann::json sde_spec;
    std::string task = "solve";  // solve | refine | sde | measure | check
    int level = 12;
    int n_min = 6, n_max = 12;
    std::size_t paths = 10000;
    std::uint64_t seed = 1;
    std::string stat = "coord0";
    double tol = 1e-9;
    Resolution resolution;
};

Scenario parse_scenario(const nlohmann::json& spec);

// Accepts a catalogue name or a path to a JSON file.
Scenario load_scenario(const std::string& name_or_path);

std::vector<std::string> scenario_catalogue();
nlohmann::json builtin_scenario(const std::string& name);

// Measured or overridden constants, validated.
GeometryBudget resolve_budget(const Scenario& scenario);

// Reference-resolution driver path (analytic drivers are sampled on a grid at
// least as fine as max(level, n_max, 16)).
SampledCadlagPath build_driver(const Scenario& scenario);

SkorohodProblem build_problem(const Scenario& scenario);

SdeCoefficients build_sde_coefficients(const Scenario& scenario);
Vec sde_initial_state(const Scenario& scenario);

struct RunResult {
    int exit_code = 0;
    nlohmann::json report;
};

// Executes the scenario task and writes x.csv / lambda.csv / diagnostics.json
// / stats.json / report.json under out_dir as the task requires. Exit 0 iff
// no invariant violations.
RunResult run(const Scenario& scenario, const std::string& out_dir);

}  // namespace skorohod
