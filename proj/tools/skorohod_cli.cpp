// Scenario-driven command line for the Skorohod solver library: solve,
// refine, simulate, measure, and check tasks over JSON scenario files or
// catalogue names.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skorohod/errors.hpp"
#include "skorohod/scenario.hpp"

namespace {

struct CommonArgs {
    std::string scenario;
    std::string out = "out";
    double tol = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario, "scenario JSON file or catalogue name")
        ->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--tol", args.tol, "comparison tolerance override");
}

bool parse_levels(const std::string& text, int& lo, int& hi) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) return false;
    try {
        lo = std::stoi(text.substr(0, sep));
        hi = std::stoi(text.substr(sep + 2));
    } catch (...) {
        return false;
    }
    return lo <= hi;
}

int dispatch(const skorohod::Scenario& scenario, const std::string& out) {
    const auto result = skorohod::run(scenario, out);
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Skorohod reflection problems in time-dependent domains"};
    app.require_subcommand(1);

    CommonArgs solve_args, sde_args, measure_args, check_args, refine_args;
    std::string solve_levels, refine_levels;
    int solve_level = -1, sde_level = -1, check_level = -1;
    std::size_t sde_paths = 0;
    std::string sde_stat;

    auto* solve_cmd = app.add_subcommand("solve", "run the projection recursion");
    add_common(solve_cmd, solve_args);
    solve_cmd->add_option("--level", solve_level, "dyadic grid level 2^n");
    solve_cmd->add_option("--levels", solve_levels, "dyadic range n_min..n_max (refines)");

    auto* refine_cmd = app.add_subcommand("refine", "solve across a dyadic ladder");
    add_common(refine_cmd, refine_args);
    refine_cmd->add_option("--levels", refine_levels, "dyadic range n_min..n_max");

    auto* sde_cmd = app.add_subcommand("sde", "projected Euler Monte Carlo");
    add_common(sde_cmd, sde_args);
    sde_cmd->add_option("--level", sde_level, "dyadic grid level 2^n");
    sde_cmd->add_option("--paths", sde_paths, "number of independent paths");
    sde_cmd->add_option("--seed", sde_args.seed, "base seed")->trigger_on_parse();
    sde_cmd->add_option("--stat", sde_stat, "terminal statistic (one|norm|coordK)");

    auto* measure_cmd = app.add_subcommand("measure", "numeric geometry budget");
    add_common(measure_cmd, measure_args);

    auto* check_cmd = app.add_subcommand("check", "solve plus estimate report");
    add_common(check_cmd, check_args);
    check_cmd->add_option("--level", check_level, "dyadic grid level 2^n");

    auto* list_cmd = app.add_subcommand("list", "print the scenario catalogue");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& name : skorohod::scenario_catalogue())
                std::cout << name << "\n";
            return 0;
        }

        CommonArgs* args = nullptr;
        if (solve_cmd->parsed()) args = &solve_args;
        else if (refine_cmd->parsed()) args = &refine_args;
        else if (sde_cmd->parsed()) args = &sde_args;
        else if (measure_cmd->parsed()) args = &measure_args;
        else args = &check_args;

        skorohod::Scenario scenario = skorohod::load_scenario(args->scenario);
        if (args->tol > 0.0) scenario.tol = args->tol;

        if (solve_cmd->parsed()) {
            scenario.task = "solve";
            if (solve_level >= 0) scenario.level = solve_level;
            if (!solve_levels.empty()) {
                if (!parse_levels(solve_levels, scenario.n_min, scenario.n_max))
                    throw skorohod::ConfigError("--levels expects n_min..n_max");
                scenario.task = "refine";
            }
        } else if (refine_cmd->parsed()) {
            scenario.task = "refine";
            if (!refine_levels.empty() &&
                !parse_levels(refine_levels, scenario.n_min, scenario.n_max))
                throw skorohod::ConfigError("--levels expects n_min..n_max");
        } else if (sde_cmd->parsed()) {
            scenario.task = "sde";
            if (sde_level >= 0) scenario.level = sde_level;
            if (sde_paths > 0) scenario.paths = sde_paths;
            if (sde_cmd->count("--seed") > 0) scenario.seed = sde_args.seed;
            if (!sde_stat.empty()) scenario.stat = sde_stat;
        } else if (measure_cmd->parsed()) {
            scenario.task = "measure";
        } else if (check_cmd->parsed()) {
            scenario.task = "check";
            if (check_level >= 0) scenario.level = check_level;
        }

        return dispatch(scenario, args->out);
    } catch (const skorohod::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const skorohod::SolverError& err) {
        std::cerr << "solver error at step " << err.step << ": " << err.what() << "\n";
        return 4;
    } catch (const skorohod::GeometryError& err) {
        std::cerr << "geometry error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
