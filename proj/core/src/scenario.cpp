#include "skorohod/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "skorohod/errors.hpp"
#include "skorohod/interaction.hpp"

namespace skorohod {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(origin + ": byte " + std::to_string(err.byte) + ": " + err.what());
    }
}

Vec to_vec(const json& arr) {
    std::vector<double> v = arr.get<std::vector<double>>();
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Scenario parse_scenario(const json& spec) {
    if (!spec.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario sc;
    sc.schema = spec.value("schema", 1);
    if (sc.schema != 1) throw ConfigError("unsupported scenario schema version");
    sc.name = spec.value("name", "unnamed");
    sc.horizon = spec.value("horizon", 1.0);
    if (!(sc.horizon > 0.0)) throw ConfigError("scenario horizon must be positive");
    if (!spec.contains("domain")) throw ConfigError("scenario needs a domain");
    sc.domain = parse_domain(spec.at("domain"), sc.horizon);
    sc.cone = spec.contains("cone") ? parse_cone(spec.at("cone")) : ConeField::normal();
    sc.budget_spec = spec.value("budget", json{{"measure", true}});
    sc.driver_spec = spec.value("driver", json());
    sc.sde_spec = spec.value("sde", json());
    sc.task = spec.value("task", "solve");
    sc.level = spec.value("level", 12);
    sc.n_min = spec.value("n_min", 6);
    sc.n_max = spec.value("n_max", 12);
    sc.paths = spec.value("paths", std::size_t{10000});
    sc.seed = spec.value("seed", std::uint64_t{1});
    sc.stat = spec.value("stat", "coord0");
    sc.tol = spec.value("tol", 1e-9);
    if (spec.contains("resolution")) {
        const auto& r = spec.at("resolution");
        sc.resolution.temporal = r.value("temporal", sc.resolution.temporal);
        sc.resolution.inner_temporal = r.value("inner_temporal", sc.resolution.inner_temporal);
        sc.resolution.spatial = r.value("spatial", sc.resolution.spatial);
        sc.resolution.directions = r.value("directions", sc.resolution.directions);
        sc.resolution.refine_passes = r.value("refine_passes", sc.resolution.refine_passes);
    }
    return sc;
}

std::vector<std::string> scenario_catalogue() {
    return {"static-interval", "moving-floor",       "breathing-ball", "annulus-normal",
            "half-plane-oblique", "sde-interval",    "shrinking-interval"};
}

json builtin_scenario(const std::string& name) {
    if (name == "static-interval")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain", {{"family", "moving_box"}, {"lo", {0.0}}, {"hi", {1.0}}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"driver",
                     {{"kind", "analytic"},
                      {"components",
                       {{{"kind", "linear"}, {"intercept", 0.5}, {"slope", -1.0}}}}}},
                    {"task", "solve"},
                    {"level", 12}};
    if (name == "moving-floor")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain",
                     {{"family", "moving_box"},
                      {"lo", {{{"kind", "linear"}, {"intercept", 0.0}, {"slope", 1.0}}}},
                      {"hi", {10.0}}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"driver", {{"kind", "analytic"}, {"components", {0.5}}}},
                    {"task", "solve"},
                    {"level", 12}};
    if (name == "breathing-ball")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain",
                     {{"family", "moving_ball"},
                      {"center", {0.0, 0.0}},
                      {"radius",
                       {{"kind", "sinusoid"},
                        {"offset", 1.0},
                        {"amplitude", 0.2},
                        {"omega", 1.0},
                        {"phase", 0.0}}}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"driver",
                     {{"kind", "brownian"},
                      {"scale", 0.25},
                      {"start", {0.95, 0.0}},
                      {"level", 12}}},
                    {"task", "refine"},
                    {"n_min", 6},
                    {"n_max", 12},
                    {"seed", 22},
                    {"level", 12}};
    if (name == "annulus-normal")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain",
                     {{"family", "annulus"},
                      {"center", {0.0, 0.0}},
                      {"inner", 0.5},
                      {"outer", 1.5}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"driver",
                     {{"kind", "analytic"},
                      {"components",
                       {{{"kind", "linear"}, {"intercept", 1.0}, {"slope", -1.5}},
                        {{"kind", "linear"}, {"intercept", 0.0}, {"slope", 0.4}}}}}},
                    {"task", "solve"},
                    {"level", 10}};
    if (name == "half-plane-oblique")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain",
                     {{"family", "moving_ball"}, {"center", {0.0, 5.0}}, {"radius", 5.0}}},
                    {"cone", {{"kind", "single"}, {"theta", 0.5235987755982988}}},
                    {"budget", {{"measure", true}}},
                    {"driver",
                     {{"kind", "steps"},
                      {"times", {0.0, 0.25, 0.5, 0.75}},
                      {"values",
                       {{0.0, 0.1}, {0.02, -0.03}, {0.12, -0.05}, {0.22, 0.06}}}}},
                    {"task", "solve"},
                    {"level", 10}};
    if (name == "sde-interval")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain", {{"family", "moving_box"}, {"lo", {0.0}}, {"hi", {1.0}}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"sde",
                     {{"drift", {{"kind", "zero"}}},
                      {"sigma", {{"kind", "scaled_identity"}, {"value", 1.0}}},
                      {"z0", {0.5}},
                      {"brownian_dim", 1}}},
                    {"task", "sde"},
                    {"level", 10},
                    {"paths", 10000},
                    {"seed", 7},
                    {"stat", "coord0"}};
    if (name == "shrinking-interval")
        return json{{"schema", 1},
                    {"name", name},
                    {"horizon", 1.0},
                    {"domain",
                     {{"family", "moving_box"},
                      {"lo", {0.0}},
                      {"hi", {{{"kind", "linear"}, {"intercept", 1.0}, {"slope", -0.25}}}}}},
                    {"cone", {{"kind", "normal"}}},
                    {"budget", {{"measure", true}}},
                    {"sde",
                     {{"drift", {{"kind", "zero"}}},
                      {"sigma", {{"kind", "zero"}}},
                      {"z0", {0.9}},
                      {"brownian_dim", 1}}},
                    {"task", "sde"},
                    {"level", 10},
                    {"paths", 16},
                    {"seed", 3},
                    {"stat", "coord0"}};
    throw ConfigError("unknown builtin scenario '" + name + "'");
}

Scenario load_scenario(const std::string& name_or_path) {
    for (const auto& name : scenario_catalogue())
        if (name == name_or_path) return parse_scenario(builtin_scenario(name));
    std::ifstream in(name_or_path);
    if (!in)
        throw ConfigError("scenario '" + name_or_path +
                          "' is neither a catalogue name nor a readable file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(parse_json_text(text, name_or_path));
}

GeometryBudget resolve_budget(const Scenario& sc) {
    const json& spec = sc.budget_spec;
    const bool measure = spec.value("measure", true);
    GeometryBudget budget;
    if (measure) {
        budget = measure_budget(*sc.domain, sc.cone, sc.resolution);
    } else {
        budget.convex_slices = sc.domain->convex_slices();
        budget.l_table = ModulusTable::zero();
    }
    if (spec.contains("r0")) budget.r0 = spec.at("r0").get<double>();
    if (spec.contains("rho0")) budget.rho0 = spec.at("rho0").get<double>();
    if (spec.contains("eta0")) budget.eta0 = spec.at("eta0").get<double>();
    if (spec.contains("a")) budget.a = spec.at("a").get<double>();
    if (spec.contains("e")) budget.e = spec.at("e").get<double>();
    if (spec.contains("delta0")) budget.delta0 = spec.at("delta0").get<double>();
    if (spec.contains("h0")) budget.h0 = spec.at("h0").get<double>();
    if (spec.contains("convex_slices"))
        budget.convex_slices = spec.at("convex_slices").get<bool>();
    if (spec.contains("l_table")) budget.l_table = ModulusTable::from_json(spec.at("l_table"));
    budget.validate();
    return budget;
}

SampledCadlagPath build_driver(const Scenario& sc) {
    const json& spec = sc.driver_spec;
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigError("scenario needs a driver spec with a \"kind\"");
    const std::string kind = spec.at("kind").get<std::string>();

    if (kind == "analytic") {
        std::vector<TimeFnPtr> components;
        for (const auto& c : spec.at("components")) components.push_back(parse_time_fn(c));
        const int level = spec.value("level", std::max({sc.level, sc.n_max, 16}));
        const TimeGrid grid = TimeGrid::dyadic(sc.horizon, level);
        std::vector<Vec> values;
        values.reserve(grid.node_count());
        for (double t : grid.times()) {
            Vec v(static_cast<Eigen::Index>(components.size()));
            for (std::size_t j = 0; j < components.size(); ++j)
                v(static_cast<Eigen::Index>(j)) = (*components[j])(t);
            values.push_back(std::move(v));
        }
        return SampledCadlagPath(grid, std::move(values));
    }
    if (kind == "brownian") {
        const Vec start = to_vec(spec.at("start"));
        const double scale = spec.value("scale", 1.0);
        const int level = spec.value("level", std::max(sc.level, sc.n_max));
        const std::uint64_t seed = spec.value("seed", sc.seed);
        const TimeGrid grid = TimeGrid::dyadic(sc.horizon, level);
        const double sqrt_dt = std::sqrt(sc.horizon / static_cast<double>(grid.step_count()));
        const CounterRng rng(seed);
        std::vector<Vec> values{start};
        values.reserve(grid.node_count());
        for (std::size_t k = 0; k + 1 < grid.node_count(); ++k) {
            Vec v = values.back();
            for (Eigen::Index j = 0; j < v.size(); ++j)
                v(j) += scale * sqrt_dt *
                        rng.normal(0, k, static_cast<std::uint32_t>(j));
            values.push_back(std::move(v));
        }
        return SampledCadlagPath(grid, std::move(values));
    }
    if (kind == "steps") {
        std::vector<double> times = spec.at("times").get<std::vector<double>>();
        std::vector<Vec> values;
        for (const auto& v : spec.at("values")) values.push_back(to_vec(v));
        if (times.size() != values.size())
            throw ConfigError("steps driver needs matching times/values");
        if (times.empty() || times.front() != 0.0)
            throw ConfigError("steps driver must start at t = 0");
        if (times.back() < sc.horizon) {
            times.push_back(sc.horizon);
            values.push_back(values.back());
        }
        return SampledCadlagPath(TimeGrid(std::move(times)), std::move(values));
    }
    if (kind == "csv") {
        std::ifstream in(spec.at("path").get<std::string>());
        if (!in) throw ConfigError("driver CSV file not readable");
        return read_csv(in);
    }
    throw ConfigError("unknown driver kind '" + kind + "'");
}

SkorohodProblem build_problem(const Scenario& sc) {
    return SkorohodProblem{sc.domain, sc.cone, build_driver(sc), resolve_budget(sc)};
}

SdeCoefficients build_sde_coefficients(const Scenario& sc) {
    const json& spec = sc.sde_spec;
    if (!spec.is_object()) throw ConfigError("scenario needs an sde spec for this task");
    const int d = sc.domain->dimension();
    const int m = spec.value("brownian_dim", d);
    SdeCoefficients coeffs;
    coeffs.brownian_dim = m;

    const json drift = spec.value("drift", json{{"kind", "zero"}});
    const std::string drift_kind = drift.value("kind", "zero");
    if (drift_kind == "zero") {
        coeffs.drift = [d](double, const Vec&) { return Vec::Zero(d); };
        coeffs.drift_bound = 0.0;
    } else if (drift_kind == "constant") {
        const Vec b = to_vec(drift.at("value"));
        if (b.size() != d) throw ConfigError("drift vector has the wrong dimension");
        coeffs.drift = [b](double, const Vec&) { return b; };
        coeffs.drift_bound = b.norm();
    } else {
        throw ConfigError("unknown drift kind '" + drift_kind + "'");
    }

    const json sigma = spec.value("sigma", json{{"kind", "zero"}});
    const std::string sigma_kind = sigma.value("kind", "zero");
    if (sigma_kind == "zero") {
        coeffs.sigma = [d, m](double, const Vec&) { return Mat::Zero(d, m); };
        coeffs.sigma_bound = 0.0;
    } else if (sigma_kind == "scaled_identity") {
        const double s = sigma.at("value").get<double>();
        if (d != m)
            throw ConfigError("scaled_identity sigma needs matching state/noise dimensions");
        coeffs.sigma = [d, s](double, const Vec&) { return Mat(s * Mat::Identity(d, d)); };
        coeffs.sigma_bound = std::abs(s);
    } else if (sigma_kind == "constant") {
        std::vector<std::vector<double>> rows =
            sigma.at("value").get<std::vector<std::vector<double>>>();
        Mat S(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        if (S.rows() != d || S.cols() != m)
            throw ConfigError("sigma matrix has the wrong shape");
        coeffs.sigma = [S](double, const Vec&) { return S; };
        coeffs.sigma_bound = S.jacobiSvd().singularValues()(0);
    } else {
        throw ConfigError("unknown sigma kind '" + sigma_kind + "'");
    }
    return coeffs;
}

Vec sde_initial_state(const Scenario& sc) {
    if (!sc.sde_spec.is_object() || !sc.sde_spec.contains("z0"))
        throw ConfigError("sde spec needs an initial state z0");
    return to_vec(sc.sde_spec.at("z0"));
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void write_path_csv(const fs::path& path, const SampledCadlagPath& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    write_csv(out, p);
}

json solve_reports(const SkorohodProblem& problem, const SkorohodSolution& solution,
                   double tol) {
    const auto violations = validate_solution(problem, solution, tol);
    const auto epochs = epoch_decomposition(problem, solution);
    const auto apriori = check_apriori(problem, solution);
    const auto jumps = jump_bound_check(problem, solution, tol);

    json epoch_json = json::array();
    for (const auto& [hit, escape] : epochs.hits)
        epoch_json.push_back({{"hit", hit}, {"escape", escape}});

    return {{"violations", violations},
            {"epochs", epoch_json},
            {"apriori", apriori.to_json()},
            {"jump_bound", jumps.to_json()},
            {"solver", solution.diagnostics.to_json()}};
}

}  // namespace

RunResult run(const Scenario& sc, const std::string& out_dir) {
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    fs::create_directories(dir);

    RunResult result;
    result.report["schema"] = 1;
    result.report["name"] = sc.name;
    result.report["task"] = sc.task;
    result.report["tol"] = sc.tol;
    result.report["resolution"] = {{"temporal", sc.resolution.temporal},
                                   {"inner_temporal", sc.resolution.inner_temporal},
                                   {"spatial", sc.resolution.spatial},
                                   {"directions", sc.resolution.directions},
                                   {"refine_passes", sc.resolution.refine_passes}};

    if (sc.task == "measure") {
        const GeometryBudget budget = resolve_budget(sc);
        result.report["budget"] = budget.to_json();
        write_text_file(dir / "report.json", result.report.dump(2) + "\n");
        return result;
    }

    if (sc.task == "solve" || sc.task == "check") {
        const SkorohodProblem problem = build_problem(sc);
        const TimeGrid grid = TimeGrid::dyadic(sc.horizon, sc.level);
        const auto admissibility = admissibility_check(problem, grid);
        result.report["admissibility"] = admissibility.to_json();
        if (!admissibility.pass)
            throw SolverError(0, "admissibility failed: " + admissibility.suggestion);
        const SkorohodSolution solution = solve(problem, grid);
        result.report["budget"] = problem.budget.to_json();
        result.report.update(solve_reports(problem, solution, sc.tol));

        write_path_csv(dir / "x.csv", solution.x);
        write_path_csv(dir / "lambda.csv",
                       SampledCadlagPath(solution.reflection.grid, solution.reflection.lambda));
        write_text_file(dir / "diagnostics.json", result.report.dump(2) + "\n");
        if (sc.task == "check")
            write_text_file(dir / "report.json",
                            result.report.at("apriori").dump(2) + "\n");

        const bool ok = result.report.at("violations").empty() &&
                        result.report.at("apriori").at("ratios").at("all_pass").get<bool>() &&
                        result.report.at("jump_bound").at("all_pass").get<bool>();
        result.exit_code = ok ? 0 : 1;
        return result;
    }

    if (sc.task == "refine") {
        const SkorohodProblem problem = build_problem(sc);
        const RefineResult refined = refine_solve(problem, sc.n_min, sc.n_max);
        const SkorohodSolution& finest = refined.solutions.back();
        result.report["budget"] = problem.budget.to_json();
        result.report["refine"] = refined.report.to_json();
        result.report.update(solve_reports(problem, finest, sc.tol));

        // empirical ratio stability across the top two levels
        if (refined.solutions.size() >= 2) {
            const auto top = check_apriori(problem, finest);
            const auto prev =
                check_apriori(problem, refined.solutions[refined.solutions.size() - 2]);
            auto rel_gap = [](double x, double y) {
                const double scale = std::max({std::abs(x), std::abs(y), 1e-12});
                return std::abs(x - y) / scale;
            };
            result.report["refine"]["ratio_stability"] = {
                {"oscillation", {prev.ratio_oscillation, top.ratio_oscillation}},
                {"variation", {prev.ratio_variation, top.ratio_variation}},
                {"stable",
                 rel_gap(prev.ratio_oscillation, top.ratio_oscillation) < 0.2 &&
                     rel_gap(prev.ratio_variation, top.ratio_variation) < 0.2}};
        }

        write_path_csv(dir / "x.csv", finest.x);
        write_path_csv(dir / "lambda.csv",
                       SampledCadlagPath(finest.reflection.grid, finest.reflection.lambda));
        write_text_file(dir / "diagnostics.json", result.report.dump(2) + "\n");
        const bool ok = result.report.at("violations").empty() &&
                        refined.report.cauchy;
        result.exit_code = ok ? 0 : 1;
        return result;
    }

    if (sc.task == "sde") {
        const GeometryBudget budget = resolve_budget(sc);
        const SdeCoefficients coeffs = build_sde_coefficients(sc);
        const Vec z0 = sde_initial_state(sc);
        const TerminalStat stat = make_terminal_stat(sc.stat);
        const auto mc = monte_carlo(coeffs, *sc.domain, sc.cone, budget, z0, sc.horizon,
                                    sc.level, sc.paths, sc.seed, stat);
        result.report["budget"] = budget.to_json();
        result.report["stats"] = {{"stat", stat.name},
                                  {"mean", mc.mean},
                                  {"std_error", mc.std_error},
                                  {"paths", mc.paths},
                                  {"level", mc.level},
                                  {"seed", sc.seed}};
        write_text_file(dir / "stats.json", result.report.dump(2) + "\n");
        const int emit = sc.sde_spec.value("emit_paths", 0);
        for (int p = 0; p < emit; ++p) {
            const auto path = euler_reflected(coeffs, *sc.domain, sc.cone, budget, z0,
                                              sc.horizon, sc.level, sc.seed,
                                              static_cast<std::uint64_t>(p));
            write_path_csv(dir / ("path_" + std::to_string(p) + ".csv"), path.x);
        }
        return result;
    }

    throw ConfigError("unknown task '" + sc.task + "'");
}

}  // namespace skorohod
