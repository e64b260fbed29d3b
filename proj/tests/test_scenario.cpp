#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "skorohod/errors.hpp"
#include "skorohod/scenario.hpp"

using namespace skorohod;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("skorohod_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("catalogue") {
    const auto names = scenario_catalogue();
    CHECK(names.size() == 7);
    for (const auto& name : names) {
        const Scenario sc = load_scenario(name);
        CHECK(sc.name == name);
        CHECK(sc.domain != nullptr);
    }
    CHECK_THROWS_AS(builtin_scenario("nope"), ConfigError);
}

TEST_CASE("json expressions") {
    using nlohmann::json;
    CHECK((*parse_time_fn(json(2.5)))(0.7) == 2.5);
    const auto lin = parse_time_fn(json{{"kind", "linear"}, {"intercept", 1.0}, {"slope", 2.0}});
    CHECK((*lin)(0.25) == doctest::Approx(1.5));
    const auto table = parse_time_fn(
        json{{"kind", "table"}, {"times", {0.0, 1.0}}, {"values", {0.0, 2.0}}});
    CHECK((*table)(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_time_fn(json{{"kind", "mystery"}}), ConfigError);
}

TEST_CASE("malformed scenario json reports the byte offset") {
    const fs::path dir = temp_dir("badjson");
    const fs::path bad = dir / "bad.json";
    {
        std::ofstream out(bad);
        out << "{\"schema\": 1, \"horizon\": }";
    }
    try {
        load_scenario(bad.string());
        FAIL("expected a config error");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("solve task writes the artifact set") {
    Scenario sc = load_scenario("static-interval");
    sc.level = 8;
    const fs::path dir = temp_dir("solve");
    const auto result = run(sc, dir.string());
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(dir / "x.csv"));
    CHECK(fs::exists(dir / "lambda.csv"));
    CHECK(fs::exists(dir / "diagnostics.json"));

    // grep-level sanity: the state CSV ends at the floor
    std::ifstream in(dir / "x.csv");
    const auto x = read_csv(in);
    CHECK(x.values().back()(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("identical scenario and seed give byte-identical outputs") {
    Scenario sc = load_scenario("breathing-ball");
    sc.task = "solve";
    sc.level = 7;
    const fs::path dir_a = temp_dir("repeat_a");
    const fs::path dir_b = temp_dir("repeat_b");
    const auto ra = run(sc, dir_a.string());
    const auto rb = run(sc, dir_b.string());
    CHECK(ra.exit_code == rb.exit_code);
    CHECK(slurp(dir_a / "x.csv") == slurp(dir_b / "x.csv"));
    CHECK(slurp(dir_a / "lambda.csv") == slurp(dir_b / "lambda.csv"));
}

TEST_CASE("measure task emits a budget") {
    Scenario sc = load_scenario("sde-interval");
    sc.task = "measure";
    const fs::path dir = temp_dir("measure");
    const auto result = run(sc, dir.string());
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    const auto& budget = report.at("budget");
    CHECK(budget.at("a").get<double>() > 0.9);
    CHECK(budget.at("e").get<double>() < 0.05);
    CHECK(budget.at("h0").get<double>() > 1.0);
    CHECK(budget.contains("l_table"));
}

TEST_CASE("sde task emits stats") {
    Scenario sc = load_scenario("shrinking-interval");
    sc.paths = 8;
    sc.level = 8;
    sc.sde_spec["emit_paths"] = 2;
    const fs::path dir = temp_dir("sde");
    const auto result = run(sc, dir.string());
    CHECK(result.exit_code == 0);
    const auto stats = nlohmann::json::parse(slurp(dir / "stats.json"));
    // the sweeping ceiling is deterministic: X_T = 1 - 0.25 T = 0.75
    CHECK(stats.at("stats").at("mean").get<double>() == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(stats.at("stats").at("std_error").get<double>() == doctest::Approx(0.0));
    CHECK(fs::exists(dir / "path_0.csv"));
    CHECK(fs::exists(dir / "path_1.csv"));
}

TEST_CASE("check task emits the estimate report") {
    Scenario sc = load_scenario("static-interval");
    sc.task = "check";
    sc.level = 8;
    const fs::path dir = temp_dir("check");
    const auto result = run(sc, dir.string());
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report.contains("windows"));
    CHECK(report.contains("constants"));
    CHECK(report.contains("ratios"));
    CHECK(report.at("ratios").at("all_pass").get<bool>());
}

TEST_CASE("budget overrides merge over measurement") {
    Scenario sc = load_scenario("static-interval");
    sc.budget_spec = nlohmann::json{{"measure", false}, {"r0", 5.0},   {"rho0", 0.4},
                                    {"eta0", 0.5},      {"a", 1.0},    {"e", 0.0},
                                    {"delta0", 0.3},    {"h0", 1.1},   {"convex_slices", true}};
    const auto budget = resolve_budget(sc);
    CHECK(budget.r0 == 5.0);
    CHECK(budget.delta0 == 0.3);
    CHECK(budget.convex_slices);
}
