#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "skorohod/errors.hpp"
#include "skorohod/path.hpp"
#include "skorohod/sampling.hpp"
#include "skorohod/solver.hpp"

using namespace skorohod;

namespace {

Vec v1(double x) {
    Vec v(1);
    v << x;
    return v;
}

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

SampledCadlagPath path1(std::vector<double> times, std::vector<double> values) {
    std::vector<Vec> vs;
    for (double x : values) vs.push_back(v1(x));
    return SampledCadlagPath(TimeGrid(std::move(times)), std::move(vs));
}

// dense-grid oscillation of a callable, the independent oracle for the
// grid-based functional
double dense_oscillation(const std::function<double(double)>& f, double t1, double t2,
                         int samples = 4096) {
    double lo = f(t1), hi = lo;
    for (int k = 0; k <= samples; ++k) {
        const double t = t1 + (t2 - t1) * k / samples;
        lo = std::min(lo, f(t));
        hi = std::max(hi, f(t));
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("time grid basics") {
    const TimeGrid g = TimeGrid::dyadic(1.0, 2);
    CHECK(g.node_count() == 5);
    CHECK(g.mesh() == doctest::Approx(0.25));
    CHECK(g.floor_index(0.3) == 1);
    CHECK(g.floor_index(0.25) == 1);
    CHECK(g.floor_index(1.0) == 4);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS(TimeGrid({0.1, 0.5}), ConfigError);
}

TEST_CASE("oscillation on windows") {
    SUBCASE("constant path is flat") {
        const auto p = path1({0.0, 1.0, 2.0}, {0.7, 0.7, 0.7});
        CHECK(oscillation(p, 0.0, 2.0) == 0.0);
        CHECK(oscillation(p, 0.3, 1.7) == 0.0);
    }
    SUBCASE("1-D spot value") {
        const auto p = path1({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5});
        CHECK(oscillation(p, 0.0, 2.0) == doctest::Approx(1.0));
    }
    SUBCASE("2-D single jump") {
        const SampledCadlagPath p(TimeGrid({0.0, 1.0}), {v2(0, 0), v2(3, 4)});
        CHECK(oscillation(p, 0.0, 1.0) == doctest::Approx(5.0));
    }
    SUBCASE("window outside the horizon") {
        const auto p = path1({0.0, 1.0}, {0.0, 1.0});
        CHECK_THROWS_AS(oscillation(p, 0.0, 2.0), std::domain_error);
    }
    SUBCASE("monotone in the window") {
        const auto p = path1({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.4, -0.3, 0.9, 0.1});
        for (int i = 0; i < 24; ++i) {
            const double a = halton(i, 2), b = halton(i, 3);
            const double t1 = std::min(a, b), t2 = std::max(a, b);
            CHECK(oscillation(p, t1, t2) <= oscillation(p, 0.0, 1.0) + 1e-15);
            const double mid = 0.5 * (t1 + t2);
            CHECK(oscillation(p, t1, t2) >=
                  std::max(oscillation(p, t1, mid), oscillation(p, mid, t2)) - 1e-15);
        }
    }
}

TEST_CASE("max jump") {
    CHECK(max_jump(path1({0.0, 1.0, 2.0}, {0.3, 0.3, 0.3})) == 0.0);
    CHECK(max_jump(path1({0.0, 1.0, 2.0}, {0.0, 0.2, 0.1})) == doctest::Approx(0.2));

    // discretized continuous driver: jumps bounded by the mesh oscillation
    auto f = [](double t) { return std::sin(3.0 * t) + 0.5 * t; };
    const TimeGrid fine = TimeGrid::dyadic(1.0, 12);
    std::vector<Vec> values;
    for (double t : fine.times()) values.push_back(v1(f(t)));
    const SampledCadlagPath w(fine, std::move(values));
    const TimeGrid coarse = TimeGrid::dyadic(1.0, 5);
    const auto w_coarse = discretize_driver(w, coarse);
    double worst_window = 0.0;
    for (std::size_t k = 0; k + 1 < coarse.node_count(); ++k)
        worst_window = std::max(
            worst_window, dense_oscillation(f, coarse.times()[k], coarse.times()[k + 1]));
    CHECK(max_jump(w_coarse) <= worst_window + 1e-12);
}

TEST_CASE("restrict") {
    const auto p = path1({0.0, 0.5, 1.0, 1.5, 2.0}, {0.0, 1.0, -1.0, 0.25, 0.8});
    SUBCASE("identity window") {
        CHECK(restrict(p, 0.0, 2.0) == p);
    }
    SUBCASE("constant stays constant") {
        const auto c = path1({0.0, 1.0, 2.0}, {0.4, 0.4, 0.4});
        const auto r = restrict(c, 0.3, 1.7);
        for (const Vec& v : r.values()) CHECK(v(0) == 0.4);
    }
    SUBCASE("restrict then oscillate equals windowed oscillation") {
        for (int i = 0; i < 16; ++i) {
            const double a = 2.0 * halton(i, 2), b = 2.0 * halton(i, 3);
            double t1 = std::min(a, b), t2 = std::max(a, b);
            if (t2 - t1 < 1e-3) continue;
            const auto r = restrict(p, t1, t2);
            CHECK(oscillation(r, 0.0, t2 - t1) ==
                  doctest::Approx(oscillation(p, t1, t2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("reflection record invariants") {
    const TimeGrid g({0.0, 0.5, 1.0});
    ReflectionRecord rec{g, {v1(0), v1(0), v1(-0.5)}, {0.0, 0.0, 0.5},
                         {std::nullopt, v1(-1.0)}};
    CHECK(rec.structural_violations().empty());

    SUBCASE("decreasing variation flagged") {
        rec.total_variation = {0.0, 0.5, 0.2};
        CHECK(!rec.structural_violations().empty());
    }
    SUBCASE("gamma without push flagged") {
        rec.gammas[0] = v1(1.0);
        CHECK(!rec.structural_violations().empty());
    }
    SUBCASE("increment off the gamma ray flagged") {
        rec.gammas[1] = v1(1.0);  // push actually went along -1
        CHECK(!rec.structural_violations().empty());
    }
}

TEST_CASE("csv round trip is bit exact") {
    std::vector<Vec> values{v2(0.1, -0.7), v2(1.0 / 3.0, 2.5e-17), v2(1234.5678, -1e300)};
    const SampledCadlagPath p(TimeGrid({0.0, 0.1 + 1e-13, 2.0 / 3.0}), values);
    std::stringstream ss;
    write_csv(ss, p);
    const auto q = read_csv(ss);
    REQUIRE(q.grid().node_count() == p.grid().node_count());
    CHECK(p == q);
}
