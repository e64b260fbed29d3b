#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "skorohod/time_grid.hpp"
#include "skorohod/types.hpp"

namespace skorohod {

// Right-continuous step path on a grid: constant on [t_k, t_{k+1}) with value
// values[k], and values[N] at T. Jumps live exactly at grid nodes; the left
// limit at a node is the previous node's value.
class SampledCadlagPath {
public:
    SampledCadlagPath(TimeGrid grid, std::vector<Vec> values);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<Vec>& values() const { return values_; }
    int dimension() const { return static_cast<int>(values_.front().size()); }
    double horizon() const { return grid_.horizon(); }

    const Vec& at(double t) const { return values_[grid_.floor_index(t)]; }
    const Vec& left_limit(double t) const;

    bool operator==(const SampledCadlagPath& other) const;

private:
    TimeGrid grid_;
    std::vector<Vec> values_;
};

// sup_{t1 <= r <= s <= t2} |w_s - w_r| over the values the step path attains
// on the window: the value governing t1 plus every node value in (t1, t2].
double oscillation(const SampledCadlagPath& path, double t1, double t2);

// Largest single-step increment; membership test for jump-bounded classes.
double max_jump(const SampledCadlagPath& path);

// Sub-path on [t1, t2], the left endpoint value taken cadlag-consistently.
// Times are shifted so the restricted grid starts at 0.
SampledCadlagPath restrict(const SampledCadlagPath& path, double t1, double t2);

// Pushing history of a solve: lambda_t, its running total variation |lambda|_t,
// and the unit push direction at each step where pushing occurred.
struct ReflectionRecord {
    TimeGrid grid;
    std::vector<Vec> lambda;            // one per node
    std::vector<double> total_variation;  // one per node, nondecreasing
    std::vector<std::optional<Vec>> gammas;  // one per step

    // Structural invariants (nondecreasing |lambda|, single direction per
    // step, gamma present iff the step pushed); violations as messages.
    std::vector<std::string> structural_violations(double tol = 1e-9) const;
};

// CSV with header t,v1,...,vd; one row per node; shortest round-trip decimal
// formatting so finite doubles survive a write/read cycle bit-exactly.
void write_csv(std::ostream& out, const SampledCadlagPath& path);
SampledCadlagPath read_csv(std::istream& in);

std::string format_double(double x);

}  // namespace skorohod
