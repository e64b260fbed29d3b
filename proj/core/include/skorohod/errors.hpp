#pragma once

#include <stdexcept>
#include <string>

namespace skorohod {

// Bad scenario files, malformed JSON, out-of-range options. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate or inconsistent geometry: empty slices, vanished gradients,
// budget constants out of range. CLI exit code 3.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

enum class ProjectionFailure {
    NoConvergence,      // fixed-point iteration hit the cap
    NoBoundaryHit,      // ray never crossed the boundary
    GoodProjectionViolated,  // |y - y*| > h0 * d(y, D_t)
    BudgetExceeded,     // d(y, D_t) >= delta0
};

class ProjectionError : public GeometryError {
public:
    ProjectionError(ProjectionFailure kind, const std::string& what)
        : GeometryError(what), kind(kind) {}
    ProjectionFailure kind;
};

// Solver-level failures carry the offending step. CLI exit code 4.
class SolverError : public std::runtime_error {
public:
    SolverError(std::size_t step, const std::string& what)
        : std::runtime_error(what), step(step) {}
    std::size_t step;
};

}  // namespace skorohod
