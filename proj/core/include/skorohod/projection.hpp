#pragma once

#include <optional>

#include "skorohod/cone.hpp"
#include "skorohod/domain.hpp"
#include "skorohod/types.hpp"

namespace skorohod {

struct ProjectionResult {
    Vec point;                     // on the boundary of D_t (or y itself)
    std::optional<Vec> direction;  // unit generator; absent when stretch = 0
    double stretch = 0.0;          // point = y + stretch * direction
    int iterations = 0;
};

struct ProjectionParams {
    double delta0;             // caller's budget: d(y, D_t) must stay below it
    double h0;                 // |y - point| <= h0 * d(y, D_t) enforced post-hoc
    double point_tol = 1e-11;  // fixed-point stop
    int max_iterations = 200;
    bool enforce_budget = true;
    bool enforce_stretch = true;
};

// Projects y onto the boundary of D_t along the cone field: from the normal
// (closest-point) seed, repeatedly shoot a ray from y along the generator
// evaluated at the current landing point and root-find psi along it, until the
// landing point settles. Points already in the closure return unchanged with
// stretch 0.
ProjectionResult oblique_project(const TimeDependentDomain& domain, const ConeField& cone,
                                 double t, const Vec& y, const ProjectionParams& params);

struct GoodProjectionConstants {
    double delta0;
    double h0;
    bool degenerate;  // q = |Q|: radical vanishes, h0 = 1 not admissible
};

// delta0 = r0 (1 - sqrt(1 - (q/|Q|)^2)), h0 = (q/|Q|) / (1 - sqrt(1 - (q/|Q|)^2))
GoodProjectionConstants good_projection_constants(double r0, double q, double q_norm);

struct GoodProjectionSurvey {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  // max |y - point| / d(y, D_t)
};

// Pushes boundary samples outward into the delta0 band and verifies the
// stretch bound |y - pi(y)| <= h0 d(y, D_t) on every projected point.
GoodProjectionSurvey good_projection_survey(const TimeDependentDomain& domain,
                                            const ConeField& cone, double delta0, double h0,
                                            std::size_t target_samples);

}  // namespace skorohod
