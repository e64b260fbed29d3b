#include "skorohod/projection.hpp"

#include <cmath>

#include "skorohod/errors.hpp"
#include "skorohod/sampling.hpp"

namespace skorohod {

namespace {

// First boundary crossing of psi(t, y + s*dir) for s > 0: bracket by marching,
// then bisect until the bracket is below 1e-12.
std::optional<double> ray_boundary_crossing(const TimeDependentDomain& domain, double t,
                                            const Vec& y, const Vec& dir, double march_step,
                                            double s_cap) {
    double prev_s = 0.0;
    for (double s = march_step; s <= s_cap + march_step; s += march_step) {
        if (domain.level_set(t, Vec(y + s * dir)) >= 0.0) {
            double lo = prev_s, hi = s;
            for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                (domain.level_set(t, Vec(y + mid * dir)) >= 0.0 ? hi : lo) = mid;
            }
            return hi;  // landing just inside the closure
        }
        prev_s = s;
    }
    return std::nullopt;
}

const Vec& best_aligned(const std::vector<Vec>& generators, const Vec& toward) {
    std::size_t best = 0;
    double best_dot = -2.0;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const double d = generators[i].dot(toward);
        if (d > best_dot) {
            best_dot = d;
            best = i;
        }
    }
    return generators[best];
}

}  // namespace

ProjectionResult oblique_project(const TimeDependentDomain& domain, const ConeField& cone,
                                 double t, const Vec& y, const ProjectionParams& params) {
    const double dist = domain.distance_to_slice(t, y);
    if (dist == 0.0 || domain.membership(t, y) != Membership::Exterior)
        return ProjectionResult{y, std::nullopt, 0.0, 0};

    if (params.enforce_budget && dist >= params.delta0)
        throw ProjectionError(ProjectionFailure::BudgetExceeded,
                              "point lies " + std::to_string(dist) +
                                  " from the slice, beyond the delta0 budget " +
                                  std::to_string(params.delta0));

    const double march = params.delta0 / 8.0;
    const double s_cap = std::max(8.0 * params.h0 * params.delta0, 16.0 * params.h0 * dist);

    Vec landing = domain.closest_boundary_point(t, y);
    int iterations = 0;
    for (; iterations < params.max_iterations; ++iterations) {
        const Vec toward = unit(Vec(landing - y));
        const auto gens = cone.generators(domain, t, landing);
        const Vec gamma = best_aligned(gens, toward);
        // the landing already sits on the boundary; when it also lies on the
        // gamma ray it is the fixed point, no root-find needed
        if ((gamma - toward).norm() <= 1e-13) {
            ++iterations;
            break;
        }
        const auto s = ray_boundary_crossing(domain, t, y, gamma, march, s_cap);
        if (!s)
            throw ProjectionError(ProjectionFailure::NoBoundaryHit,
                                  "projection ray missed the slice");
        Vec next = y + *s * gamma;
        const double moved = (next - landing).norm();
        landing = std::move(next);
        if (moved < params.point_tol * (1.0 + y.norm())) {
            ++iterations;
            break;
        }
    }
    if (iterations >= params.max_iterations)
        throw ProjectionError(ProjectionFailure::NoConvergence,
                              "projection fixed point did not settle within " +
                                  std::to_string(params.max_iterations) + " iterations");

    const double stretch = (landing - y).norm();
    if (params.enforce_stretch && stretch > params.h0 * dist * (1.0 + 1e-9) + 1e-12)
        throw ProjectionError(ProjectionFailure::GoodProjectionViolated,
                              "projection stretch " + std::to_string(stretch) +
                                  " exceeds h0 * d = " + std::to_string(params.h0 * dist));

    ProjectionResult out;
    out.point = landing;
    out.direction = unit(Vec(landing - y));
    out.stretch = stretch;
    out.iterations = iterations;
    return out;
}

GoodProjectionSurvey good_projection_survey(const TimeDependentDomain& domain,
                                            const ConeField& cone, double delta0, double h0,
                                            std::size_t target_samples) {
    GoodProjectionSurvey out;
    ProjectionParams params{delta0, h0};
    params.enforce_stretch = false;
    const int temporal = 8;
    const int per_slice =
        std::max(4, static_cast<int>(target_samples / (temporal * 5)) + 1);
    std::size_t halton_index = 0;
    for (double t : linspace(0.0, domain.horizon(), temporal)) {
        const auto boundary = domain.boundary_sample(t, per_slice);
        // low-dimensional slices may return few points; deepen the offset
        // ladder so the target sample count is still reached
        const int offsets = std::max<int>(
            5, static_cast<int>(target_samples / (temporal * boundary.size())) + 1);
        for (const Vec& z : boundary) {
            for (int j = 0; j < offsets; ++j) {
                if (out.checked >= target_samples) return out;
                const double alpha = 0.05 + 0.9 * halton(halton_index++, 2);
                const Vec n = domain.inward_normals(t, z).front();
                const Vec y = z - alpha * delta0 * n;
                const double dist = domain.distance_to_slice(t, y);
                if (dist <= 1e-12 || dist >= delta0) continue;
                const auto proj = oblique_project(domain, cone, t, y, params);
                ++out.checked;
                if (proj.stretch <= 0.0) continue;
                const double ratio = proj.stretch / dist;
                out.worst_ratio = std::max(out.worst_ratio, ratio);
                if (proj.stretch > h0 * dist * (1.0 + 1e-9) + 1e-12) ++out.violations;
            }
        }
    }
    return out;
}

GoodProjectionConstants good_projection_constants(double r0, double q, double q_norm) {
    if (!(r0 > 0.0) || !(q > 0.0) || !(q_norm > 0.0))
        throw GeometryError("good-projection constants need positive r0, q, |Q|");
    if (q > q_norm) throw GeometryError("good-projection constants need q <= |Q|");
    const double ratio = q / q_norm;
    const double radical = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    GoodProjectionConstants out;
    out.degenerate = radical == 0.0;
    out.delta0 = r0 * (1.0 - radical);
    out.h0 = out.degenerate ? 1.0 : ratio / (1.0 - radical);
    return out;
}

}  // namespace skorohod
