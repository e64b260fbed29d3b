#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "skorohod/expr.hpp"
#include "skorohod/types.hpp"

namespace skorohod {

enum class Membership { Interior, Boundary, Exterior };

struct SliceBounds {
    Vec lo, hi;
    Vec center() const { return 0.5 * (lo + hi); }
    double radius() const { return 0.5 * (hi - lo).norm(); }
};

// A moving/deforming spatial domain: the time slice D_t is queried through a
// level set psi(t, z), positive inside, zero on the boundary, negative
// outside. Builtin families override the generic numeric queries with closed
// forms.
class TimeDependentDomain {
public:
    virtual ~TimeDependentDomain() = default;

    virtual int dimension() const = 0;
    virtual double horizon() const = 0;

    virtual double level_set(double t, const Vec& z) const = 0;
    virtual Vec level_set_gradient(double t, const Vec& z) const;

    // Declared positive floor for |grad psi| in the band around the boundary.
    virtual double gradient_floor() const { return 1e-8; }

    // A point is "on the boundary" when |psi| <= eps_psi * |grad psi|.
    Membership membership(double t, const Vec& z, double eps_psi = 1e-8) const;

    // d(z, closure of D_t); 0 inside.
    virtual double distance_to_slice(double t, const Vec& z) const;
    // d(z, boundary of D_t)
    virtual double distance_to_boundary(double t, const Vec& z) const;
    // normal (closest-point) projection of z onto the boundary of D_t
    virtual Vec closest_boundary_point(double t, const Vec& z) const;

    // Unit generators of the inward normal cone N_t(z) at a boundary point.
    virtual std::vector<Vec> inward_normals(double t, const Vec& z) const;

    virtual SliceBounds slice_bounds(double t) const = 0;

    virtual std::vector<Vec> boundary_sample(double t, int count) const;
    // boundary points plus an interior lattice
    std::vector<Vec> closure_sample(double t, int count) const;

    // Closed-form sup_{z in D_s closure} d(z, D_t) when the family has one.
    virtual std::optional<double> slice_deficiency(double /*s*/, double /*t*/) const {
        return std::nullopt;
    }

    virtual bool convex_slices() const { return false; }
    virtual bool time_independent() const { return false; }

    virtual nlohmann::json to_json() const = 0;

    // Throws GeometryError when a sampled slice is empty or degenerate.
    void validate_slices(int temporal_samples = 17) const;
};

using DomainPtr = std::shared_ptr<const TimeDependentDomain>;

// ball of radius R(t) around center c(t)
class MovingBall final : public TimeDependentDomain {
public:
    MovingBall(std::vector<TimeFnPtr> center, TimeFnPtr radius, double horizon);

    int dimension() const override { return static_cast<int>(center_.size()); }
    double horizon() const override { return horizon_; }
    double level_set(double t, const Vec& z) const override;
    Vec level_set_gradient(double t, const Vec& z) const override;
    double distance_to_slice(double t, const Vec& z) const override;
    double distance_to_boundary(double t, const Vec& z) const override;
    Vec closest_boundary_point(double t, const Vec& z) const override;
    std::vector<Vec> inward_normals(double t, const Vec& z) const override;
    SliceBounds slice_bounds(double t) const override;
    std::vector<Vec> boundary_sample(double t, int count) const override;
    std::optional<double> slice_deficiency(double s, double t) const override;
    bool convex_slices() const override { return true; }
    bool time_independent() const override;
    nlohmann::json to_json() const override;

    Vec center(double t) const;
    double radius(double t) const { return (*radius_)(t); }

private:
    std::vector<TimeFnPtr> center_;
    TimeFnPtr radius_;
    double horizon_;
};

// product of per-axis intervals [g_i(t), h_i(t)]
class MovingBox final : public TimeDependentDomain {
public:
    MovingBox(std::vector<TimeFnPtr> lo, std::vector<TimeFnPtr> hi, double horizon);

    int dimension() const override { return static_cast<int>(lo_.size()); }
    double horizon() const override { return horizon_; }
    double level_set(double t, const Vec& z) const override;
    Vec level_set_gradient(double t, const Vec& z) const override;
    double distance_to_slice(double t, const Vec& z) const override;
    double distance_to_boundary(double t, const Vec& z) const override;
    Vec closest_boundary_point(double t, const Vec& z) const override;
    std::vector<Vec> inward_normals(double t, const Vec& z) const override;
    SliceBounds slice_bounds(double t) const override;
    std::vector<Vec> boundary_sample(double t, int count) const override;
    std::optional<double> slice_deficiency(double s, double t) const override;
    bool convex_slices() const override { return true; }
    bool time_independent() const override;
    nlohmann::json to_json() const override;

    Vec lo(double t) const;
    Vec hi(double t) const;

private:
    std::vector<TimeFnPtr> lo_, hi_;
    double horizon_;
};

// intersection of half-spaces <n_i, z> <= b_i(t); face normals are unit
class MovingConvexPolytope final : public TimeDependentDomain {
public:
    MovingConvexPolytope(std::vector<Vec> face_normals, std::vector<TimeFnPtr> offsets,
                         double horizon);

    int dimension() const override { return static_cast<int>(face_normals_.front().size()); }
    double horizon() const override { return horizon_; }
    double level_set(double t, const Vec& z) const override;
    Vec level_set_gradient(double t, const Vec& z) const override;
    double distance_to_slice(double t, const Vec& z) const override;
    Vec closest_boundary_point(double t, const Vec& z) const override;
    std::vector<Vec> inward_normals(double t, const Vec& z) const override;
    SliceBounds slice_bounds(double t) const override;
    std::vector<Vec> boundary_sample(double t, int count) const override;
    bool convex_slices() const override { return true; }
    bool time_independent() const override;
    nlohmann::json to_json() const override;

    std::size_t face_count() const { return face_normals_.size(); }
    std::vector<int> active_faces(double t, const Vec& z, double tol = 1e-8) const;
    Vec project_to_closure(double t, const Vec& z) const;  // Dykstra over half-spaces

private:
    std::vector<Vec> face_normals_;
    std::vector<TimeFnPtr> offsets_;
    double horizon_;
};

// R_in(t) < |z - c(t)| < R_out(t): the nonconvex catalogue shape, built on the
// level-set representation with closed-form distances
class AnnulusDomain final : public TimeDependentDomain {
public:
    AnnulusDomain(std::vector<TimeFnPtr> center, TimeFnPtr inner, TimeFnPtr outer,
                  double horizon);

    int dimension() const override { return static_cast<int>(center_.size()); }
    double horizon() const override { return horizon_; }
    double level_set(double t, const Vec& z) const override;
    Vec level_set_gradient(double t, const Vec& z) const override;
    double distance_to_slice(double t, const Vec& z) const override;
    double distance_to_boundary(double t, const Vec& z) const override;
    Vec closest_boundary_point(double t, const Vec& z) const override;
    std::vector<Vec> inward_normals(double t, const Vec& z) const override;
    SliceBounds slice_bounds(double t) const override;
    std::vector<Vec> boundary_sample(double t, int count) const override;
    std::optional<double> slice_deficiency(double s, double t) const override;
    bool time_independent() const override;
    nlohmann::json to_json() const override;

    Vec center(double t) const;
    double inner(double t) const { return (*inner_)(t); }
    double outer(double t) const { return (*outer_)(t); }

private:
    std::vector<TimeFnPtr> center_;
    TimeFnPtr inner_, outer_;
    double horizon_;
};

// user-supplied level set; every query falls back to numeric root finding
class LevelSetDomain final : public TimeDependentDomain {
public:
    using LevelSetFn = std::function<double(double, const Vec&)>;
    using GradientFn = std::function<Vec(double, const Vec&)>;
    using BoundsFn = std::function<SliceBounds(double)>;

    LevelSetDomain(int dimension, double horizon, LevelSetFn psi, BoundsFn bounds,
                   GradientFn gradient = nullptr, bool convex = false);

    int dimension() const override { return dim_; }
    double horizon() const override { return horizon_; }
    double level_set(double t, const Vec& z) const override { return psi_(t, z); }
    Vec level_set_gradient(double t, const Vec& z) const override;
    SliceBounds slice_bounds(double t) const override { return bounds_(t); }
    bool convex_slices() const override { return convex_; }
    nlohmann::json to_json() const override;

private:
    int dim_;
    double horizon_;
    LevelSetFn psi_;
    BoundsFn bounds_;
    GradientFn gradient_;
    bool convex_;
};

DomainPtr parse_domain(const nlohmann::json& spec, double horizon);

}  // namespace skorohod
