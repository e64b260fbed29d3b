#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "skorohod/domain.hpp"
#include "skorohod/expr.hpp"
#include "skorohod/types.hpp"

namespace skorohod {

enum class ConeKind { Normal, SingleDirection, FiniteGenerators };

// Reflection cone field Gamma_t(z), evaluated as a finite set of unit
// generators at boundary points. Default-constructed fields reflect along the
// inward normal cone.
class ConeField {
public:
    // direction(t, z, inward_normal) -> unit vector; must be continuous
    using DirectionFn = std::function<Vec(double, const Vec&, const Vec&)>;

    ConeField() : spec_({{"kind", "normal"}}) {}

    static ConeField normal();
    static ConeField single_direction(DirectionFn fn);
    // d = 2: inward normal rotated by theta(t); positive theta tilts the
    // half-plane generator (0,1) toward (sin theta, cos theta)
    static ConeField rotated_normal(TimeFnPtr theta);
    // per-face generator sets, aligned with MovingConvexPolytope faces
    static ConeField finite_generators(std::vector<std::vector<Vec>> per_face);

    ConeKind kind() const { return kind_; }

    std::vector<Vec> generators(const TimeDependentDomain& domain, double t,
                                const Vec& z) const;

    // dir within the cone: aligned with the single generator, or a
    // nonnegative-least-squares fit with small residual for generator sets
    bool contains(const TimeDependentDomain& domain, double t, const Vec& z,
                  const Vec& dir, double tol = 1e-6) const;

    // min over generator pairs of <g1, g2>; must stay > -1
    double pairwise_min_dot(const TimeDependentDomain& domain, double t, const Vec& z) const;

    // Sampled modulus of continuity sup |gamma(p1) - gamma(p2)| over boundary
    // pairs within each spacing; the closed-graph proxy for single-direction
    // fields.
    std::vector<double> continuity_moduli(const TimeDependentDomain& domain,
                                          const std::vector<double>& spacings,
                                          int sample_count = 128) const;

    // inf_t <gamma, n> for fields with a known normal-to-cone map Q (normal:
    // 1, rotated normal: min cos theta(t)); the q of Eq.-style good-projection
    // constants. Nullopt for generic cones, whose h0 is measured instead.
    std::optional<double> normal_alignment_q(double horizon) const;

    nlohmann::json to_json() const { return spec_; }

private:
    ConeKind kind_ = ConeKind::Normal;
    DirectionFn direction_;
    std::vector<std::vector<Vec>> per_face_;
    TimeFnPtr theta_;
    nlohmann::json spec_;
};

ConeField parse_cone(const nlohmann::json& spec);

// min_{alpha >= 0} |G alpha - target|; returns the residual norm
double nnls_residual(const std::vector<Vec>& generators, const Vec& target);

}  // namespace skorohod
