#include "skorohod/cone.hpp"

#include <cmath>

#include "skorohod/errors.hpp"
#include "skorohod/sampling.hpp"

namespace skorohod {

using nlohmann::json;

ConeField ConeField::normal() {
    ConeField c;
    c.kind_ = ConeKind::Normal;
    c.spec_ = {{"kind", "normal"}};
    return c;
}

ConeField ConeField::single_direction(DirectionFn fn) {
    ConeField c;
    c.kind_ = ConeKind::SingleDirection;
    c.direction_ = std::move(fn);
    c.spec_ = {{"kind", "single"}};
    return c;
}

ConeField ConeField::rotated_normal(TimeFnPtr theta) {
    ConeField c;
    c.kind_ = ConeKind::SingleDirection;
    c.direction_ = [theta](double t, const Vec& z, const Vec& n) {
        if (n.size() != 2)
            throw GeometryError("rotated-normal cone needs d = 2");
        (void)z;
        const double th = (*theta)(t);
        Vec g(2);
        g << std::cos(th) * n(0) + std::sin(th) * n(1),
            -std::sin(th) * n(0) + std::cos(th) * n(1);
        return g;
    };
    c.theta_ = theta;
    c.spec_ = {{"kind", "single"}, {"theta", theta->to_json()}};
    return c;
}

std::optional<double> ConeField::normal_alignment_q(double horizon) const {
    if (kind_ == ConeKind::Normal) return 1.0;
    if (theta_ == nullptr) return std::nullopt;
    double q = 1.0;
    for (double t : linspace(0.0, horizon, 65)) q = std::min(q, std::cos((*theta_)(t)));
    return q;
}

ConeField ConeField::finite_generators(std::vector<std::vector<Vec>> per_face) {
    ConeField c;
    c.kind_ = ConeKind::FiniteGenerators;
    c.per_face_ = std::move(per_face);
    json faces = json::array();
    for (const auto& face : c.per_face_) {
        json gens = json::array();
        for (const Vec& g : face)
            gens.push_back(std::vector<double>(g.data(), g.data() + g.size()));
        faces.push_back(gens);
    }
    c.spec_ = {{"kind", "generators"}, {"faces", faces}};
    return c;
}

std::vector<Vec> ConeField::generators(const TimeDependentDomain& domain, double t,
                                       const Vec& z) const {
    switch (kind_) {
        case ConeKind::Normal:
            return domain.inward_normals(t, z);
        case ConeKind::SingleDirection: {
            const Vec n = domain.inward_normals(t, z).front();
            Vec g = direction_(t, z, n);
            const double len = g.norm();
            if (len < 1e-12) throw GeometryError("cone direction degenerate");
            return {Vec(g / len)};
        }
        case ConeKind::FiniteGenerators: {
            const auto* poly = dynamic_cast<const MovingConvexPolytope*>(&domain);
            if (poly == nullptr)
                throw GeometryError("generator cones are defined per polytope face");
            std::vector<Vec> gens;
            for (int face : poly->active_faces(t, z)) {
                if (static_cast<std::size_t>(face) >= per_face_.size())
                    throw ConfigError("cone spec has fewer faces than the polytope");
                for (const Vec& g : per_face_[static_cast<std::size_t>(face)])
                    gens.push_back(unit(g));
            }
            if (gens.empty())
                throw GeometryError("no active face at requested boundary point");
            return gens;
        }
    }
    return {};
}

double nnls_residual(const std::vector<Vec>& generators, const Vec& target) {
    const int m = static_cast<int>(generators.size());
    Mat G(target.size(), m);
    for (int i = 0; i < m; ++i) G.col(i) = generators[static_cast<std::size_t>(i)];
    const Mat gram = G.transpose() * G;
    const Vec rhs = G.transpose() * target;
    double step = 1.0 / std::max(1e-12, gram.trace());
    Vec alpha = Vec::Zero(m);
    for (int it = 0; it < 800; ++it) {
        const Vec grad = gram * alpha - rhs;
        Vec next = (alpha - step * grad).cwiseMax(0.0);
        if ((next - alpha).norm() < 1e-14) {
            alpha = next;
            break;
        }
        alpha = next;
    }
    return (G * alpha - target).norm();
}

bool ConeField::contains(const TimeDependentDomain& domain, double t, const Vec& z,
                         const Vec& dir, double tol) const {
    const auto gens = generators(domain, t, z);
    const Vec d = unit(dir);
    if (gens.size() == 1) return (gens.front() - d).norm() <= tol;
    return nnls_residual(gens, d) <= tol;
}

double ConeField::pairwise_min_dot(const TimeDependentDomain& domain, double t,
                                   const Vec& z) const {
    const auto gens = generators(domain, t, z);
    double worst = 1.0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            worst = std::min(worst, gens[i].dot(gens[j]));
    return worst;
}

std::vector<double> ConeField::continuity_moduli(const TimeDependentDomain& domain,
                                                 const std::vector<double>& spacings,
                                                 int sample_count) const {
    std::vector<double> moduli;
    const double T = domain.horizon();
    for (double h : spacings) {
        double worst = 0.0;
        for (double t : linspace(0.0, std::max(0.0, T - h), 5)) {
            const auto pts = domain.boundary_sample(t, sample_count);
            for (const Vec& z : pts) {
                const Vec g0 = generators(domain, t, z).front();
                // temporal neighbor
                const Vec zt = domain.closest_boundary_point(t + h, z);
                worst = std::max(worst, (generators(domain, t + h, zt).front() - g0).norm());
                // spatial neighbor within h
                double best_dist = std::numeric_limits<double>::infinity();
                const Vec* nearest = nullptr;
                for (const Vec& y : pts) {
                    const double dist = (y - z).norm();
                    if (dist > 1e-14 && dist <= h && dist < best_dist) {
                        best_dist = dist;
                        nearest = &y;
                    }
                }
                if (nearest != nullptr)
                    worst = std::max(worst, (generators(domain, t, *nearest).front() - g0).norm());
            }
        }
        moduli.push_back(worst);
    }
    return moduli;
}

ConeField parse_cone(const json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigError("cone spec needs a \"kind\" field");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "normal") return ConeField::normal();
    if (kind == "single") {
        if (!spec.contains("theta"))
            throw ConfigError("single-direction cone spec needs a \"theta\" expression");
        return ConeField::rotated_normal(parse_time_fn(spec.at("theta")));
    }
    if (kind == "generators") {
        std::vector<std::vector<Vec>> per_face;
        for (const auto& face : spec.at("faces")) {
            std::vector<Vec> gens;
            for (const auto& g : face) {
                const auto v = g.get<std::vector<double>>();
                gens.push_back(
                    Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
            }
            per_face.push_back(std::move(gens));
        }
        return ConeField::finite_generators(std::move(per_face));
    }
    throw ConfigError("unknown cone kind '" + kind + "'");
}

}  // namespace skorohod
