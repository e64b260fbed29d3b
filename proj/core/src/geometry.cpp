#include "skorohod/geometry.hpp"

#include <cmath>

#include "skorohod/errors.hpp"
#include "skorohod/sampling.hpp"

namespace skorohod {

namespace {

// sup_{z in D_s closure} d(z, D_t), closed form when the family has one
double slice_deficiency_sampled(const TimeDependentDomain& domain, double s, double t,
                                const Resolution& res) {
    if (auto exact = domain.slice_deficiency(s, t)) return *exact;
    double worst = 0.0;
    for (const Vec& z : domain.closure_sample(s, res.spatial))
        worst = std::max(worst, domain.distance_to_slice(t, z));
    return worst;
}

template <typename PairFn>
double sup_over_gap(const TimeDependentDomain& domain, double r, const Resolution& res,
                    PairFn&& fn) {
    const double T = domain.horizon();
    double worst = 0.0;
    for (double s : linspace(0.0, T, res.temporal)) {
        const double lo = std::max(0.0, s - r), hi = std::min(T, s + r);
        for (double t : linspace(lo, hi, res.inner_temporal))
            worst = std::max(worst, fn(s, t));
        // the extremes |s-t| = r usually dominate; hit them exactly
        worst = std::max(worst, fn(s, lo));
        worst = std::max(worst, fn(s, hi));
    }
    return worst;
}

}  // namespace

double modulus_l(const TimeDependentDomain& domain, double r, const Resolution& res) {
    if (r < 0.0 || r > domain.horizon())
        throw std::domain_error("modulus gap outside [0, T]");
    if (r == 0.0) return 0.0;
    return sup_over_gap(domain, r, res, [&](double s, double t) {
        return slice_deficiency_sampled(domain, s, t, res);
    });
}

double boundary_modulus_lhat(const TimeDependentDomain& domain, double r,
                             const Resolution& res) {
    if (r < 0.0 || r > domain.horizon())
        throw std::domain_error("modulus gap outside [0, T]");
    if (r == 0.0) return 0.0;
    return sup_over_gap(domain, r, res, [&](double s, double t) {
        double worst = 0.0;
        for (const Vec& z : domain.boundary_sample(s, res.spatial))
            worst = std::max(worst, domain.distance_to_boundary(t, z));
        return worst;
    });
}

double hausdorff(const std::vector<Vec>& E, const std::vector<Vec>& F) {
    if (E.empty() || F.empty()) throw std::domain_error("hausdorff needs nonempty sets");
    auto one_sided = [](const std::vector<Vec>& A, const std::vector<Vec>& B) {
        double worst = 0.0;
        for (const Vec& b : B) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec& a : A) best = std::min(best, (a - b).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(E, F), one_sided(F, E));
}

ExteriorSphereCheck exterior_sphere_check(const TimeDependentDomain& domain, double t,
                                          const Vec& z, const Vec& n, double r0,
                                          const Resolution& res) {
    ExteriorSphereCheck out{true, std::numeric_limits<double>::infinity(), z};
    for (const Vec& y : domain.closure_sample(t, res.spatial)) {
        const Vec d = y - z;
        const double lhs = n.dot(d) + d.squaredNorm() / (2.0 * r0);
        if (lhs < out.worst) {
            out.worst = lhs;
            out.witness = y;
        }
    }
    out.ok = out.worst >= -1e-9;
    return out;
}

double measure_exterior_sphere_radius(const TimeDependentDomain& domain,
                                      const Resolution& res, double cap) {
    double r0 = cap;
    for (double t : linspace(0.0, domain.horizon(), res.temporal)) {
        const auto boundary = domain.boundary_sample(t, res.spatial);
        const auto closure = domain.closure_sample(t, res.spatial);
        for (const Vec& z : boundary) {
            for (const Vec& n : domain.inward_normals(t, z)) {
                for (const Vec& y : closure) {
                    const Vec d = y - z;
                    const double down = n.dot(d);
                    // <n, y-z> + |y-z|^2/(2r) >= 0 fails iff r > |y-z|^2 / (-2<n,y-z>)
                    if (down < -1e-12)
                        r0 = std::min(r0, d.squaredNorm() / (-2.0 * down));
                }
            }
        }
    }
    return r0;
}

double log_log_slope(const std::vector<double>& r, const std::vector<double>& l) {
    if (r.size() != l.size() || r.size() < 2)
        throw std::domain_error("slope fit needs matching samples, >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (!(r[k] > 0.0) || !(l[k] > 0.0)) continue;
        const double x = std::log(r[k]), y = std::log(l[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::domain_error("slope fit needs >= 2 positive samples");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace skorohod
