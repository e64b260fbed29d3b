#include "skorohod/interaction.hpp"

#include <cmath>
#include <map>

#include "skorohod/errors.hpp"
#include "skorohod/projection.hpp"
#include "skorohod/sampling.hpp"

namespace skorohod {

namespace {

// Slice samples are deterministic per (t, count); repeat queries across a
// boundary lattice hit the same slices, so memoize them.
struct SliceCache {
    const TimeDependentDomain* domain = nullptr;
    std::map<std::pair<double, int>, std::vector<Vec>> boundary, closure;

    const std::vector<Vec>& get_boundary(double t, int count) {
        auto [it, fresh] = boundary.try_emplace({t, count});
        if (fresh) it->second = domain->boundary_sample(t, count);
        return it->second;
    }
    const std::vector<Vec>& get_closure(double t, int count) {
        auto [it, fresh] = closure.try_emplace({t, count});
        if (fresh) it->second = domain->closure_sample(t, count);
        return it->second;
    }
};

struct NeighborhoodSample {
    std::vector<Vec> generators;  // every gamma seen in the neighborhood
    // per time slice: (y, gammas at y) for boundary y within the rho-ball
    std::vector<std::vector<std::pair<Vec, std::vector<Vec>>>> boundary_slices;
    std::vector<std::vector<Vec>> closure_slices;  // z_hat candidates per slice
};

int effective_spatial(const TimeDependentDomain& domain, double s, double rho,
                      const Resolution& res) {
    const double extent = domain.slice_bounds(s).radius();
    const double factor = std::min(8.0, std::max(1.0, extent / rho));
    return static_cast<int>(res.spatial * factor);
}

NeighborhoodSample collect_neighborhood(const TimeDependentDomain& domain,
                                        const ConeField& cone, double s, const Vec& z,
                                        double rho, double eta, const Resolution& res,
                                        bool with_closure, SliceCache& cache) {
    NeighborhoodSample out;
    const double t_hi = std::min(domain.horizon(), s + eta);
    const int count = effective_spatial(domain, s, rho, res);
    bool any = false;
    for (double t : linspace(s, t_hi, res.inner_temporal)) {
        auto& slice = out.boundary_slices.emplace_back();
        for (const Vec& y : cache.get_boundary(t, count)) {
            if ((y - z).norm() > rho) continue;
            auto gens = cone.generators(domain, t, y);
            for (const Vec& g : gens) out.generators.push_back(g);
            slice.emplace_back(y, std::move(gens));
            any = true;
        }
        auto& closure = out.closure_slices.emplace_back();
        if (with_closure)
            for (const Vec& zh : cache.get_closure(t, count))
                if ((zh - z).norm() <= rho) closure.push_back(zh);
    }
    if (!any)
        throw GeometryError("no boundary points found in the (rho, eta) neighborhood");
    return out;
}

double min_alignment(const std::vector<Vec>& generators, const Vec& u) {
    double worst = 1.0;
    for (const Vec& g : generators) worst = std::min(worst, g.dot(u));
    return worst;
}

double quantity_a_impl(const TimeDependentDomain& domain, const ConeField& cone, double s,
                       const Vec& z, double rho, double eta, const Resolution& res,
                       SliceCache& cache) {
    if (!(rho > 0.0) || !(eta > 0.0)) throw std::domain_error("quantity_a needs rho, eta > 0");
    const auto nb = collect_neighborhood(domain, cone, s, z, rho, eta, res, false, cache);
    const int d = domain.dimension();

    Vec mean = Vec::Zero(d);
    for (const Vec& g : nb.generators) mean += g;
    Vec best_u = mean.norm() > 1e-12 ? unit(mean) : nb.generators.front();
    double best = min_alignment(nb.generators, best_u);

    for (const Vec& u : sphere_lattice(d, res.directions)) {
        const double val = min_alignment(nb.generators, u);
        if (val > best) {
            best = val;
            best_u = u;
        }
    }
    // ascent along the binding generator's tangential component
    for (int pass = 0; pass < std::max(1, res.refine_passes); ++pass) {
        double step = 0.5;
        for (int it = 0; it < 40; ++it) {
            const Vec* binding = &nb.generators.front();
            double worst = 1.0;
            for (const Vec& g : nb.generators) {
                const double dot = g.dot(best_u);
                if (dot < worst) {
                    worst = dot;
                    binding = &g;
                }
            }
            const Vec push = *binding - binding->dot(best_u) * best_u;
            if (push.norm() < 1e-14) break;
            const Vec candidate = unit(Vec(best_u + step * push));
            const double val = min_alignment(nb.generators, candidate);
            if (val > best) {
                best = val;
                best_u = candidate;
            } else {
                step *= 0.5;
                if (step < 1e-6) break;
            }
        }
    }
    return best;
}

double quantity_c_impl(const TimeDependentDomain& domain, const ConeField& cone, double s,
                       const Vec& z, double rho, double eta, const Resolution& res,
                       SliceCache& cache) {
    if (!(rho > 0.0) || !(eta > 0.0)) throw std::domain_error("quantity_c needs rho, eta > 0");
    const auto nb = collect_neighborhood(domain, cone, s, z, rho, eta, res, true, cache);
    double best = 0.0;
    for (std::size_t slice = 0; slice < nb.boundary_slices.size(); ++slice) {
        const auto& boundary = nb.boundary_slices[slice];
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const Vec& y = boundary[i].first;
            const auto& gens = boundary[i].second;
            auto consider = [&](const Vec& zh) {
                const Vec diff = y - zh;
                const double len = diff.norm();
                if (len < 1e-12) return;
                for (const Vec& g : gens) best = std::max(best, g.dot(diff) / len);
            };
            for (std::size_t j = 0; j < boundary.size(); ++j)
                if (j != i) consider(boundary[j].first);
            for (const Vec& zh : nb.closure_slices[slice]) consider(zh);
        }
    }
    return std::min(best, 1.0);
}

}  // namespace

double quantity_a(const TimeDependentDomain& domain, const ConeField& cone, double s,
                  const Vec& z, double rho, double eta, const Resolution& res) {
    SliceCache cache{&domain, {}, {}};
    return quantity_a_impl(domain, cone, s, z, rho, eta, res, cache);
}

double quantity_c(const TimeDependentDomain& domain, const ConeField& cone, double s,
                  const Vec& z, double rho, double eta, const Resolution& res) {
    SliceCache cache{&domain, {}, {}};
    return quantity_c_impl(domain, cone, s, z, rho, eta, res, cache);
}

double quantity_e(double a_val, double c_val) {
    if (!(a_val > 0.0)) throw std::domain_error("quantity_e needs a > 0");
    return c_val / std::max(a_val * a_val, a_val / 2.0);
}

InteractionSummary measure_interaction(const TimeDependentDomain& domain,
                                       const ConeField& cone, double rho0, double eta0,
                                       const Resolution& res) {
    InteractionSummary out{1.0, 0.0, 0.0};
    Resolution local = res;
    local.inner_temporal = std::min(res.inner_temporal, 5);
    const int outer_times = std::min(res.temporal, 7);
    const int outer_points = 24;
    SliceCache cache{&domain, {}, {}};
    bool any = false;
    for (double s : linspace(0.0, domain.horizon(), outer_times)) {
        for (const Vec& z : domain.boundary_sample(s, outer_points)) {
            const double a = quantity_a_impl(domain, cone, s, z, rho0, eta0, local, cache);
            const double c = quantity_c_impl(domain, cone, s, z, rho0, eta0, local, cache);
            out.a_inf = std::min(out.a_inf, a);
            out.c_sup = std::max(out.c_sup, c);
            if (a > 0.0) out.e_sup = std::max(out.e_sup, quantity_e(a, c));
            any = true;
        }
    }
    if (!any) throw GeometryError("no boundary lattice points for interaction measurement");
    return out;
}

namespace {

double measured_h0(const TimeDependentDomain& domain, const ConeField& cone, double probe,
                   double rho0) {
    ProjectionParams params{probe, 10.0};
    params.enforce_budget = false;
    params.enforce_stretch = false;
    double worst = 1.0;
    for (double t : linspace(0.0, domain.horizon(), 5)) {
        for (const Vec& z : domain.boundary_sample(t, 32)) {
            const Vec n = domain.inward_normals(t, z).front();
            for (double alpha : {0.25, 0.5, 0.9}) {
                const Vec y = z - alpha * probe * n;
                const double dist = domain.distance_to_slice(t, y);
                if (dist <= 1e-12 || dist >= rho0) continue;
                const auto proj = oblique_project(domain, cone, t, y, params);
                if (proj.stretch > 0.0) worst = std::max(worst, proj.stretch / dist);
            }
        }
    }
    return worst;
}

}  // namespace

GeometryBudget measure_budget(const TimeDependentDomain& domain, const ConeField& cone,
                              const Resolution& res) {
    const double T = domain.horizon();
    GeometryBudget budget;
    budget.convex_slices = domain.convex_slices();
    budget.r0 = measure_exterior_sphere_radius(domain, res);

    double scale = std::numeric_limits<double>::infinity();
    for (double t : linspace(0.0, T, 9))
        scale = std::min(scale, domain.slice_bounds(t).radius());

    // rho0 ladder: the largest localization radius keeping the cones coherent
    // and the skewness quantity clear of 1
    Resolution ladder_res = res;
    ladder_res.spatial = std::min(res.spatial, 96);
    ladder_res.inner_temporal = 3;
    const double eta_probe = T / 8.0;
    double best_rho = 0.0, best_a = -1.0;
    for (double frac : {0.25, 0.125, 0.0625, 0.03125}) {
        const double rho = std::min(frac * 2.0 * scale, 0.9 * budget.r0);
        if (!(rho > 0.0)) continue;
        const auto sum = measure_interaction(domain, cone, rho, eta_probe, ladder_res);
        if (sum.a_inf >= 0.5 && sum.e_sup < 0.75) {
            best_rho = rho;
            best_a = sum.a_inf;
            break;
        }
        if (sum.a_inf > best_a) {
            best_a = sum.a_inf;
            best_rho = rho;
        }
    }
    if (!(best_a > 0.0))
        throw GeometryError("no localization radius gives positive cone coherence a");
    budget.rho0 = best_rho;
    budget.eta0 = eta_probe;

    const auto sum = measure_interaction(domain, cone, budget.rho0, budget.eta0, res);
    if (!(sum.a_inf > 0.0)) throw GeometryError("measured cone coherence a is not positive");
    // sampled inf/sup carry a discretization gap; pad toward the safe side
    budget.a = std::max(1e-6, sum.a_inf * 0.98);
    budget.e = std::min(0.98, sum.e_sup * 1.02 + 0.005);
    if (!(budget.e < 1.0)) throw GeometryError("measured skewness e reaches 1");

    // modulus table on a dyadic gap ladder
    if (!domain.time_independent()) {
        std::vector<double> gaps{0.0};
        std::vector<double> values{0.0};
        for (int j = 10; j >= 0; --j) {
            const double r = T * std::pow(2.0, -j);
            gaps.push_back(r);
            values.push_back(modulus_l(domain, r, res));
        }
        budget.l_table = ModulusTable(std::move(gaps), std::move(values));
    } else {
        budget.l_table = ModulusTable::zero();
    }

    // good-projection constants: closed form when the cone maps normals,
    // measured stretch otherwise (normal reflection degenerates the formula)
    const auto q = cone.normal_alignment_q(T);
    if (q.has_value() && *q < 1.0) {
        const auto gp = good_projection_constants(budget.r0, *q, 1.0);
        budget.h0 = gp.h0;
        budget.delta0 = std::min(gp.delta0, 0.9 * budget.rho0);
    } else {
        const double probe = 0.5 * std::min(budget.rho0, budget.r0);
        const double h_meas = measured_h0(domain, cone, probe, budget.rho0);
        budget.h0 = std::max(1.05, 1.05 * h_meas);
        budget.delta0 = std::min(0.5 * std::min(budget.rho0, budget.r0), 0.9 * budget.rho0);
    }

    budget.validate();
    return budget;
}

}  // namespace skorohod
