#pragma once

#include "skorohod/budget.hpp"
#include "skorohod/cone.hpp"
#include "skorohod/domain.hpp"
#include "skorohod/geometry.hpp"

namespace skorohod {

// a_{s,z}(rho, eta): cone coherence over the space-time boundary neighborhood;
// max over unit u of the min of <gamma, u>. Lattice scan plus local ascent.
double quantity_a(const TimeDependentDomain& domain, const ConeField& cone, double s,
                  const Vec& z, double rho, double eta, const Resolution& res = {});

// c_{s,z}(rho, eta): skewness/concavity; max over boundary y, closure z_hat,
// generators gamma of (<gamma, y - z_hat>/|y - z_hat|) v 0.
double quantity_c(const TimeDependentDomain& domain, const ConeField& cone, double s,
                  const Vec& z, double rho, double eta, const Resolution& res = {});

// e = c / (a^2 v a/2); requires a > 0
double quantity_e(double a_val, double c_val);

struct InteractionSummary {
    double a_inf;
    double c_sup;
    double e_sup;
};

// inf a / sup e over a boundary lattice at fixed (rho0, eta0)
InteractionSummary measure_interaction(const TimeDependentDomain& domain,
                                       const ConeField& cone, double rho0, double eta0,
                                       const Resolution& res = {});

// Full numeric budget: r0, a ladder pick of (rho0, eta0), (a, e), modulus
// table, and (delta0, h0) from the closed form when the cone carries a
// normal-to-cone map, measured otherwise.
GeometryBudget measure_budget(const TimeDependentDomain& domain, const ConeField& cone,
                              const Resolution& res = {});

}  // namespace skorohod
