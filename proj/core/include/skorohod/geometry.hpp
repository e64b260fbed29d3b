#pragma once

#include <vector>

#include "skorohod/domain.hpp"
#include "skorohod/types.hpp"

namespace skorohod {

// Sample counts for the sup/inf estimators. Recorded in reports since the
// underlying quantities are sups over continua.
struct Resolution {
    int temporal = 17;        // outer time samples
    int inner_temporal = 9;   // time samples inside a gap/eta window
    int spatial = 192;        // boundary / closure points per slice
    int directions = 128;     // unit-sphere lattice size
    int refine_passes = 1;    // local refinement rounds after lattice scan
};

// l(r) = sup_{|s-t|<=r} sup_{z in D_s closure} d(z, D_t); worst displacement
// the domain motion can force over a time gap r.
double modulus_l(const TimeDependentDomain& domain, double r, const Resolution& res = {});

// same with boundary-to-boundary distance
double boundary_modulus_lhat(const TimeDependentDomain& domain, double r,
                             const Resolution& res = {});

// symmetric Hausdorff distance of two finite samples
double hausdorff(const std::vector<Vec>& E, const std::vector<Vec>& F);

struct ExteriorSphereCheck {
    bool ok;
    double worst;   // min over samples of <n, y-z> + |y-z|^2 / (2 r0)
    Vec witness;
};

// Samples y over the closure of D_t and tests the quadratic form of the
// uniform exterior sphere condition at (z, n).
ExteriorSphereCheck exterior_sphere_check(const TimeDependentDomain& domain, double t,
                                          const Vec& z, const Vec& n, double r0,
                                          const Resolution& res = {});

// Largest r0 the sampled slices support, capped; convex families report the cap.
double measure_exterior_sphere_radius(const TimeDependentDomain& domain,
                                      const Resolution& res = {}, double cap = 1e3);

// Least-squares slope of log(l) against log(r); the Holder exponent probe.
double log_log_slope(const std::vector<double>& r, const std::vector<double>& l);

}  // namespace skorohod
