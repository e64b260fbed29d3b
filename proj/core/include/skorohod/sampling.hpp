#pragma once

#include <cstddef>
#include <vector>

#include "skorohod/types.hpp"

namespace skorohod {

// Deterministic low-discrepancy sources. All sup/inf estimates in the library
// sample through these so repeat runs are bit-identical.

double halton(std::size_t index, int base);

// count points on the unit sphere S^{d-1}: endpoints for d=1, a uniform
// angular lattice for d=2, a Fibonacci lattice for d=3, and normalized
// inverse-CDF Halton Gaussians for higher d.
std::vector<Vec> sphere_lattice(int d, int count);

// Halton lattice inside an axis-aligned box.
std::vector<Vec> box_lattice(const Vec& lo, const Vec& hi, int count);

// count values equally spaced on [a, b] inclusive (count >= 2), else {a}.
std::vector<double> linspace(double a, double b, int count);

// Inverse standard normal CDF (Wichura's AS241, double precision).
double normal_icdf(double p);

}  // namespace skorohod
