#include "skorohod/sampling.hpp"

#include <cmath>

namespace skorohod {

double halton(std::size_t index, int base) {
    double f = 1.0, r = 0.0;
    std::size_t i = index + 1;  // skip the zero point
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

std::vector<Vec> sphere_lattice(int d, int count) {
    std::vector<Vec> pts;
    if (d == 1) {
        Vec plus(1), minus(1);
        plus << 1.0;
        minus << -1.0;
        pts = {plus, minus};
        return pts;
    }
    if (d == 2) {
        pts.reserve(count);
        for (int k = 0; k < count; ++k) {
            double phi = 2.0 * M_PI * (k + 0.5) / count;
            Vec v(2);
            v << std::cos(phi), std::sin(phi);
            pts.push_back(v);
        }
        return pts;
    }
    if (d == 3) {
        // Fibonacci sphere
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        pts.reserve(count);
        for (int k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / count;
            double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = 2.0 * M_PI * k / golden;
            Vec v(3);
            v << rad * std::cos(phi), rad * std::sin(phi), z;
            pts.push_back(v);
        }
        return pts;
    }
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Vec v(d);
        for (int j = 0; j < d; ++j) {
            double u = halton(static_cast<std::size_t>(k), primes[j % 10]);
            v(j) = normal_icdf(std::min(1.0 - 1e-12, std::max(1e-12, u)));
        }
        double n = v.norm();
        if (n == 0.0) { v.setZero(); v(0) = 1.0; n = 1.0; }
        pts.push_back(v / n);
    }
    return pts;
}

std::vector<Vec> box_lattice(const Vec& lo, const Vec& hi, int count) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const int d = static_cast<int>(lo.size());
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Vec v(d);
        for (int j = 0; j < d; ++j) {
            double u = halton(static_cast<std::size_t>(k), primes[j % 10]);
            v(j) = lo(j) + u * (hi(j) - lo(j));
        }
        pts.push_back(v);
    }
    return pts;
}

std::vector<double> linspace(double a, double b, int count) {
    if (count < 2 || a == b) return {a};
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k)
        out[k] = a + (b - a) * static_cast<double>(k) / (count - 1);
    out.back() = b;
    return out;
}

// AS241 algorithm PPND16.
double normal_icdf(double p) {
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

}  // namespace skorohod
