#pragma once

#include <Eigen/Dense>

namespace skorohod {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec unit(const Vec& v) {
    double n = v.norm();
    return n > 0 ? Vec(v / n) : v;
}

constexpr double kDefaultTol = 1e-9;

}  // namespace skorohod
