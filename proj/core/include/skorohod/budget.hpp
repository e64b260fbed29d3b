#pragma once

#include <vector>

#include <json.hpp>

namespace skorohod {

// Sampled modulus r -> l(r), evaluated by monotone linear interpolation.
class ModulusTable {
public:
    ModulusTable() = default;
    ModulusTable(std::vector<double> r, std::vector<double> l);

    double operator()(double r) const;
    bool empty() const { return r_.empty(); }
    const std::vector<double>& gaps() const { return r_; }
    const std::vector<double>& values() const { return l_; }

    static ModulusTable zero();  // time-independent domains

    nlohmann::json to_json() const;
    static ModulusTable from_json(const nlohmann::json& spec);

private:
    std::vector<double> r_, l_;
};

// Validated geometric constants a solve runs against.
struct GeometryBudget {
    double r0 = 1.0;      // exterior sphere radius
    double rho0 = 0.45;   // localization radius, < r0
    double eta0 = 0.25;   // localization time window
    double a = 1.0;       // cone coherence lower bound, > 0
    double e = 0.0;       // skewness bound, < 1
    double delta0 = 0.2;  // good-projection reach, < rho0
    double h0 = 1.05;     // good-projection stretch factor, > 1
    ModulusTable l_table;
    bool convex_slices = false;

    double l(double r) const { return l_table.empty() ? 0.0 : l_table(r); }

    // Throws GeometryError unless 0 < rho0 < r0, eta0 > 0, a > 0, 0 <= e < 1,
    // 0 < delta0 < rho0, h0 > 1, and l nondecreasing from 0.
    void validate() const;

    nlohmann::json to_json() const;
    static GeometryBudget from_json(const nlohmann::json& spec);
};

}  // namespace skorohod
