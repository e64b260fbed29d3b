#include "skorohod/budget.hpp"

#include <algorithm>
#include <cmath>

#include "skorohod/errors.hpp"

namespace skorohod {

using nlohmann::json;

ModulusTable::ModulusTable(std::vector<double> r, std::vector<double> l)
    : r_(std::move(r)), l_(std::move(l)) {
    if (r_.size() != l_.size() || r_.size() < 2)
        throw GeometryError("modulus table needs matching gaps/values, >= 2 rows");
    if (r_.front() != 0.0) throw GeometryError("modulus table must start at r = 0");
    for (std::size_t k = 0; k + 1 < r_.size(); ++k)
        if (!(r_[k] < r_[k + 1])) throw GeometryError("modulus table gaps must increase");
    // enforce monotonicity of the sampled sup
    for (std::size_t k = 1; k < l_.size(); ++k) l_[k] = std::max(l_[k], l_[k - 1]);
}

double ModulusTable::operator()(double r) const {
    if (empty() || r <= 0.0) return 0.0;
    if (r >= r_.back()) return l_.back();
    std::size_t lo = 0, hi = r_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (r_[mid] <= r) lo = mid; else hi = mid;
    }
    const double s = (r - r_[lo]) / (r_[lo + 1] - r_[lo]);
    return l_[lo] + s * (l_[lo + 1] - l_[lo]);
}

ModulusTable ModulusTable::zero() { return ModulusTable({0.0, 1.0}, {0.0, 0.0}); }

json ModulusTable::to_json() const { return {{"gaps", r_}, {"values", l_}}; }

ModulusTable ModulusTable::from_json(const json& spec) {
    return ModulusTable(spec.at("gaps").get<std::vector<double>>(),
                        spec.at("values").get<std::vector<double>>());
}

void GeometryBudget::validate() const {
    if (!(r0 > 0.0)) throw GeometryError("budget: r0 must be positive");
    if (!(0.0 < rho0 && rho0 < r0)) throw GeometryError("budget: need 0 < rho0 < r0");
    if (!(eta0 > 0.0)) throw GeometryError("budget: eta0 must be positive");
    if (!(a > 0.0)) throw GeometryError("budget: cone coherence a must be positive");
    if (!(0.0 <= e && e < 1.0)) throw GeometryError("budget: need 0 <= e < 1");
    if (!(0.0 < delta0 && delta0 < rho0)) throw GeometryError("budget: need 0 < delta0 < rho0");
    if (!(h0 > 1.0)) throw GeometryError("budget: need h0 > 1");
    if (!l_table.empty()) {
        if (l_table.values().front() != 0.0)
            throw GeometryError("budget: l(0) must be 0");
        // l(0+) -> 0: the first positive sample should already be small
        if (l_table.gaps().size() > 1 && l_table.values()[1] > rho0)
            throw GeometryError("budget: modulus jumps above rho0 immediately");
    }
}

json GeometryBudget::to_json() const {
    return {{"r0", r0},         {"rho0", rho0}, {"eta0", eta0},
            {"a", a},           {"e", e},       {"delta0", delta0},
            {"h0", h0},         {"l_table", l_table.to_json()},
            {"convex_slices", convex_slices}};
}

GeometryBudget GeometryBudget::from_json(const json& spec) {
    GeometryBudget b;
    b.r0 = spec.value("r0", b.r0);
    b.rho0 = spec.value("rho0", b.rho0);
    b.eta0 = spec.value("eta0", b.eta0);
    b.a = spec.value("a", b.a);
    b.e = spec.value("e", b.e);
    b.delta0 = spec.value("delta0", b.delta0);
    b.h0 = spec.value("h0", b.h0);
    b.convex_slices = spec.value("convex_slices", false);
    if (spec.contains("l_table")) b.l_table = ModulusTable::from_json(spec.at("l_table"));
    return b;
}

}  // namespace skorohod
