#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace skorohod {

// Catalogue of named 1-D functions of time used in scenario files:
// constant, linear a+b*t, sinusoid a+b*sin(w*t+phi), piecewise-linear table.
class TimeFn {
public:
    virtual ~TimeFn() = default;
    virtual double operator()(double t) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

using TimeFnPtr = std::shared_ptr<const TimeFn>;

TimeFnPtr constant_fn(double value);
TimeFnPtr linear_fn(double intercept, double slope);
TimeFnPtr sinusoid_fn(double offset, double amplitude, double omega, double phase);
TimeFnPtr table_fn(std::vector<double> times, std::vector<double> values);

// Accepts a bare number (constant) or {"kind": ...} objects.
TimeFnPtr parse_time_fn(const nlohmann::json& spec);

}  // namespace skorohod
