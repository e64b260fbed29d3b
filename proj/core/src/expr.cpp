#include "skorohod/expr.hpp"

#include <cmath>

#include "skorohod/errors.hpp"

namespace skorohod {

namespace {

using nlohmann::json;

class ConstantFn final : public TimeFn {
public:
    explicit ConstantFn(double v) : v_(v) {}
    double operator()(double) const override { return v_; }
    json to_json() const override { return {{"kind", "constant"}, {"value", v_}}; }

private:
    double v_;
};

class LinearFn final : public TimeFn {
public:
    LinearFn(double a, double b) : a_(a), b_(b) {}
    double operator()(double t) const override { return a_ + b_ * t; }
    json to_json() const override {
        return {{"kind", "linear"}, {"intercept", a_}, {"slope", b_}};
    }

private:
    double a_, b_;
};

class SinusoidFn final : public TimeFn {
public:
    SinusoidFn(double a, double b, double w, double phi)
        : a_(a), b_(b), w_(w), phi_(phi) {}
    double operator()(double t) const override {
        return a_ + b_ * std::sin(w_ * t + phi_);
    }
    json to_json() const override {
        return {{"kind", "sinusoid"}, {"offset", a_}, {"amplitude", b_},
                {"omega", w_}, {"phase", phi_}};
    }

private:
    double a_, b_, w_, phi_;
};

class TableFn final : public TimeFn {
public:
    TableFn(std::vector<double> t, std::vector<double> v)
        : t_(std::move(t)), v_(std::move(v)) {
        if (t_.size() != v_.size() || t_.size() < 2)
            throw ConfigError("table expression needs matching times/values, >= 2 rows");
        for (std::size_t k = 0; k + 1 < t_.size(); ++k)
            if (!(t_[k] < t_[k + 1]))
                throw ConfigError("table expression times must increase");
    }
    double operator()(double t) const override {
        if (t <= t_.front()) return v_.front();
        if (t >= t_.back()) return v_.back();
        std::size_t lo = 0, hi = t_.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (t_[mid] <= t) lo = mid; else hi = mid;
        }
        double s = (t - t_[lo]) / (t_[lo + 1] - t_[lo]);
        return v_[lo] + s * (v_[lo + 1] - v_[lo]);
    }
    json to_json() const override {
        return {{"kind", "table"}, {"times", t_}, {"values", v_}};
    }

private:
    std::vector<double> t_, v_;
};

}  // namespace

TimeFnPtr constant_fn(double value) { return std::make_shared<ConstantFn>(value); }
TimeFnPtr linear_fn(double a, double b) { return std::make_shared<LinearFn>(a, b); }
TimeFnPtr sinusoid_fn(double a, double b, double w, double phi) {
    return std::make_shared<SinusoidFn>(a, b, w, phi);
}
TimeFnPtr table_fn(std::vector<double> times, std::vector<double> values) {
    return std::make_shared<TableFn>(std::move(times), std::move(values));
}

TimeFnPtr parse_time_fn(const nlohmann::json& spec) {
    if (spec.is_number()) return constant_fn(spec.get<double>());
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigError("expression must be a number or {\"kind\": ...}");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "constant") return constant_fn(spec.at("value").get<double>());
    if (kind == "linear")
        return linear_fn(spec.value("intercept", 0.0), spec.value("slope", 0.0));
    if (kind == "sinusoid")
        return sinusoid_fn(spec.value("offset", 0.0), spec.value("amplitude", 1.0),
                           spec.value("omega", 1.0), spec.value("phase", 0.0));
    if (kind == "table")
        return table_fn(spec.at("times").get<std::vector<double>>(),
                        spec.at("values").get<std::vector<double>>());
    throw ConfigError("unknown expression kind '" + kind + "'");
}

}  // namespace skorohod
