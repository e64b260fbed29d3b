#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "skorohod/errors.hpp"

namespace skorohod {

// Partition 0 = t_0 < t_1 < ... < t_N = T of the time horizon.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {
        if (times_.size() < 2)
            throw ConfigError("TimeGrid needs at least two nodes");
        if (times_.front() != 0.0)
            throw ConfigError("TimeGrid must start at t = 0");
        for (std::size_t k = 0; k + 1 < times_.size(); ++k)
            if (!(times_[k] < times_[k + 1]))
                throw ConfigError("TimeGrid times must be strictly increasing");
    }

    // 2^level uniform intervals on [0, T].
    static TimeGrid dyadic(double horizon, int level) {
        if (horizon <= 0.0) throw ConfigError("dyadic grid needs horizon > 0");
        if (level < 0 || level > 30) throw ConfigError("dyadic level out of range");
        std::size_t n = std::size_t{1} << level;
        std::vector<double> times(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            times[k] = horizon * static_cast<double>(k) / static_cast<double>(n);
        times.back() = horizon;
        return TimeGrid(std::move(times));
    }

    const std::vector<double>& times() const { return times_; }
    std::size_t node_count() const { return times_.size(); }
    std::size_t step_count() const { return times_.size() - 1; }
    double horizon() const { return times_.back(); }

    // mesh = max_k (t_{k+1} - t_k)
    double mesh() const {
        double m = 0.0;
        for (std::size_t k = 0; k + 1 < times_.size(); ++k)
            m = std::max(m, times_[k + 1] - times_[k]);
        return m;
    }

    // Largest k with t_k <= t; the node governing a cadlag step path at t.
    std::size_t floor_index(double t) const {
        if (t < 0.0 || t > horizon() * (1.0 + 1e-12))
            throw std::domain_error("time outside [0, T]");
        std::size_t lo = 0, hi = times_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (times_[mid] <= t) lo = mid; else hi = mid - 1;
        }
        return lo;
    }

    bool operator==(const TimeGrid& other) const { return times_ == other.times_; }

private:
    std::vector<double> times_;
};

}  // namespace skorohod
