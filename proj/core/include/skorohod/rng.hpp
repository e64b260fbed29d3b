#pragma once

#include <array>
#include <cstdint>

namespace skorohod {

// Philox4x32-10 counter-based generator: stateless, keyed draws so parallel
// paths are reproducible and independent of execution order.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // uniform in (0, 1), keyed by (seed, path, step, component)
    double uniform(std::uint64_t path, std::uint64_t step, std::uint32_t component) const;

    // standard normal via inverse CDF of the keyed uniform
    double normal(std::uint64_t path, std::uint64_t step, std::uint32_t component) const;

private:
    std::uint64_t seed_;
};

}  // namespace skorohod
