#include "skorohod/rng.hpp"

#include "skorohod/sampling.hpp"

namespace skorohod {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double CounterRng::uniform(std::uint64_t path, std::uint64_t step,
                           std::uint32_t component) const {
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                           static_cast<std::uint32_t>(seed_ >> 32)};
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
        static_cast<std::uint32_t>(step),
        component ^ static_cast<std::uint32_t>(step >> 32)};
    const auto block = philox4x32(ctr, key);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
    // 53 significant bits, shifted into the open interval
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::normal(std::uint64_t path, std::uint64_t step,
                          std::uint32_t component) const {
    return normal_icdf(uniform(path, step, component));
}

}  // namespace skorohod
