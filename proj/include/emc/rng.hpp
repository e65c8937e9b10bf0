#pragma once

#include <cstdint>

namespace emc {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because its
// output is fully specified by these few lines, so seeded sequences are
// bit-identical on every platform and toolchain.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller on two uniforms (always consumes two draws)
    double normal();

private:
    uint64_t state_;
};

// Derives per-stream seeds from one master seed. Stream tags keep occupancy,
// weather and price noise statistically independent and individually stable:
// adding a new stream never shifts an existing one.
uint64_t derive_seed(uint64_t master_seed, uint64_t stream_tag);

// Stream tags for derive_seed.
inline constexpr uint64_t kStreamOccupancy = 1;
inline constexpr uint64_t kStreamWeather = 2;
inline constexpr uint64_t kStreamPrices = 3;

}  // namespace emc
