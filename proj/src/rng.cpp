#include "emc/rng.hpp"

#include <cmath>

namespace emc {

double SplitMix64::normal() {
    // Box-Muller; u1 nudged away from 0 so the log is finite.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

uint64_t derive_seed(uint64_t master_seed, uint64_t stream_tag) {
    SplitMix64 mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (stream_tag + 1)));
    mix.next();
    return mix.next();
}

}  // namespace emc
