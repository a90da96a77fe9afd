#pragma once

#include <cmath>
#include <cstdint>

namespace coord {

// SplitMix64 generator with hand-rolled variate transforms.
//
// The standard <random> distributions are implementation-defined, which
// would break bit-identical reproducibility across toolchains; every draw
// here is specified arithmetic on the raw 64-bit stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    // Derives an independent stream, e.g. one per agent or subsystem.
    static Rng fork(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        r.next_u64();  // decorrelate nearby seeds
        return r;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller using the cosine branch only, so one call consumes a fixed
    // number of raw draws regardless of outcome.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        return mean + stddev * r * std::cos(two_pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace coord
