#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace reprank {

// splitmix64, used to derive independent per-attacker streams from one seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 with hand-rolled sampling so that outputs do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, n) by rejection.
    uint64_t uniform_int(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do { x = gen_(); } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Knuth's product method; adequate for small lambda.
    int poisson(double lambda) {
        const double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    // k distinct indices drawn proportionally to `weights`, by rejection of
    // repeats. Requires k <= number of positive weights.
    std::vector<uint32_t> weighted_sample_without_replacement(const std::vector<uint32_t>& weights,
                                                             size_t k);

private:
    std::mt19937_64 gen_;
};

} // namespace reprank
