#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace enrec {

// All randomness in the project flows from one root seed through named
// sub-streams, so edits to one consumer never shift the draws of another.
// Distributions are implemented here rather than taken from <random> so that
// sampled values are identical across standard-library versions.

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-free generator: a small xoshiro256** seeded via splitmix64.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [0, n).
    uint64_t below(uint64_t n) { return next_u64() % n; }

    // Box-Muller; one value per call, the pair sibling is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do { u1 = uniform(); } while (u1 <= 0.0);
        u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * M_PI * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Inverse-CDF sample with scale parameter b (variance 2 b^2).
    double laplace(double scale) {
        const double u = uniform() - 0.5;
        return -scale * std::copysign(std::log(1.0 - 2.0 * std::fabs(u)), u);
    }

    // Knuth's method; fine for the small means used here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4]{};
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Derives independent generators from (root seed, stream name, indices).
class SeedTree {
public:
    explicit SeedTree(uint64_t root) : root_(root) {}

    uint64_t leaf_seed(std::string_view name, uint64_t i = 0, uint64_t j = 0) const {
        uint64_t state = root_ ^ fnv1a(name);
        state = splitmix64(state) ^ (i * 0x9e3779b97f4a7c15ULL);
        state = splitmix64(state) ^ (j * 0xc2b2ae3d27d4eb4fULL);
        return splitmix64(state);
    }

    Rng stream(std::string_view name, uint64_t i = 0, uint64_t j = 0) const {
        return Rng(leaf_seed(name, i, j));
    }

    uint64_t root() const { return root_; }

private:
    uint64_t root_;
};

} // namespace enrec
