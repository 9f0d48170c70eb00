#pragma once

#include <cstdint>
#include <random>

namespace secpac {

// splitmix64 step, used to hash (seed, stream) pairs into independent seeds.
// Standard constants from Steele et al.; good enough to decorrelate replica
// streams without pulling in a counter-based generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a per-stream seed from a master seed. Deterministic and collision
// resistant enough for the replica counts used here (<= 1e6 streams).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x5851f42d4c957f2dULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Deterministic RNG wrapper. All draws go through explicit arithmetic on
// mt19937_64 output rather than std:: distributions, whose algorithms are
// implementation defined and would break byte-identical reproducibility
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Bernoulli draw; p outside [0,1] saturates.
    bool bernoulli(double p) {
        return uniform() < p;
    }

    // Fair coin.
    int bit() {
        return static_cast<int>(engine_() >> 63);
    }

    // Uniform integer in [0, n). n must be positive; rejection sampling keeps
    // the draw exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace secpac
