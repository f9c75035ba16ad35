#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace notelab {

// Deterministic RNG helpers. mt19937_64 output is pinned by the standard;
// the distributions below are hand-rolled so results are identical across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive range
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(gen_() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller, one value per call (second value discarded to keep the
    // state sequence simple).
    double normal(double mean = 0.0, double stddev = 1.0);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j =
                static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    // weights need not be normalized
    std::size_t categorical(const std::vector<double>& weights);

private:
    std::mt19937_64 gen_;
};

// splitmix64 finalizer; stable across platforms.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace notelab
