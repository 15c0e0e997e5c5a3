#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace citenet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for realization `index` of an ensemble rooted at `base`.
/// Index-derived, so parallel and serial runs see the same streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0xD1B54A32D192ED03ull));
}

/// Seeded random source. All sampling goes through explicit integer and
/// inversion methods rather than std distributions, so a given seed
/// yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound) {
        // rejection below the largest multiple of bound keeps the draw unbiased
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    /// True with probability prob. Degenerate probabilities consume no draw.
    bool bernoulli(double prob) {
        if (prob <= 0.0) return false;
        if (prob >= 1.0) return true;
        return uniform01() < prob;
    }

    /// Geometric count on {0, 1, 2, ...} with the given mean, i.e. success
    /// probability 1/(1+mean): P(X=k) = s(1-s)^k. mean = 0 always yields 0.
    std::int64_t geometric_count(double mean) {
        if (mean < 0.0 || !std::isfinite(mean))
            throw std::invalid_argument("geometric_count: mean must be finite and >= 0");
        if (mean == 0.0) return 0;
        const double s = 1.0 / (1.0 + mean);
        // inversion: X = floor(log(1-U) / log(1-s))
        const double x = std::floor(std::log1p(-uniform01()) / std::log1p(-s));
        return static_cast<std::int64_t>(x);
    }

    /// min(count, |candidates|) elements chosen uniformly without
    /// replacement, via partial Fisher-Yates.
    template <class T>
    std::vector<T> sample_subset(std::vector<T> candidates, std::size_t count) {
        const std::size_t take = std::min(count, candidates.size());
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_index(candidates.size() - i));
            std::swap(candidates[i], candidates[j]);
        }
        candidates.resize(take);
        return candidates;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_index(i))]);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace citenet
