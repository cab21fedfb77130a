#ifndef QMMC_RNG_HPP
#define QMMC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace qmmc {

// SplitMix64 finalizer, used to derive well-separated seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives the seed of a named substream. Every component that consumes
// randomness owns a substream derived from the root seed and a tag path, so
// reordering or parallelising components cannot change any result.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(splitmix64(seed) + splitmix64(tag ^ 0x6A09E667F3BCC909ULL));
}

template <typename... Tags>
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
    return derive_stream(derive_stream(seed, tag), rest...);
}

namespace stream_tag {
inline constexpr std::uint64_t weights = 0x01;
inline constexpr std::uint64_t allocation = 0x02;
inline constexpr std::uint64_t final_decisions = 0x03;
inline constexpr std::uint64_t source = 0x04;
inline constexpr std::uint64_t replication = 0x05;
inline constexpr std::uint64_t ground_truth = 0x06;
inline constexpr std::uint64_t method_run = 0x07;
}  // namespace stream_tag

// Seedable random stream with the sampling primitives used across the
// library. Gamma generation follows Marsaglia-Tsang, with the shape<1 boost
// and the shape==1 exponential shortcut; Beta draws are two normalized Gamma
// draws clamped into the open interval (0,1).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1); bin midpoints, never exactly 0 or 1.
    double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential() { return -std::log(uniform_pos()); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // Gamma(shape, 1).
    double gamma(double shape) {
        if (shape < 1.0) {
            return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
        }
        if (shape == 1.0) {
            return exponential();
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Beta(a, b), clamped to the open interval (0,1).
    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        const double s = x + y;
        double r = s > 0.0 ? x / s : a / (a + b);
        if (r <= 0.0) return std::numeric_limits<double>::denorm_min();
        const double one_below = 1.0 - std::numeric_limits<double>::epsilon() / 2;
        if (r >= 1.0) return one_below;
        return r;
    }

    std::uint64_t bernoulli(double p) { return uniform01() < p ? 1 : 0; }

    // Binomial(trials, p).
    std::uint64_t binomial(std::uint64_t trials, double p) {
        if (trials == 0 || p <= 0.0) return 0;
        if (p >= 1.0) return trials;
        std::binomial_distribution<std::int64_t> dist(static_cast<std::int64_t>(trials), p);
        return static_cast<std::uint64_t>(dist(engine_));
    }

    // Uniform integer on [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
        return dist(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qmmc

#endif  // QMMC_RNG_HPP
