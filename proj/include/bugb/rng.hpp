#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bugb {

/// Uniform double in [0, 1) built directly from engine output bits, so the
/// produced sequence is identical across standard library implementations.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Rejection sampling on the top bits; unbiased
/// and reproducible independent of the standard library.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

/// Standard normal sampler (Marsaglia polar method) with a self-contained
/// algorithm: std::normal_distribution is implementation-defined and would
/// break byte-identical golden files across toolchains.
class GaussianSampler {
  public:
    explicit GaussianSampler(std::mt19937_64 eng) : eng_(eng) {}

    template <class... Seed>
    explicit GaussianSampler(Seed... seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed)...};
        eng_ = std::mt19937_64(seq);
    }

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01(eng_) - 1.0;
            v = 2.0 * uniform01(eng_) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Seeds an engine from (base seed, replication, stream) so each replication
/// and sub-stream is independent and order-insensitive.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t replication,
                                   std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication & 0xffffffffu),
                      static_cast<std::uint32_t>(replication >> 32), stream};
    return std::mt19937_64(seq);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Keyed standard-normal noise: the draw for key (a, b) depends only on the
/// construction parameters and the key, never on draw order. Policies that
/// pull the same node for the k-th time therefore share the same noise
/// realization (common random numbers), which tightens benchmark
/// comparisons without changing any policy's marginal distribution.
class KeyedNormal {
  public:
    KeyedNormal(std::uint64_t seed, std::uint64_t replication, std::uint32_t stream) {
        base_ = splitmix64(seed);
        base_ = splitmix64(base_ ^ replication);
        base_ = splitmix64(base_ ^ stream);
    }

    double operator()(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = splitmix64(base_ ^ splitmix64(a ^ splitmix64(b)));
        std::uint64_t ctr = 0;
        for (;;) {
            const double u = 2.0 * to01(splitmix64(s + ++ctr)) - 1.0;
            const double v = 2.0 * to01(splitmix64(s + ++ctr)) - 1.0;
            const double r = u * u + v * v;
            if (r < 1.0 && r > 0.0) return u * std::sqrt(-2.0 * std::log(r) / r);
        }
    }

  private:
    static double to01(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

    std::uint64_t base_;
};

}  // namespace bugb
