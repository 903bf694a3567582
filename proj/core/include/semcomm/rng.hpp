#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace semcomm {

/// splitmix64 finalizer; used to expand one user-facing seed into
/// well-separated per-trial / per-module streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-trial stream seed: hash of (base xor stream index). Trials seeded
/// this way are independent of execution order and of worker count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ mix64(stream));
}

/// mt19937_64 wrapped with explicit variate mappings. std::
/// distributions are implementation-defined, so every draw here is
/// spelled out; identical seeds give identical streams on any platform,
/// which the CSV byte-reproducibility contract depends on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Lemire-style rejection; unbiased.
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold) return r % n;
        }
    }

    double exponential(double mean) { return -mean * std::log1p(-next_double()); }

    /// Index drawn from an (unnormalized is fine) weight vector by CDF walk.
    std::size_t discrete(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) return i;
        }
        return weights.size() - 1;  // u landed on the total due to rounding
    }

    /// Knuth multiplication method; fine for the desk-scale rates used here.
    long poisson(double rate) {
        if (rate <= 0.0) return 0;
        const double limit = std::exp(-rate);
        long k = 0;
        double prod = next_double();
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }

    /// Symmetric Dirichlet(1) row: normalized iid exponentials.
    std::vector<double> dirichlet(std::size_t k) {
        std::vector<double> v(k);
        double total = 0.0;
        for (auto& x : v) {
            x = exponential(1.0);
            total += x;
        }
        for (auto& x : v) x /= total;
        return v;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace semcomm
