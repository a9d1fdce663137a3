#pragma once

#include <cstdint>

namespace timebin {

/// SplitMix64 finalizer; bijective 64-bit scrambler.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// xoshiro256++ seeded from a SplitMix64 walk over a scrambled (seed, stream)
/// pair. Every stream's state is a pure function of (seed, stream), which
/// makes per-frame randomness independent of worker partitioning.
class FrameRng {
public:
    using result_type = std::uint64_t;

    FrameRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019ull);
        for (auto& si : s_) {
            x += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            si = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Poisson by CDF inversion; consumes exactly one uniform per call.
    /// exp_neg_lambda = exp(-lambda) is passed in precomputed because the
    /// means are fixed over a run. Intended for the small per-pulse photon
    /// numbers of this model.
    int poisson(double lambda, double exp_neg_lambda) {
        const double u = uniform();
        double p = exp_neg_lambda;
        double cum = p;
        int k = 0;
        while (u >= cum && k < 4096) {
            ++k;
            p *= lambda / k;
            cum += p;
        }
        return k;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace timebin
