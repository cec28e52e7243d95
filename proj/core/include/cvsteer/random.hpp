#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace cvsteer {

/// Seed-stable random stream (SplitMix64 output function over a Weyl
/// sequence). Satisfies UniformRandomBitGenerator, but the samplers below
/// never go through <random> distributions, whose output is
/// implementation-defined.
///
/// Substreams: for a master seed s and a stream id k, for_stream(s, k) starts
/// from mix(s) ^ mix(k + 1) where mix is the SplitMix64 finaliser. Streams
/// with distinct ids are decorrelated and can be consumed in any order.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    static RandomStream for_stream(std::uint64_t master_seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// True with probability p.
    bool bernoulli(double p);

    /// Index i drawn with probability weights[i] (weights assumed to sum to 1).
    template <typename Range>
    std::size_t categorical(const Range& weights)
    {
        const double u = uniform();
        double acc = 0.0;
        std::size_t i = 0;
        std::size_t last = 0;
        for (double w : weights) {
            acc += w;
            if (w > 0.0) last = i;
            if (u < acc) return i;
            ++i;
        }
        return last;
    }

    /// Poisson(mean) variate. Sequential-search inversion for mean <= 30,
    /// transformed rejection (PTRS, Hoermann 1993) above.
    std::uint64_t poisson(double mean);

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t poisson_inversion(double mean);
    std::uint64_t poisson_ptrs(double mean);

    std::uint64_t state_;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

} // namespace cvsteer
