#include "cvsteer/random.hpp"

#include <cmath>
#include <stdexcept>

namespace cvsteer {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kInversionLimit = 30.0;
} // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream RandomStream::for_stream(std::uint64_t master_seed, std::uint64_t stream_id)
{
    return RandomStream(mix64(master_seed) ^ mix64(stream_id + 1));
}

RandomStream::result_type RandomStream::operator()()
{
    state_ += kGolden;
    return mix64(state_);
}

double RandomStream::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

bool RandomStream::bernoulli(double p)
{
    return uniform() < p;
}

std::uint64_t RandomStream::poisson(double mean)
{
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::domain_error("poisson: mean must be finite and non-negative");
    }
    if (mean == 0.0) return 0;
    return mean <= kInversionLimit ? poisson_inversion(mean) : poisson_ptrs(mean);
}

std::uint64_t RandomStream::poisson_inversion(double mean)
{
    const double u = uniform();
    double term = std::exp(-mean);
    double cdf = term;
    std::uint64_t k = 0;
    // The cap only triggers if u lands in the last ~1e-16 of mass.
    while (u >= cdf && k < 1000) {
        ++k;
        term *= mean / static_cast<double>(k);
        cdf += term;
    }
    return k;
}

std::uint64_t RandomStream::poisson_ptrs(double mean)
{
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

} // namespace cvsteer
