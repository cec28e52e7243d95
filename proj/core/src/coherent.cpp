#include "cvsteer/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvsteer {

namespace {
constexpr int kLogSpaceThreshold = 30;
} // namespace

bool ComplexAmplitude::is_finite() const
{
    return std::isfinite(re) && std::isfinite(im);
}

double ComplexAmplitude::modulus() const
{
    return std::hypot(re, im);
}

const ComplexAmplitude& ComplexAmplitude::checked(const char* what) const
{
    if (!is_finite()) {
        throw DomainError(std::string(what) + ": amplitude must be finite");
    }
    return *this;
}

const char* to_string(ParityOutcome outcome)
{
    return outcome == ParityOutcome::Even ? "even" : "odd";
}

CutoffTooSmall::CutoffTooSmall(int requested, int minimal)
    : std::invalid_argument("parity_by_truncation: cutoff " + std::to_string(requested)
                            + " leaves too much Poisson tail; minimal admissible cutoff is "
                            + std::to_string(minimal)),
      requested_(requested),
      minimal_(minimal)
{
}

ComplexAmplitude displace(ComplexAmplitude state, ComplexAmplitude gamma)
{
    state.checked("displace");
    gamma.checked("displace");
    return state + gamma;
}

double fock_probability(int n, ComplexAmplitude mu)
{
    mu.checked("fock_probability");
    if (n < 0) throw DomainError("fock_probability: n must be non-negative");
    const double mean = mu.norm_squared();
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    if (n > kLogSpaceThreshold) {
        return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    }
    double term = std::exp(-mean);
    for (int k = 1; k <= n; ++k) term *= mean / k;
    return term;
}

ParityDistribution parity_probabilities(ComplexAmplitude mu)
{
    mu.checked("parity_probabilities");
    const double decay = std::exp(-2.0 * mu.norm_squared());
    return {0.5 * (1.0 + decay), 0.5 * (1.0 - decay)};
}

double poisson_tail_bound(double mean, int cutoff)
{
    if (mean == 0.0) return 0.0;
    // P(N >= k) <= exp(-m) (e m / k)^k for k > m.
    const double k = cutoff + 1.0;
    if (k <= mean) return 1.0;
    const double log_bound = -mean + k * (1.0 + std::log(mean) - std::log(k));
    return std::min(1.0, std::exp(log_bound));
}

int minimal_truncation_cutoff(ComplexAmplitude mu)
{
    const double mean = mu.checked("minimal_truncation_cutoff").norm_squared();
    int cutoff = 0;
    while (poisson_tail_bound(mean, cutoff) >= kTruncationTailTolerance) ++cutoff;
    return cutoff;
}

int default_truncation_cutoff(ComplexAmplitude mu)
{
    const double mean = mu.checked("default_truncation_cutoff").norm_squared();
    return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean + 1.0) + 20.0));
}

TruncatedParity parity_by_truncation(ComplexAmplitude mu, int cutoff)
{
    mu.checked("parity_by_truncation");
    if (cutoff < 1) throw DomainError("parity_by_truncation: cutoff must be positive");
    const double tail = poisson_tail_bound(mu.norm_squared(), cutoff);
    if (tail >= kTruncationTailTolerance) {
        throw CutoffTooSmall(cutoff, minimal_truncation_cutoff(mu));
    }
    TruncatedParity out;
    out.cutoff = cutoff;
    out.tail_bound = tail;
    out.distribution = {0.0, 0.0};
    for (int n = 0; n <= cutoff; ++n) {
        const double p = fock_probability(n, mu);
        (n % 2 == 0 ? out.distribution.p_even : out.distribution.p_odd) += p;
    }
    return out;
}

ParityOutcome sample_parity(ComplexAmplitude mu, RandomStream& stream)
{
    mu.checked("sample_parity");
    const std::uint64_t n = stream.poisson(mu.norm_squared());
    return (n & 1U) ? ParityOutcome::Odd : ParityOutcome::Even;
}

} // namespace cvsteer
