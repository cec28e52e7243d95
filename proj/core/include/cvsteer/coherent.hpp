#pragma once

// Single-mode coherent states: displacement, Fock overlaps and photon-number
// parity statistics.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "cvsteer/random.hpp"

namespace cvsteer {

/// Thrown when an input lies outside the domain of an operation
/// (non-finite amplitudes, probabilities outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Dimensionless complex label of a coherent state |mu>.
struct ComplexAmplitude {
    double re = 0.0;
    double im = 0.0;

    constexpr ComplexAmplitude() = default;
    constexpr ComplexAmplitude(double real, double imag = 0.0) : re(real), im(imag) {}

    static ComplexAmplitude from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
    std::complex<double> as_complex() const { return {re, im}; }

    bool is_finite() const;
    double norm_squared() const { return re * re + im * im; }
    double modulus() const;

    /// Throws DomainError unless both components are finite.
    const ComplexAmplitude& checked(const char* what) const;

    friend constexpr ComplexAmplitude operator+(ComplexAmplitude a, ComplexAmplitude b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr ComplexAmplitude operator-(ComplexAmplitude a) { return {-a.re, -a.im}; }
    friend constexpr ComplexAmplitude operator-(ComplexAmplitude a, ComplexAmplitude b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr ComplexAmplitude operator*(double s, ComplexAmplitude a) { return {s * a.re, s * a.im}; }
    friend constexpr bool operator==(ComplexAmplitude, ComplexAmplitude) = default;
};

enum class ParityOutcome { Even, Odd };

/// "even" / "odd".
const char* to_string(ParityOutcome outcome);

/// Outcome distribution of a (possibly displaced) parity measurement.
struct ParityDistribution {
    double p_even = 1.0;
    double p_odd = 0.0;

    double probability(ParityOutcome outcome) const
    {
        return outcome == ParityOutcome::Even ? p_even : p_odd;
    }
};

/// Partial Fock sums up to a cutoff. The sums are not renormalised; the
/// missing mass is bounded by tail_bound.
struct TruncatedParity {
    ParityDistribution distribution;
    double tail_bound = 0.0;
    int cutoff = 0;
};

/// Raised by parity_by_truncation when the requested cutoff leaves a Poisson
/// tail above the admissible bound.
class CutoffTooSmall : public std::invalid_argument {
public:
    CutoffTooSmall(int requested, int minimal);
    int requested() const noexcept { return requested_; }
    int minimal_cutoff() const noexcept { return minimal_; }

private:
    int requested_;
    int minimal_;
};

/// Largest Poisson tail mass beyond the cutoff accepted by the truncation oracle.
inline constexpr double kTruncationTailTolerance = 1e-14;

/// Returns state + gamma. The global phase of D(gamma)|state> is dropped;
/// every observable computed here depends on moduli only.
ComplexAmplitude displace(ComplexAmplitude state, ComplexAmplitude gamma);

/// |<n|mu>|^2 = exp(-|mu|^2) |mu|^(2n) / n!. Terms with n > 30 are evaluated
/// in log space.
double fock_probability(int n, ComplexAmplitude mu);

/// Closed-form parity statistics: p_even = (1 + exp(-2|mu|^2)) / 2.
ParityDistribution parity_probabilities(ComplexAmplitude mu);

/// Chernoff bound on P(N > cutoff) for N ~ Poisson(mean).
double poisson_tail_bound(double mean, int cutoff);

/// Smallest cutoff whose Chernoff tail bound is below kTruncationTailTolerance.
int minimal_truncation_cutoff(ComplexAmplitude mu);

/// Default cutoff ceil(|mu|^2 + 12 sqrt(|mu|^2 + 1) + 20).
int default_truncation_cutoff(ComplexAmplitude mu);

/// Brute-force oracle for parity_probabilities: sums fock_probability over
/// even and odd n <= cutoff. Throws CutoffTooSmall if the tail bound at the
/// requested cutoff exceeds kTruncationTailTolerance.
TruncatedParity parity_by_truncation(ComplexAmplitude mu, int cutoff);

/// Draws a photon number from Poisson(|mu|^2) and returns its parity.
ParityOutcome sample_parity(ComplexAmplitude mu, RandomStream& stream);

} // namespace cvsteer
