#pragma once

// Phase-space uncertainty relations for Gaussian beam profiles and for
// displaced-parity statistics of coherent states.
//
// Units: differential entropies are in nats (the entropic bound is ln(pi e));
// min-entropies are in bits.

#include <complex>
#include <cstddef>
#include <vector>

#include "cvsteer/coherent.hpp"

namespace cvsteer {

/// Gaussian profile in the dimensionless variables X = sqrt(2) x / s and
/// P = s p / (sqrt(2) lambda_bar), where s is the beam length scale.
///
/// The wavefunction is
///   psi(X) ~ exp(-(X - x0)^2 / (4 sigma_x^2) + i chirp (X - x0)^2 + i k0 X),
/// so sigma_p^2 = 1 / (4 sigma_x^2) + 4 chirp^2 sigma_x^2. chirp == 0 is the
/// minimum-uncertainty family.
struct GaussianBeamProfile {
    double x0 = 0.0;
    double k0 = 0.0;
    double sigma_x = 1.0;
    double chirp = 0.0;

    static GaussianBeamProfile minimum_uncertainty(double x0, double k0, double sigma_x);

    /// Chirped profile with the requested momentum spread. Throws DomainError
    /// if sigma_p < 1 / (2 sigma_x).
    static GaussianBeamProfile with_momentum_spread(double x0, double k0, double sigma_x, double sigma_p);

    bool is_minimum_uncertainty() const { return chirp == 0.0; }
    double sigma_p() const;
    void validate() const;
};

/// Uniformly sampled complex wavefunction.
class GriddedWavefunction {
public:
    GriddedWavefunction(std::vector<std::complex<double>> samples, double x_min, double dx);

    const std::vector<std::complex<double>>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double x_min() const { return x_min_; }
    double dx() const { return dx_; }
    double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx_; }
    double x_max() const { return x(size() - 1); }

    /// Riemann-sum L2 norm.
    double norm() const;
    double mean() const;
    double variance() const;

    /// |norm - 1| <= 1e-8.
    bool is_normalized() const;
    /// Grid spans mean +- 10 standard deviations of |psi|^2.
    bool covers_ten_sd() const;

    GriddedWavefunction normalized() const;

private:
    std::vector<std::complex<double>> samples_;
    double x_min_;
    double dx_;
};

/// Number of points and half-width (in sigma_x) of the standard sampling grid.
inline constexpr std::size_t kStandardGridPoints = 4096;
inline constexpr double kStandardGridHalfWidth = 12.0;

/// Samples the profile on `points` nodes spanning x0 +- half_width_sd * sigma_x.
GriddedWavefunction sample_profile(const GaussianBeamProfile& profile,
                                   std::size_t points = kStandardGridPoints,
                                   double half_width_sd = kStandardGridHalfWidth);

/// (Delta X^2)(Delta P^2); exactly 1/4 for the minimum-uncertainty family.
double variance_product(const GaussianBeamProfile& profile);

/// Dimensional counterpart (Delta x^2)(Delta p^2) = lambda_bar^2 times the
/// dimensionless product; the bound is lambda_bar^2 / 4.
double variance_product_dimensional(const GaussianBeamProfile& profile, double lambda_bar);

/// Psi(k) = (2 pi)^(-1/2) int psi(x) exp(-i k x) dx on the reciprocal grid
/// k_m = -pi/dx + m * 2 pi / (N dx). Throws DomainError unless the input is
/// normalised.
GriddedWavefunction fourier_to_wavevector(const GriddedWavefunction& psi);

/// -int |psi|^2 ln |psi|^2 dx in nats; densities below 1e-300 contribute 0.
double differential_entropy(const GriddedWavefunction& psi);

struct EntropicCheck {
    double h_x = 0.0;
    double h_p = 0.0;
    double sum = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

/// ln(pi e).
double entropic_bound();

/// H(X) + H(P) against ln(pi e), accepted with slack 1e-4.
EntropicCheck entropic_sum_check(const GriddedWavefunction& psi);

struct FineGrainedInput {
    ComplexAmplitude state;
    ComplexAmplitude beta;
    double p_beta = 0.5;
    ParityOutcome outcome = ParityOutcome::Even;
};

struct FineGrainedResult {
    double value = 0.0;
    bool excluded_region = false;
};

/// |a| < 1e-6 and |b| < 1e-6 jointly.
bool in_excluded_region(ComplexAmplitude state, ComplexAmplitude beta);

/// P_beta P(b_beta) + P_-beta P(b_-beta). Measuring Pi(+-beta) on |state> is
/// a bare parity measurement of |state -+ beta>. Throws DomainError if the
/// two weights do not sum to 1, or the inputs do not describe +beta and -beta
/// on the same state.
FineGrainedResult fine_grained_sum(const FineGrainedInput& input_plus, const FineGrainedInput& input_minus);

struct MinEntropyCheck {
    double h_inf_plus = 0.0;  // bits
    double h_inf_minus = 0.0; // bits
    double sum = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    bool excluded_region = false;
};

/// -2 log2(3/4).
double min_entropy_bound();

/// H_inf(beta) + H_inf(-beta) of the displaced parity measurements on |state>.
/// The verdict is reported, not enforced.
MinEntropyCheck min_entropy_bound_check(ComplexAmplitude state, ComplexAmplitude beta);

} // namespace cvsteer
