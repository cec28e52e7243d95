#include "cvsteer/uncertainty.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace cvsteer {

namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kDensityFloor = 1e-300;
constexpr double kEntropicSlack = 1e-4;
constexpr double kWeightTolerance = 1e-12;
constexpr double kExcludedRadius = 1e-6;

// The FFTW planner is not re-entrant.
std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

void require_normalized(const GriddedWavefunction& psi, const char* what)
{
    if (!psi.is_normalized()) {
        throw DomainError(std::string(what) + ": wavefunction is not normalised (norm = "
                          + std::to_string(psi.norm()) + ")");
    }
}

double max_probability(const ParityDistribution& d)
{
    return std::max(d.p_even, d.p_odd);
}

} // namespace

GaussianBeamProfile GaussianBeamProfile::minimum_uncertainty(double x0, double k0, double sigma_x)
{
    GaussianBeamProfile p{x0, k0, sigma_x, 0.0};
    p.validate();
    return p;
}

GaussianBeamProfile GaussianBeamProfile::with_momentum_spread(double x0, double k0, double sigma_x,
                                                              double sigma_p)
{
    if (!(sigma_x > 0.0)) throw DomainError("GaussianBeamProfile: sigma_x must be positive");
    const double excess = sigma_p * sigma_p - 1.0 / (4.0 * sigma_x * sigma_x);
    if (excess < -1e-15) {
        throw DomainError("GaussianBeamProfile: sigma_p below the minimum-uncertainty value 1/(2 sigma_x)");
    }
    GaussianBeamProfile p{x0, k0, sigma_x, std::sqrt(std::max(excess, 0.0)) / (2.0 * sigma_x)};
    p.validate();
    return p;
}

double GaussianBeamProfile::sigma_p() const
{
    return std::sqrt(1.0 / (4.0 * sigma_x * sigma_x) + 4.0 * chirp * chirp * sigma_x * sigma_x);
}

void GaussianBeamProfile::validate() const
{
    if (!(sigma_x > 0.0) || !std::isfinite(sigma_x)) {
        throw DomainError("GaussianBeamProfile: sigma_x must be positive and finite");
    }
    if (!std::isfinite(x0) || !std::isfinite(k0) || !std::isfinite(chirp)) {
        throw DomainError("GaussianBeamProfile: parameters must be finite");
    }
}

GriddedWavefunction::GriddedWavefunction(std::vector<std::complex<double>> samples, double x_min, double dx)
    : samples_(std::move(samples)), x_min_(x_min), dx_(dx)
{
    if (samples_.empty()) throw DomainError("GriddedWavefunction: no samples");
    if (!(dx_ > 0.0) || !std::isfinite(dx_) || !std::isfinite(x_min_)) {
        throw DomainError("GriddedWavefunction: grid must have finite origin and positive spacing");
    }
    for (const auto& s : samples_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw DomainError("GriddedWavefunction: non-finite sample");
        }
    }
}

double GriddedWavefunction::norm() const
{
    double acc = 0.0;
    for (const auto& s : samples_) acc += std::norm(s);
    return std::sqrt(acc * dx_);
}

double GriddedWavefunction::mean() const
{
    double mass = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double rho = std::norm(samples_[i]);
        mass += rho;
        first += rho * x(i);
    }
    return first / mass;
}

double GriddedWavefunction::variance() const
{
    const double m = mean();
    double mass = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double rho = std::norm(samples_[i]);
        const double d = x(i) - m;
        mass += rho;
        second += rho * d * d;
    }
    return second / mass;
}

bool GriddedWavefunction::is_normalized() const
{
    return std::fabs(norm() - 1.0) <= kNormTolerance;
}

bool GriddedWavefunction::covers_ten_sd() const
{
    const double m = mean();
    const double sd = std::sqrt(variance());
    return x_min_ <= m - 10.0 * sd && x_max() >= m + 10.0 * sd;
}

GriddedWavefunction GriddedWavefunction::normalized() const
{
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("GriddedWavefunction: cannot normalise a zero wavefunction");
    auto out = samples_;
    for (auto& s : out) s /= n;
    return {std::move(out), x_min_, dx_};
}

GriddedWavefunction sample_profile(const GaussianBeamProfile& profile, std::size_t points, double half_width_sd)
{
    profile.validate();
    if (points < 2) throw DomainError("sample_profile: need at least two grid points");
    const double half = half_width_sd * profile.sigma_x;
    const double x_min = profile.x0 - half;
    const double dx = 2.0 * half / static_cast<double>(points);
    const double amp = std::pow(2.0 * std::numbers::pi * profile.sigma_x * profile.sigma_x, -0.25);
    const double inv4s2 = 1.0 / (4.0 * profile.sigma_x * profile.sigma_x);

    std::vector<std::complex<double>> samples(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = x_min + static_cast<double>(i) * dx;
        const double d = x - profile.x0;
        const double phase = profile.chirp * d * d + profile.k0 * x;
        samples[i] = std::polar(amp * std::exp(-d * d * inv4s2), phase);
    }
    return {std::move(samples), x_min, dx};
}

double variance_product(const GaussianBeamProfile& profile)
{
    profile.validate();
    const double s2 = profile.sigma_x * profile.sigma_x;
    return 0.25 + 4.0 * profile.chirp * profile.chirp * s2 * s2;
}

double variance_product_dimensional(const GaussianBeamProfile& profile, double lambda_bar)
{
    return variance_product(profile) * lambda_bar * lambda_bar;
}

GriddedWavefunction fourier_to_wavevector(const GriddedWavefunction& psi)
{
    require_normalized(psi, "fourier_to_wavevector");
    const std::size_t n = psi.size();
    const double dx = psi.dx();
    const double x0 = psi.x_min();
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    const double k0 = -std::numbers::pi / dx;

    // sum_j psi_j e^{-i k_m x_j}
    //   = e^{-i k0 x0} e^{-i m dk x0} sum_j [psi_j e^{-i k0 j dx}] e^{-2 pi i m j / n}
    std::vector<std::complex<double>> buffer(n);
    for (std::size_t j = 0; j < n; ++j) {
        buffer[j] = psi.samples()[j] * std::polar(1.0, -k0 * static_cast<double>(j) * dx);
    }

    auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    const double scale = dx / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t m = 0; m < n; ++m) {
        const double k = k0 + static_cast<double>(m) * dk;
        buffer[m] *= scale * std::polar(1.0, -k * x0);
    }
    return {std::move(buffer), k0, dk};
}

double differential_entropy(const GriddedWavefunction& psi)
{
    require_normalized(psi, "differential_entropy");
    double acc = 0.0;
    for (const auto& s : psi.samples()) {
        const double rho = std::norm(s);
        if (rho >= kDensityFloor) acc -= rho * std::log(rho);
    }
    return acc * psi.dx();
}

double entropic_bound()
{
    return std::log(std::numbers::pi * std::numbers::e);
}

EntropicCheck entropic_sum_check(const GriddedWavefunction& psi)
{
    EntropicCheck out;
    out.h_x = differential_entropy(psi);
    out.h_p = differential_entropy(fourier_to_wavevector(psi));
    out.sum = out.h_x + out.h_p;
    out.bound = entropic_bound();
    out.satisfied = out.sum >= out.bound - kEntropicSlack;
    return out;
}

bool in_excluded_region(ComplexAmplitude state, ComplexAmplitude beta)
{
    return state.modulus() < kExcludedRadius && beta.modulus() < kExcludedRadius;
}

FineGrainedResult fine_grained_sum(const FineGrainedInput& input_plus, const FineGrainedInput& input_minus)
{
    for (const auto* in : {&input_plus, &input_minus}) {
        in->state.checked("fine_grained_sum");
        in->beta.checked("fine_grained_sum");
        if (!(in->p_beta >= 0.0 && in->p_beta <= 1.0)) {
            throw DomainError("fine_grained_sum: p_beta must lie in [0, 1]");
        }
    }
    if (std::fabs(input_plus.p_beta + input_minus.p_beta - 1.0) > kWeightTolerance) {
        throw DomainError("fine_grained_sum: P_beta + P_-beta must equal 1");
    }
    if (!(input_plus.state == input_minus.state)) {
        throw DomainError("fine_grained_sum: both displacements must act on the same state");
    }
    if ((input_plus.beta + input_minus.beta).modulus() > kWeightTolerance) {
        throw DomainError("fine_grained_sum: displacements must be beta and -beta");
    }

    auto branch = [](const FineGrainedInput& in) {
        const auto dist = parity_probabilities(displace(in.state, -in.beta));
        return in.p_beta * dist.probability(in.outcome);
    };
    return {branch(input_plus) + branch(input_minus), in_excluded_region(input_plus.state, input_plus.beta)};
}

double min_entropy_bound()
{
    return -2.0 * std::log2(0.75);
}

MinEntropyCheck min_entropy_bound_check(ComplexAmplitude state, ComplexAmplitude beta)
{
    state.checked("min_entropy_bound_check");
    beta.checked("min_entropy_bound_check");
    MinEntropyCheck out;
    out.h_inf_plus = -std::log2(max_probability(parity_probabilities(displace(state, -beta))));
    out.h_inf_minus = -std::log2(max_probability(parity_probabilities(displace(state, beta))));
    out.sum = out.h_inf_plus + out.h_inf_minus;
    out.bound = min_entropy_bound();
    out.satisfied = out.sum >= out.bound - kWeightTolerance;
    out.excluded_region = in_excluded_region(state, beta);
    return out;
}

} // namespace cvsteer
