#include "cvsteer/uncertainty.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cvsteer;

namespace {

constexpr double kLnPiE = 2.1447298858494002;

double analytic_gaussian_entropy(double sd)
{
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * sd * sd);
}

GriddedWavefunction two_gaussians(double separation)
{
    constexpr std::size_t n = 8192;
    const double x_min = -40.0;
    const double dx = 80.0 / n;
    std::vector<std::complex<double>> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_min + i * dx;
        const double a = x - separation / 2;
        const double b = x + separation / 2;
        s[i] = std::exp(-a * a / 4.0) + std::exp(-b * b / 4.0);
    }
    return GriddedWavefunction(std::move(s), x_min, dx).normalized();
}

} // namespace

TEST(GaussianBeamProfile, MomentumSpread)
{
    const auto p = GaussianBeamProfile::minimum_uncertainty(0, 0, 0.5);
    EXPECT_DOUBLE_EQ(p.sigma_p(), 1.0);
    EXPECT_TRUE(p.is_minimum_uncertainty());
    const auto q = GaussianBeamProfile::with_momentum_spread(0, 0, 0.5, 2.0);
    EXPECT_FALSE(q.is_minimum_uncertainty());
    EXPECT_NEAR(q.sigma_p(), 2.0, 1e-14);
    EXPECT_THROW(GaussianBeamProfile::with_momentum_spread(0, 0, 0.5, 0.9), DomainError);
    EXPECT_THROW(GaussianBeamProfile::minimum_uncertainty(0, 0, 0.0), DomainError);
}

TEST(VarianceProduct, MinimumUncertaintyIsExactlyAQuarter)
{
    for (double s : {0.1, 0.25, 1.0, 3.7, 40.0}) {
        EXPECT_EQ(variance_product(GaussianBeamProfile::minimum_uncertainty(1.0, -2.0, s)), 0.25);
    }
}

TEST(VarianceProduct, DoubledMomentumSpreadQuadruples)
{
    const double s = 0.8;
    const auto p = GaussianBeamProfile::with_momentum_spread(0, 0, s, 2.0 / (2.0 * s));
    EXPECT_NEAR(variance_product(p), 1.0, 1e-14);
}

TEST(VarianceProduct, DimensionalBoundScalesWithLambdaBar)
{
    const double lambda_bar = 632.8e-9 / (2 * std::numbers::pi);
    const auto p = GaussianBeamProfile::minimum_uncertainty(0, 0, 1.3);
    EXPECT_NEAR(variance_product_dimensional(p, lambda_bar), lambda_bar * lambda_bar / 4, 1e-30);
}

TEST(VarianceProduct, AgreesWithGridMoments)
{
    for (double chirp : {0.0, 0.1, 0.4}) {
        const GaussianBeamProfile p{0.3, 1.1, 0.9, chirp};
        const auto psi = sample_profile(p);
        const auto phi = fourier_to_wavevector(psi);
        EXPECT_NEAR(psi.variance() * phi.variance(), variance_product(p), 1e-8) << chirp;
        EXPECT_NEAR(phi.mean(), p.k0, 1e-8);
    }
}

TEST(Fourier, GaussianMapsToGaussianOfReciprocalWidth)
{
    for (double s : {0.5, 1.0, 2.0}) {
        const auto psi = sample_profile(GaussianBeamProfile::minimum_uncertainty(0, 0, s));
        const auto phi = fourier_to_wavevector(psi);
        const double sk = 1.0 / (2.0 * s);
        const double amp = std::pow(2.0 * std::numbers::pi * sk * sk, -0.25);
        double worst = 0.0;
        for (std::size_t m = 0; m < phi.size(); ++m) {
            const double k = phi.x(m);
            worst = std::max(worst, std::fabs(std::abs(phi.samples()[m]) - amp * std::exp(-k * k / (4 * sk * sk))));
        }
        EXPECT_LT(worst, 1e-6) << s;
        EXPECT_NEAR(std::sqrt(phi.variance()), sk, 1e-6);
    }
}

TEST(Fourier, ParsevalAndNormalisation)
{
    for (double s : {0.25, 1.0, 4.0}) {
        const auto psi = sample_profile(GaussianBeamProfile{1.0, -2.0, s, 0.2});
        const auto phi = fourier_to_wavevector(psi);
        EXPECT_NEAR(phi.norm(), psi.norm(), 1e-8);
        EXPECT_TRUE(phi.is_normalized());
    }
    const auto cat = two_gaussians(6.0);
    EXPECT_NEAR(fourier_to_wavevector(cat).norm(), cat.norm(), 1e-8);
}

TEST(Fourier, TranslationLeavesModulusUnchanged)
{
    const auto a = fourier_to_wavevector(sample_profile(GaussianBeamProfile::minimum_uncertainty(0.0, 0.7, 1.0)));
    const auto b = fourier_to_wavevector(sample_profile(GaussianBeamProfile::minimum_uncertainty(2.5, 0.7, 1.0)));
    ASSERT_EQ(a.size(), b.size());
    EXPECT_DOUBLE_EQ(a.x_min(), b.x_min());
    for (std::size_t m = 0; m < a.size(); ++m) {
        ASSERT_NEAR(std::norm(a.samples()[m]), std::norm(b.samples()[m]), 1e-12);
    }
}

TEST(Fourier, DoubleTransformReflects)
{
    const auto psi = sample_profile(GaussianBeamProfile{0.0, 1.5, 0.7, 0.3});
    const auto twice = fourier_to_wavevector(fourier_to_wavevector(psi));
    const std::size_t n = psi.size();
    EXPECT_NEAR(twice.x_min(), psi.x_min(), 1e-12);
    EXPECT_NEAR(twice.dx(), psi.dx(), 1e-15);
    for (std::size_t j = 0; j < n; ++j) {
        ASSERT_NEAR(std::norm(twice.samples()[j]), std::norm(psi.samples()[(n - j) % n]), 1e-8) << j;
    }
}

TEST(Fourier, RejectsUnnormalisedInput)
{
    std::vector<std::complex<double>> s(64, {1.0, 0.0});
    EXPECT_THROW(fourier_to_wavevector(GriddedWavefunction(s, 0.0, 1.0)), DomainError);
}

TEST(DifferentialEntropy, GaussianValues)
{
    // |psi|^2 has standard deviation sigma_x.
    const auto unit = sample_profile(GaussianBeamProfile::minimum_uncertainty(0, 0, 1.0));
    EXPECT_NEAR(differential_entropy(unit), 1.4189385332046727, 1e-4);
    for (double s : {0.5, 2.0}) {
        const auto psi = sample_profile(GaussianBeamProfile::minimum_uncertainty(0.4, 0, s));
        EXPECT_NEAR(differential_entropy(psi), analytic_gaussian_entropy(s), 1e-4) << s;
    }
}

TEST(DifferentialEntropy, StableUnderGridRefinement)
{
    const auto p = GaussianBeamProfile::minimum_uncertainty(0, 0, 1.3);
    const double coarse = differential_entropy(sample_profile(p, 4096));
    const double fine = differential_entropy(sample_profile(p, 8192));
    EXPECT_LT(std::fabs(coarse - fine), 1e-6);
}

TEST(EntropicSum, MinimumUncertaintySaturates)
{
    const auto r = entropic_sum_check(sample_profile(GaussianBeamProfile::minimum_uncertainty(0, 0, 1.0)));
    EXPECT_NEAR(r.bound, kLnPiE, 1e-15);
    EXPECT_NEAR(r.sum, kLnPiE, 1e-4);
    EXPECT_TRUE(r.satisfied);

    const auto wide = entropic_sum_check(sample_profile(GaussianBeamProfile::minimum_uncertainty(0, 0, 2.0)));
    EXPECT_NEAR(wide.sum, kLnPiE, 1e-4);
}

TEST(EntropicSum, SaturationAcrossTheFamily)
{
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (double x0 : {-3.0, 0.0, 3.0}) {
            for (double k0 : {-3.0, 0.0, 3.0}) {
                const auto psi = sample_profile(GaussianBeamProfile::minimum_uncertainty(x0, k0, s));
                ASSERT_TRUE(psi.covers_ten_sd());
                const auto r = entropic_sum_check(psi);
                EXPECT_NEAR(r.sum, kLnPiE, 1e-4) << s << " " << x0 << " " << k0;
            }
        }
    }
}

TEST(EntropicSum, CatStateStrictlyExceedsBound)
{
    const auto cat = two_gaussians(6.0);
    ASSERT_TRUE(cat.covers_ten_sd());
    const auto r = entropic_sum_check(cat);
    EXPECT_TRUE(r.satisfied);
    EXPECT_GT(r.sum, r.bound + 1e-3);
}

TEST(EntropicSum, ImpliesHeisenbergOnGaussians)
{
    for (double s : {0.3, 1.0, 2.5}) {
        for (double chirp : {0.0, 0.05, 0.2, 0.6}) {
            const GaussianBeamProfile p{0.0, 0.0, s, chirp};
            const auto r = entropic_sum_check(sample_profile(p));
            if (r.satisfied) EXPECT_GE(variance_product(p), 0.25);
            // The chirped entropy sum is ln(pi e) + ln(2 sigma_x sigma_p).
            EXPECT_NEAR(r.sum, kLnPiE + std::log(2.0 * s * p.sigma_p()), 1e-4);
        }
    }
}

TEST(FineGrained, VacuumAtOriginIsExcluded)
{
    const FineGrainedInput plus{{0, 0}, {0, 0}, 0.5, ParityOutcome::Even};
    const FineGrainedInput minus{{0, 0}, {0, 0}, 0.5, ParityOutcome::Even};
    const auto r = fine_grained_sum(plus, minus);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_TRUE(r.excluded_region);
}

TEST(FineGrained, DisplacedVacuum)
{
    const FineGrainedInput plus{{0, 0}, {2, 0}, 0.5, ParityOutcome::Even};
    const FineGrainedInput minus{{0, 0}, {-2, 0}, 0.5, ParityOutcome::Even};
    const auto even = fine_grained_sum(plus, minus);
    EXPECT_NEAR(even.value, 0.50016773131395126, 1e-15);
    EXPECT_FALSE(even.excluded_region);

    auto plus_odd = plus;
    auto minus_odd = minus;
    plus_odd.outcome = minus_odd.outcome = ParityOutcome::Odd;
    EXPECT_NEAR(fine_grained_sum(plus_odd, minus_odd).value, 1.0 - even.value, 1e-15);
}

TEST(FineGrained, ComplementProperty)
{
    RandomStream rng(3);
    for (int i = 0; i < 500; ++i) {
        const ComplexAmplitude state{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3};
        const ComplexAmplitude beta{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3};
        const double p = rng.uniform();
        const FineGrainedInput pe{state, beta, p, ParityOutcome::Even};
        const FineGrainedInput me{state, -beta, 1 - p, ParityOutcome::Even};
        auto po = pe;
        auto mo = me;
        po.outcome = mo.outcome = ParityOutcome::Odd;
        EXPECT_NEAR(fine_grained_sum(pe, me).value + fine_grained_sum(po, mo).value, 1.0, 1e-12);
    }
}

TEST(FineGrained, RejectsInconsistentInputs)
{
    const FineGrainedInput plus{{1, 0}, {1, 0}, 0.6, ParityOutcome::Even};
    EXPECT_THROW(fine_grained_sum(plus, {{1, 0}, {-1, 0}, 0.6, ParityOutcome::Even}), DomainError);
    EXPECT_THROW(fine_grained_sum(plus, {{1, 0}, {1, 0}, 0.4, ParityOutcome::Even}), DomainError);
    EXPECT_THROW(fine_grained_sum(plus, {{0, 0}, {-1, 0}, 0.4, ParityOutcome::Even}), DomainError);
}

TEST(MinEntropy, SaturatesAtThreeQuarters)
{
    // e^{-2|mu|^2} = 1/2 makes both displaced distributions (3/4, 1/4).
    const double b = std::sqrt(std::log(2.0) / 2.0);
    const auto r = min_entropy_bound_check({0, 0}, {b, 0});
    EXPECT_NEAR(r.bound, 0.83007499855768764, 1e-15);
    EXPECT_NEAR(r.sum, r.bound, 1e-12);
    EXPECT_TRUE(r.satisfied);
}

TEST(MinEntropy, OriginIsExcludedAndBelowBound)
{
    const auto r = min_entropy_bound_check({0, 0}, {0, 0});
    EXPECT_EQ(r.sum, 0.0);
    EXPECT_FALSE(r.satisfied);
    EXPECT_TRUE(r.excluded_region);
}

TEST(MinEntropy, UnitDisplacementClosedForm)
{
    const auto r = min_entropy_bound_check({0, 0}, {1, 0});
    const double h = -std::log2((1 + std::exp(-2.0)) / 2);
    EXPECT_NEAR(r.h_inf_plus, h, 1e-15);
    EXPECT_NEAR(r.h_inf_minus, h, 1e-15);
    EXPECT_EQ(r.satisfied, r.sum >= r.bound - 1e-12);
}
