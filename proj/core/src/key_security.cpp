#include "cvsteer/key_security.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "cvsteer/uncertainty.hpp"

namespace cvsteer {

namespace {

constexpr double kScanStep = 1e-3;
constexpr double kGoldenTolerance = 1e-8;
constexpr double kFeasibilitySlack = 1e-12;

double sign_of(double eta)
{
    return eta > 0.0 ? 1.0 : (eta < 0.0 ? -1.0 : 0.0);
}

// cos|eta| is taken as sin(pi/2 - |eta|) so that both factors come from the
// same libm call: at eta = pi/4 they are bit-identical and P01 == Q01 exactly.
double bob_factor(double eta)
{
    return std::sin(std::numbers::pi / 2.0 - std::fabs(eta));
}

double eve_factor(double eta)
{
    return sign_of(eta) * std::sin(std::fabs(eta));
}

void require_inputs(double alpha, double beta, double eta)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(eta)) {
        throw DomainError("key_security: alpha, beta and eta must be finite");
    }
    if (in_excluded_region({alpha, 0.0}, {beta, 0.0})) {
        throw DomainError("key_security: alpha and beta both vanish (excluded region)");
    }
}

double average_over_preparations(double alpha, double beta, double eta,
                                 double (*delta)(double, double, double, int),
                                 double (*odd)(double))
{
    require_inputs(alpha, beta, eta);
    return 0.5 * odd(delta(alpha, beta, eta, +1)) + 0.5 * odd(delta(alpha, beta, eta, -1));
}

using Objective = std::function<double(double)>;

EveOptimum maximise(double alpha, double beta, double lo, double hi, const Objective& objective)
{
    if (!(lo >= 0.0) || !(hi <= std::numbers::pi / 2.0) || !(lo < hi)) {
        throw DomainError("optimize_eve: need 0 <= eta_lo < eta_hi <= pi/2");
    }

    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / kScanStep));
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i < steps; ++i) grid[i] = lo + static_cast<double>(i) * kScanStep;
    grid[steps] = hi;

    std::size_t best = 0;
    double best_value = objective(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = objective(grid[i]);
        if (v > best_value) {
            best = i;
            best_value = v;
        }
    }
    if (!std::isfinite(best_value)) throw DomainError("optimize_eve: no feasible eta in the interval");

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kGoldenTolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double refined = 0.5 * (a + b);
    const double refined_value = objective(refined);

    // The refined point only replaces the grid node on a strict improvement,
    // so maxima sitting on an interval endpoint are returned exactly.
    double eta_star = grid[best];
    if (refined_value > best_value) eta_star = refined;
    else if (refined_value == best_value && refined < eta_star) eta_star = refined;

    const auto point = key_rate_point(alpha, beta, eta_star);
    return {eta_star, point.i_ae, point.rate};
}

} // namespace

CloneOutput clone(ComplexAmplitude input, double eta)
{
    input.checked("clone");
    if (!std::isfinite(eta)) throw DomainError("clone: eta must be finite");
    if (eta == 0.0) return {input, {0.0, 0.0}};
    return {bob_factor(eta) * input, eve_factor(eta) * input};
}

double odd_probability(double delta)
{
    return -0.5 * std::expm1(-2.0 * delta * delta);
}

double printed_odd_probability(double delta)
{
    const double d2 = delta * delta;
    return std::sinh(d2) * std::exp(-0.5 * d2);
}

double bob_delta(double alpha, double beta, double eta, int sign)
{
    return (alpha + sign * beta) * (bob_factor(eta) - 1.0);
}

double eve_delta(double alpha, double beta, double eta, int sign)
{
    return (alpha + sign * beta) * (eve_factor(eta) - 1.0);
}

double bob_error(double alpha, double beta, double eta)
{
    return average_over_preparations(alpha, beta, eta, bob_delta, odd_probability);
}

double eve_error(double alpha, double beta, double eta)
{
    return average_over_preparations(alpha, beta, eta, eve_delta, odd_probability);
}

double bob_error_printed(double alpha, double beta, double eta)
{
    return average_over_preparations(alpha, beta, eta, bob_delta, printed_odd_probability);
}

double eve_error_printed(double alpha, double beta, double eta)
{
    return average_over_preparations(alpha, beta, eta, eve_delta, printed_odd_probability);
}

ErrorPair error_pair(double alpha, double beta, double eta)
{
    return {bob_error(alpha, beta, eta), eve_error(alpha, beta, eta)};
}

double binary_entropy(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

KeyRatePoint key_rate_point(double alpha, double beta, double eta)
{
    KeyRatePoint out;
    out.eta = eta;
    out.p01 = bob_error(alpha, beta, eta);
    out.q01 = eve_error(alpha, beta, eta);
    out.i_ab = 1.0 - binary_entropy(out.p01);
    out.i_ae = 1.0 - binary_entropy(out.q01);
    out.rate = out.i_ab - out.i_ae;
    return out;
}

std::vector<KeyRatePoint> key_rate_curve(double alpha, double beta, const std::vector<double>& eta_grid)
{
    if (eta_grid.empty()) throw DomainError("key_rate_curve: empty eta grid");
    if (!std::is_sorted(eta_grid.begin(), eta_grid.end())) {
        throw DomainError("key_rate_curve: eta grid must be sorted ascending");
    }
    std::vector<KeyRatePoint> out;
    out.reserve(eta_grid.size());
    for (double eta : eta_grid) out.push_back(key_rate_point(alpha, beta, eta));
    return out;
}

EveOptimum optimize_eve(double alpha, double beta, double eta_lo, double eta_hi)
{
    require_inputs(alpha, beta, eta_lo);
    return maximise(alpha, beta, eta_lo, eta_hi,
                    [&](double eta) { return 1.0 - binary_entropy(eve_error(alpha, beta, eta)); });
}

EveOptimum optimize_eve_symmetric(double alpha, double beta, double eta_lo, double eta_hi)
{
    require_inputs(alpha, beta, eta_lo);
    return maximise(alpha, beta, eta_lo, eta_hi, [&](double eta) {
        const auto e = error_pair(alpha, beta, eta);
        if (e.p01 > e.q01 + kFeasibilitySlack) return -std::numeric_limits<double>::infinity();
        return 1.0 - binary_entropy(e.q01);
    });
}

} // namespace cvsteer
