#include "cvsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "cvsteer/key_security.hpp"
#include "cvsteer/uncertainty.hpp"

namespace cvsteer {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_sorted(const std::vector<double>& grid, const char* what)
{
    if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
    for (double v : grid) require_finite(v, what);
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw DomainError(std::string(what) + " grid must be sorted ascending");
    }
}

} // namespace

void PreparationEnsemble::validate() const
{
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw DomainError("p_plus must lie in [0, 1]");
}

SteeringScenario SteeringScenario::vacuum_targeting(const PreparationEnsemble& ensemble, ParityOutcome outcome)
{
    return {ensemble,
            {-ensemble.alpha - ensemble.beta, 0.0},
            {-ensemble.alpha + ensemble.beta, 0.0},
            outcome};
}

void validate_channel(const ChannelModel& channel)
{
    std::visit(overloaded{
                   [](const channel::Ideal&) {},
                   [](const channel::GaussianClone& c) { require_finite(c.eta, "eta"); },
                   [](const channel::LhsMixture& m) {
                       if (m.states.empty()) throw DomainError("LhsMixture: no states");
                       if (m.states.size() != m.weights.size()) {
                           throw DomainError("LhsMixture: states and weights differ in length");
                       }
                       for (const auto& s : m.states) s.checked("LhsMixture");
                       double total = 0.0;
                       for (double w : m.weights) {
                           if (!(w >= 0.0 && w <= 1.0)) throw DomainError("LhsMixture: weight outside [0, 1]");
                           total += w;
                       }
                       if (std::fabs(total - 1.0) > 1e-12) {
                           throw DomainError("LhsMixture: weights must sum to 1");
                       }
                   },
               },
               channel);
}

std::vector<MixtureComponent> received_state(const ChannelModel& channel, ComplexAmplitude prepared)
{
    prepared.checked("received_state");
    return std::visit(overloaded{
                          [&](const channel::Ideal&) { return std::vector<MixtureComponent>{{prepared, 1.0}}; },
                          [&](const channel::GaussianClone& c) {
                              return std::vector<MixtureComponent>{{clone(prepared, c.eta).bob, 1.0}};
                          },
                          [](const channel::LhsMixture& m) {
                              std::vector<MixtureComponent> out;
                              out.reserve(m.states.size());
                              for (std::size_t i = 0; i < m.states.size(); ++i) {
                                  out.push_back({m.states[i], m.weights[i]});
                              }
                              return out;
                          },
                      },
                      channel);
}

ParityDistribution received_parity(const ChannelModel& channel, ComplexAmplitude prepared, ComplexAmplitude gamma)
{
    ParityDistribution out{0.0, 0.0};
    for (const auto& component : received_state(channel, prepared)) {
        const auto d = parity_probabilities(displace(component.state, gamma));
        out.p_even += component.weight * d.p_even;
        out.p_odd += component.weight * d.p_odd;
    }
    return out;
}

const char* to_string(SteeringVerdict verdict)
{
    switch (verdict) {
    case SteeringVerdict::WithinBounds: return "within";
    case SteeringVerdict::ViolatesUpper: return "violates_upper";
    case SteeringVerdict::ViolatesLower: return "violates_lower";
    }
    return "?";
}

SteeringVerdict steering_verdict(double sum, bool /*excluded*/)
{
    if (sum > kSteeringUpper + kVerdictTolerance) return SteeringVerdict::ViolatesUpper;
    if (sum < kSteeringLower - kVerdictTolerance) return SteeringVerdict::ViolatesLower;
    return SteeringVerdict::WithinBounds;
}

SteeringEvaluation steering_sum(const SteeringScenario& scenario, const ChannelModel& channel)
{
    const auto& e = scenario.ensemble;
    e.validate();
    scenario.gamma1.checked("steering_sum gamma1");
    scenario.gamma2.checked("steering_sum gamma2");
    validate_channel(channel);

    const double plus = received_parity(channel, e.plus_state(), scenario.gamma1).probability(scenario.outcome);
    const double minus = received_parity(channel, e.minus_state(), scenario.gamma2).probability(scenario.outcome);

    SteeringEvaluation out;
    out.sum = e.p_plus * plus + (1.0 - e.p_plus) * minus;
    out.excluded_region = in_excluded_region({e.alpha, 0.0}, {e.beta, 0.0});
    out.verdict = steering_verdict(out.sum, out.excluded_region);
    return out;
}

BoundaryPoint paper_boundary(double beta)
{
    require_finite(beta, "beta");
    if (std::fabs(beta) < 1e-6) throw DomainError("paper_boundary: singular at beta = 0");

    const double e4 = std::exp(-4.0 * beta * beta);
    const double e8 = std::exp(-8.0 * beta * beta);
    const std::complex<double> root = std::sqrt(std::complex<double>(2.0 * e8 - 3.0 * e4 + 1.0, 0.0));
    const double sqrt2 = std::sqrt(2.0);
    const double denom = 4.0 * (e4 - 1.0);
    const std::complex<double> low = (sqrt2 * root + 2.0 * e4 - 2.0) / denom;
    const std::complex<double> high = (-sqrt2 * root + 2.0 * e4 - 2.0) / denom;

    BoundaryPoint out;
    out.p_low = low.real();
    out.p_high = high.real();
    out.imag = std::fabs(low.imag());
    out.real_valued = out.imag == 0.0;
    return out;
}

std::vector<RegionRow> region_sweep(const std::vector<double>& beta_grid,
                                    const std::vector<double>& p_grid,
                                    double alpha,
                                    const ChannelModel& channel)
{
    require_sorted(beta_grid, "beta");
    require_sorted(p_grid, "p");
    require_finite(alpha, "alpha");
    validate_channel(channel);

    std::vector<RegionRow> rows(beta_grid.size() * p_grid.size());
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const PreparationEnsemble ensemble{alpha, beta_grid[i], p_grid[j]};
            const auto eval = steering_sum(SteeringScenario::vacuum_targeting(ensemble), channel);
            rows[i * p_grid.size() + j] = {beta_grid[i], p_grid[j], eval.sum, eval.verdict};
        }
    }
    return rows;
}

std::vector<VerdictCrossing> verdict_crossings(const std::vector<RegionRow>& rows)
{
    std::vector<VerdictCrossing> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if (a.beta != b.beta || a.verdict == b.verdict) continue;
        // Bound being crossed: the one adjacent to the violating side.
        const bool upper = a.verdict == SteeringVerdict::ViolatesUpper || b.verdict == SteeringVerdict::ViolatesUpper;
        const double bound = upper ? kSteeringUpper : kSteeringLower;
        double p = 0.5 * (a.p + b.p);
        if (b.sum != a.sum) {
            p = a.p + (bound - a.sum) * (b.p - a.p) / (b.sum - a.sum);
        }
        out.push_back({a.beta, p, a.verdict, b.verdict});
    }
    return out;
}

} // namespace cvsteer
