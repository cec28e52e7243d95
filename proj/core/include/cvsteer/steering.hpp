#pragma once

// Temporal steering game: Alice prepares |alpha +- beta>, the system crosses
// a channel, Bob applies the announced displacement and measures parity.
// Steering is certified when the weighted success sum leaves [1/4, 3/4].

#include <optional>
#include <variant>
#include <vector>

#include "cvsteer/coherent.hpp"

namespace cvsteer {

/// Alice's preparation: |alpha + beta> with probability p_plus, otherwise
/// |alpha - beta>. beta is real.
struct PreparationEnsemble {
    double alpha = 1.0;
    double beta = 0.5;
    double p_plus = 0.5;

    ComplexAmplitude plus_state() const { return {alpha + beta, 0.0}; }
    ComplexAmplitude minus_state() const { return {alpha - beta, 0.0}; }
    void validate() const;
};

struct SteeringScenario {
    PreparationEnsemble ensemble;
    ComplexAmplitude gamma1;
    ComplexAmplitude gamma2;
    ParityOutcome outcome = ParityOutcome::Even;

    /// gamma1 = -alpha - beta, gamma2 = -alpha + beta: both preparations are
    /// returned to the vacuum on a noiseless channel.
    static SteeringScenario vacuum_targeting(const PreparationEnsemble& ensemble,
                                             ParityOutcome outcome = ParityOutcome::Even);
};

namespace channel {

struct Ideal {};

/// Beam-splitter style clone: Bob keeps input * cos|eta|.
struct GaussianClone {
    double eta = 0.0;
};

/// Unsteerable model: Bob receives the same mixture of coherent states
/// whatever Alice prepared.
struct LhsMixture {
    std::vector<ComplexAmplitude> states;
    std::vector<double> weights;
};

} // namespace channel

using ChannelModel = std::variant<channel::Ideal, channel::GaussianClone, channel::LhsMixture>;

/// Throws DomainError on non-finite parameters, negative weights, weights
/// that do not sum to 1 within 1e-12, or a size mismatch.
void validate_channel(const ChannelModel& channel);

/// A weighted coherent-state component of Bob's received state.
struct MixtureComponent {
    ComplexAmplitude state;
    double weight = 1.0;
};

/// Bob's received state when Alice prepared `prepared`.
std::vector<MixtureComponent> received_state(const ChannelModel& channel, ComplexAmplitude prepared);

/// Parity statistics of the received state after Bob's displacement gamma.
/// Mixtures are combined linearly.
ParityDistribution received_parity(const ChannelModel& channel, ComplexAmplitude prepared, ComplexAmplitude gamma);

enum class SteeringVerdict { WithinBounds, ViolatesUpper, ViolatesLower };

const char* to_string(SteeringVerdict verdict);

inline constexpr double kSteeringLower = 0.25;
inline constexpr double kSteeringUpper = 0.75;
inline constexpr double kVerdictTolerance = 1e-12;

struct SteeringEvaluation {
    double sum = 0.0;
    double lower = kSteeringLower;
    double upper = kSteeringUpper;
    SteeringVerdict verdict = SteeringVerdict::WithinBounds;
    bool excluded_region = false;
};

/// Bounds are inclusive: 1/4 and 3/4 themselves are WithinBounds.
SteeringVerdict steering_verdict(double sum, bool excluded = false);

/// p+ P(b | gamma1, alpha + beta) + (1 - p+) P(b | gamma2, alpha - beta).
SteeringEvaluation steering_sum(const SteeringScenario& scenario, const ChannelModel& channel);

/// The printed steerable-region boundary, evaluated in complex arithmetic.
/// For |beta| < sqrt(ln 2) / 2 the square-root argument is negative; the real
/// parts are then returned and `imag` carries the magnitude of the
/// imaginary part.
struct BoundaryPoint {
    double p_low = 0.0;
    double p_high = 0.0;
    double imag = 0.0;
    bool real_valued = true;
};

/// Throws DomainError for |beta| < 1e-6 (removable singularity).
BoundaryPoint paper_boundary(double beta);

struct RegionRow {
    double beta = 0.0;
    double p = 0.0;
    double sum = 0.0;
    SteeringVerdict verdict = SteeringVerdict::WithinBounds;
};

/// steering_sum with the vacuum-targeting displacements and outcome Even at
/// every (beta, p); rows are beta-major. Grids must be nonempty and
/// non-decreasing.
std::vector<RegionRow> region_sweep(const std::vector<double>& beta_grid,
                                    const std::vector<double>& p_grid,
                                    double alpha,
                                    const ChannelModel& channel);

/// Location along p (at fixed beta) where consecutive sweep rows change verdict.
struct VerdictCrossing {
    double beta = 0.0;
    double p = 0.0; // linear interpolation of the sum onto the crossed bound
    SteeringVerdict from = SteeringVerdict::WithinBounds;
    SteeringVerdict to = SteeringVerdict::WithinBounds;
};

std::vector<VerdictCrossing> verdict_crossings(const std::vector<RegionRow>& rows);

} // namespace cvsteer
