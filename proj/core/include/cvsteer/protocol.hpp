#pragma once

// Round-by-round Monte Carlo of the key exchange: Alice prepares |alpha +- beta>,
// the channel acts (Eve keeps her clone), Alice announces the displacement
// rule and Bob (and Eve) measure displaced parity.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cvsteer/coherent.hpp"
#include "cvsteer/steering.hpp"

namespace cvsteer {

struct SimConfig {
    double alpha = 1.0;
    double beta = 0.5;
    double p_plus = 0.5;
    ChannelModel channel = channel::Ideal{};
    std::uint64_t rounds = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Preparation { Plus, Minus };

struct RoundRecord {
    std::uint64_t index = 0;
    Preparation prep = Preparation::Plus;
    ComplexAmplitude announced_gamma;
    ParityOutcome bob_outcome = ParityOutcome::Even;
    std::optional<ParityOutcome> eve_outcome;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SimStats {
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    double empirical_p01 = 0.0;
    std::optional<double> empirical_q01;
    double stderr_p01 = 0.0;
    std::optional<double> stderr_q01;
    /// Present whenever empirical_q01 is.
    std::optional<double> empirical_rate;
};

struct ProtocolRun {
    SimStats stats;
    std::vector<RoundRecord> transcript;
};

/// Simulates `rounds` rounds. Round i draws from
/// RandomStream::for_stream(seed, i) in the order: preparation, Bob's
/// parity, Eve's parity (GaussianClone only). Identical configs give
/// identical transcripts.
ProtocolRun run_protocol(const SimConfig& config);

/// Throws DomainError if the stats carry no eavesdropper statistics.
double empirical_key_rate(const SimStats& stats);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::uint64_t n);

/// One JSON object per line:
///   {"i":..,"prep":"+"|"-","gamma_re":..,"gamma_im":..,"bob":"E"|"O","eve":"E"|"O"}
/// "eve" is omitted when there is no eavesdropper. Throws std::ios_base::failure
/// if the sink goes bad.
void write_transcript(const std::vector<RoundRecord>& transcript, std::ostream& sink);

/// Inverse of write_transcript. Throws DomainError on malformed lines.
std::vector<RoundRecord> read_transcript(std::istream& source);

} // namespace cvsteer
