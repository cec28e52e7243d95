#include "cvsteer/protocol.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cvsteer/key_security.hpp"

namespace cvsteer {

namespace {

using nlohmann::json;

char outcome_code(ParityOutcome o)
{
    return o == ParityOutcome::Even ? 'E' : 'O';
}

ParityOutcome parse_outcome(const json& value)
{
    const auto s = value.get<std::string>();
    if (s == "E") return ParityOutcome::Even;
    if (s == "O") return ParityOutcome::Odd;
    throw DomainError("transcript: parity must be \"E\" or \"O\", got \"" + s + "\"");
}

ParityOutcome sample_mixture(const std::vector<MixtureComponent>& components, ComplexAmplitude gamma,
                             RandomStream& stream)
{
    if (components.size() == 1) return sample_parity(displace(components.front().state, gamma), stream);
    std::vector<double> weights;
    weights.reserve(components.size());
    for (const auto& c : components) weights.push_back(c.weight);
    const auto& picked = components[stream.categorical(weights)];
    return sample_parity(displace(picked.state, gamma), stream);
}

// Pass-through: every announcement is usable in this protocol.
bool sifted(const RoundRecord&)
{
    return true;
}

} // namespace

void SimConfig::validate() const
{
    PreparationEnsemble{alpha, beta, p_plus}.validate();
    validate_channel(channel);
    if (rounds < 1) throw DomainError("SimConfig: rounds must be at least 1");
}

double binomial_stderr(double p, std::uint64_t n)
{
    if (n == 0) return 0.0;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

ProtocolRun run_protocol(const SimConfig& config)
{
    config.validate();
    const PreparationEnsemble ensemble{config.alpha, config.beta, config.p_plus};
    const auto scenario = SteeringScenario::vacuum_targeting(ensemble);
    const auto* attack = std::get_if<channel::GaussianClone>(&config.channel);

    ProtocolRun run;
    run.transcript.reserve(config.rounds);
    std::uint64_t bob_odd = 0;
    std::uint64_t eve_odd = 0;
    std::uint64_t kept = 0;

    for (std::uint64_t i = 0; i < config.rounds; ++i) {
        auto stream = RandomStream::for_stream(config.seed, i);
        RoundRecord rec;
        rec.index = i;
        rec.prep = stream.bernoulli(config.p_plus) ? Preparation::Plus : Preparation::Minus;
        const bool plus = rec.prep == Preparation::Plus;
        const ComplexAmplitude prepared = plus ? ensemble.plus_state() : ensemble.minus_state();
        rec.announced_gamma = plus ? scenario.gamma1 : scenario.gamma2;

        rec.bob_outcome = sample_mixture(received_state(config.channel, prepared), rec.announced_gamma, stream);
        if (attack) {
            const auto eve_copy = clone(prepared, attack->eta).eve;
            rec.eve_outcome = sample_parity(displace(eve_copy, rec.announced_gamma), stream);
        }

        (plus ? run.stats.n_plus : run.stats.n_minus) += 1;
        if (sifted(rec)) {
            ++kept;
            if (rec.bob_outcome == ParityOutcome::Odd) ++bob_odd;
            if (rec.eve_outcome == ParityOutcome::Odd) ++eve_odd;
        }
        run.transcript.push_back(rec);
    }

    auto& s = run.stats;
    s.empirical_p01 = static_cast<double>(bob_odd) / static_cast<double>(kept);
    s.stderr_p01 = binomial_stderr(s.empirical_p01, kept);
    if (attack) {
        s.empirical_q01 = static_cast<double>(eve_odd) / static_cast<double>(kept);
        s.stderr_q01 = binomial_stderr(*s.empirical_q01, kept);
        s.empirical_rate = empirical_key_rate(s);
    }
    return run;
}

double empirical_key_rate(const SimStats& stats)
{
    if (!stats.empirical_q01) throw DomainError("empirical_key_rate: no eavesdropper statistics");
    return (1.0 - binary_entropy(stats.empirical_p01)) - (1.0 - binary_entropy(*stats.empirical_q01));
}

void write_transcript(const std::vector<RoundRecord>& transcript, std::ostream& sink)
{
    for (const auto& rec : transcript) {
        json line;
        line["i"] = rec.index;
        line["prep"] = rec.prep == Preparation::Plus ? "+" : "-";
        line["gamma_re"] = rec.announced_gamma.re;
        line["gamma_im"] = rec.announced_gamma.im;
        line["bob"] = std::string(1, outcome_code(rec.bob_outcome));
        if (rec.eve_outcome) line["eve"] = std::string(1, outcome_code(*rec.eve_outcome));
        sink << line.dump() << '\n';
        if (!sink) throw std::ios_base::failure("write_transcript: sink write failed");
    }
    sink.flush();
    if (!sink) throw std::ios_base::failure("write_transcript: sink write failed");
}

std::vector<RoundRecord> read_transcript(std::istream& source)
{
    std::vector<RoundRecord> out;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(source, text)) {
        ++line_no;
        if (text.empty()) continue;
        try {
            const auto line = json::parse(text);
            RoundRecord rec;
            rec.index = line.at("i").get<std::uint64_t>();
            const auto prep = line.at("prep").get<std::string>();
            if (prep != "+" && prep != "-") throw DomainError("prep must be \"+\" or \"-\"");
            rec.prep = prep == "+" ? Preparation::Plus : Preparation::Minus;
            rec.announced_gamma = {line.at("gamma_re").get<double>(), line.at("gamma_im").get<double>()};
            rec.bob_outcome = parse_outcome(line.at("bob"));
            if (line.contains("eve")) rec.eve_outcome = parse_outcome(line.at("eve"));
            out.push_back(rec);
        } catch (const json::exception& e) {
            throw DomainError("transcript line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

} // namespace cvsteer
