#include "cvsteer/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvsteer/key_security.hpp"

using namespace cvsteer;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(RunProtocol, IdealChannelHasNoErrors)
{
    SimConfig cfg;
    cfg.alpha = 1.3;
    cfg.beta = -0.7;
    cfg.p_plus = 0.4;
    cfg.rounds = 20'000;
    cfg.seed = 9;
    const auto run = run_protocol(cfg);
    EXPECT_EQ(run.stats.empirical_p01, 0.0);
    EXPECT_FALSE(run.stats.empirical_q01.has_value());
    EXPECT_FALSE(run.stats.empirical_rate.has_value());
    EXPECT_EQ(run.stats.n_plus + run.stats.n_minus, cfg.rounds);
    for (const auto& r : run.transcript) {
        EXPECT_EQ(r.bob_outcome, ParityOutcome::Even);
        EXPECT_FALSE(r.eve_outcome.has_value());
    }
}

TEST(RunProtocol, AnnouncementFollowsPreparation)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{0.5};
    cfg.rounds = 500;
    cfg.seed = 1;
    for (const auto& r : run_protocol(cfg).transcript) {
        const ComplexAmplitude want = r.prep == Preparation::Plus ? ComplexAmplitude{-1.5, 0} : ComplexAmplitude{-0.5, 0};
        EXPECT_EQ(r.announced_gamma, want);
        EXPECT_TRUE(r.eve_outcome.has_value());
    }
}

TEST(RunProtocol, SingleRoundIsWellFormed)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{kPi / 4};
    cfg.rounds = 1;
    const auto run = run_protocol(cfg);
    ASSERT_EQ(run.transcript.size(), 1U);
    EXPECT_EQ(run.stats.n_plus + run.stats.n_minus, 1U);
    EXPECT_TRUE(run.stats.empirical_p01 == 0.0 || run.stats.empirical_p01 == 1.0);
    EXPECT_EQ(run.stats.stderr_p01, 0.0);
    EXPECT_TRUE(run.stats.empirical_q01.has_value());
}

TEST(RunProtocol, CloneStatisticsMatchAnalytic)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{kPi / 4};
    cfg.rounds = 1'000'000;
    cfg.seed = 2024;
    const auto s = run_protocol(cfg).stats;
    const auto analytic = error_pair(1.0, 0.5, kPi / 4);
    EXPECT_LT(std::fabs(s.empirical_p01 - analytic.p01), 4 * s.stderr_p01);
    EXPECT_LT(std::fabs(*s.empirical_q01 - analytic.q01), 4 * *s.stderr_q01);
}

TEST(RunProtocol, PreparationFrequency)
{
    for (double p : {0.1, 0.5, 0.85}) {
        SimConfig cfg;
        cfg.p_plus = p;
        cfg.rounds = 100'000;
        cfg.seed = 77;
        const auto s = run_protocol(cfg).stats;
        const double freq = static_cast<double>(s.n_plus) / cfg.rounds;
        EXPECT_LT(std::fabs(freq - p), 4 * std::sqrt(p * (1 - p) / cfg.rounds)) << p;
    }
}

TEST(RunProtocol, LhsMixtureStatistics)
{
    // Bob's state ignores the preparation: after displacement gamma1/gamma2
    // the odd rate is the p_plus-weighted mixture parity.
    const channel::LhsMixture lhs{{{0.0, 0.0}, {2.0, 0.0}}, {0.5, 0.5}};
    SimConfig cfg;
    cfg.channel = lhs;
    cfg.rounds = 400'000;
    cfg.seed = 3;
    const auto s = run_protocol(cfg).stats;
    const double want = 0.5 * received_parity(lhs, {}, {-1.5, 0}).p_odd + 0.5 * received_parity(lhs, {}, {-0.5, 0}).p_odd;
    EXPECT_LT(std::fabs(s.empirical_p01 - want), 4 * s.stderr_p01);
}

TEST(RunProtocol, SeedDeterminism)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{0.7};
    cfg.rounds = 5000;
    cfg.seed = 123456789;
    const auto a = run_protocol(cfg);
    const auto b = run_protocol(cfg);
    EXPECT_EQ(a.transcript, b.transcript);
    std::ostringstream sa;
    std::ostringstream sb;
    write_transcript(a.transcript, sa);
    write_transcript(b.transcript, sb);
    EXPECT_EQ(sa.str(), sb.str());

    cfg.seed += 1;
    EXPECT_NE(run_protocol(cfg).transcript, a.transcript);
}

TEST(RunProtocol, InvalidConfig)
{
    SimConfig cfg;
    cfg.rounds = 0;
    EXPECT_THROW(run_protocol(cfg), DomainError);
    cfg.rounds = 1;
    cfg.channel = channel::LhsMixture{{{0, 0}}, {0.5}};
    EXPECT_THROW(run_protocol(cfg), DomainError);
    cfg.channel = channel::Ideal{};
    cfg.p_plus = -0.2;
    EXPECT_THROW(run_protocol(cfg), DomainError);
}

TEST(EmpiricalKeyRate, Values)
{
    SimStats s;
    s.empirical_p01 = 0.2;
    s.empirical_q01 = 0.2;
    EXPECT_EQ(empirical_key_rate(s), 0.0);
    s.empirical_p01 = 0.0;
    s.empirical_q01 = 0.5;
    EXPECT_EQ(empirical_key_rate(s), 1.0);
    s.empirical_q01.reset();
    EXPECT_THROW(empirical_key_rate(s), DomainError);
}

TEST(EmpiricalKeyRate, ApproachesAnalyticWithoutAttack)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{0.0};
    cfg.rounds = 400'000;
    cfg.seed = 10;
    const auto s = run_protocol(cfg).stats;
    EXPECT_EQ(s.empirical_p01, 0.0);
    const double want = 1.0 - (1.0 - binary_entropy(eve_error(1.0, 0.5, 0.0)));
    EXPECT_NEAR(*s.empirical_rate, want, 0.01);
}

TEST(Transcript, EmptyWritesNothing)
{
    std::ostringstream out;
    write_transcript({}, out);
    EXPECT_TRUE(out.str().empty());
}

TEST(Transcript, SchemaAndRoundTrip)
{
    std::vector<RoundRecord> records{
        {0, Preparation::Plus, {-1.5, 0.0}, ParityOutcome::Even, ParityOutcome::Odd},
        {1, Preparation::Minus, {-0.5, 0.1}, ParityOutcome::Odd, std::nullopt},
        {2, Preparation::Plus, {0.1 + 0.2, -1e-300}, ParityOutcome::Even, ParityOutcome::Even},
    };
    std::ostringstream out;
    write_transcript(records, out);
    const std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_NE(text.find(R"({"bob":"E","eve":"O","gamma_im":0.0,"gamma_re":-1.5,"i":0,"prep":"+"})"), std::string::npos);
    const auto second_line = text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1) - text.find('\n') - 1);
    EXPECT_EQ(second_line.find("eve"), std::string::npos);
    EXPECT_EQ(second_line.find("null"), std::string::npos);

    std::istringstream in(text);
    EXPECT_EQ(read_transcript(in), records);
}

TEST(Transcript, SimulatedRoundTrip)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{1.1};
    cfg.rounds = 2000;
    cfg.seed = 5;
    const auto run = run_protocol(cfg);
    std::stringstream buf;
    write_transcript(run.transcript, buf);
    EXPECT_EQ(read_transcript(buf), run.transcript);
}

TEST(Transcript, MalformedInputRejected)
{
    std::istringstream bad(R"({"i":0,"prep":"x","gamma_re":0,"gamma_im":0,"bob":"E"})" "\n");
    EXPECT_THROW(read_transcript(bad), DomainError);
    std::istringstream broken("{not json}\n");
    EXPECT_THROW(read_transcript(broken), DomainError);
    std::istringstream missing(R"({"i":0,"prep":"+","gamma_re":0,"bob":"E"})" "\n");
    EXPECT_THROW(read_transcript(missing), DomainError);
}

TEST(Transcript, FailingSinkThrows)
{
    std::ostringstream out;
    out.setstate(std::ios_base::badbit);
    EXPECT_THROW(write_transcript({{0, Preparation::Plus, {}, ParityOutcome::Even, std::nullopt}}, out),
                 std::ios_base::failure);
}
