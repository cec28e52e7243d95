#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "cvsteer/cvsteer.hpp"

using namespace cvsteer;

static void BM_ParityClosedForm(benchmark::State& state)
{
    const ComplexAmplitude mu{1.3, -0.4};
    for (auto _ : state) benchmark::DoNotOptimize(parity_probabilities(mu));
}
BENCHMARK(BM_ParityClosedForm);

static void BM_ParityTruncation(benchmark::State& state)
{
    const ComplexAmplitude mu{static_cast<double>(state.range(0)), 0.0};
    const int cutoff = default_truncation_cutoff(mu);
    for (auto _ : state) benchmark::DoNotOptimize(parity_by_truncation(mu, cutoff));
}
BENCHMARK(BM_ParityTruncation)->Arg(1)->Arg(4);

static void BM_RegionSweep(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> betas(n);
    std::vector<double> ps(n);
    for (std::size_t i = 0; i < n; ++i) {
        betas[i] = 0.05 + 2.95 * static_cast<double>(i) / static_cast<double>(n - 1);
        ps[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    const ChannelModel channel = channel::GaussianClone{std::numbers::pi / 4};
    for (auto _ : state) benchmark::DoNotOptimize(region_sweep(betas, ps, 1.0, channel));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_RegionSweep)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_Protocol(benchmark::State& state)
{
    SimConfig cfg;
    cfg.channel = channel::GaussianClone{std::numbers::pi / 4};
    cfg.rounds = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_protocol(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Protocol)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_EntropicCheck(benchmark::State& state)
{
    const auto psi = sample_profile(GaussianBeamProfile::minimum_uncertainty(0.0, 0.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(entropic_sum_check(psi));
}
BENCHMARK(BM_EntropicCheck)->Unit(benchmark::kMicrosecond);

static void BM_OptimizeEve(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(optimize_eve_symmetric(1.0, 0.5, 0.0, std::numbers::pi / 2));
}
BENCHMARK(BM_OptimizeEve)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
