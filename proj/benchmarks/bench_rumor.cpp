#include <benchmark/benchmark.h>

#include "rumor/degree_distribution.hpp"
#include "rumor/meanfield.hpp"
#include "rumor/montecarlo.hpp"
#include "rumor/network.hpp"
#include "rumor/random.hpp"

using namespace rumor;

namespace {

ModelParams params(double lambda, double alpha, double beta) {
    ModelParams p;
    p.lambda = lambda;
    p.alpha = alpha;
    p.tie.beta = beta;
    return p;
}

void BM_Integrate(benchmark::State& state) {
    const auto d = sample_powerlaw_distribution(2.4, 2, static_cast<std::uint64_t>(state.range(0)));
    const auto p = params(0.8, 0.5, -0.5);
    IntegrationOptions opt;
    opt.store_states = false;
    for (auto _ : state) {
        auto traj = integrate(DegreeClassState::seeded(d, 1e-4), d, p, {}, 50.0, 0.1, opt);
        benchmark::DoNotOptimize(traj.final_R());
    }
}
BENCHMARK(BM_Integrate)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PsiFixedPoint(benchmark::State& state) {
    const auto d = sample_powerlaw_distribution(2.4, 2, static_cast<std::uint64_t>(state.range(0)));
    const auto p = params(0.8, 0.5, -0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_fixed_point(d, p));
    }
}
BENCHMARK(BM_PsiFixedPoint)->Arg(1000)->Arg(100000);

void BM_ConfigurationModel(benchmark::State& state) {
    const auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Rng rng(seed++);
        auto net = build_configuration_network(d, n, rng);
        benchmark::DoNotOptimize(net.network.size());
    }
}
BENCHMARK(BM_ConfigurationModel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloRun(benchmark::State& state) {
    const auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    Rng rng(7);
    const auto net = build_configuration_network(d, 10000, rng).network;
    const auto p = params(2.0, 0.5, -0.5);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto trace = run(net, p, {}, InitialSpreaders::fraction(0.001), seed++);
        benchmark::DoNotOptimize(trace.final_R);
    }
}
BENCHMARK(BM_MonteCarloRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
