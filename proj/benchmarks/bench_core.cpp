#include <benchmark/benchmark.h>

#include <vector>

#include "mci/distribution.hpp"
#include "mci/rng.hpp"
#include "mci/simulate.hpp"
#include "mci/stats.hpp"

namespace {

void BM_NormalCdf(benchmark::State& state) {
    double x = -6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mci::stats::normal_cdf(x));
        x = x >= 6.0 ? -6.0 : x + 1e-3;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mci::stats::normal_quantile(p));
        p = p >= 0.999 ? 1e-6 : p + 1e-4;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_NormalApproxCi(benchmark::State& state) {
    std::int64_t correct = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mci::stats::normal_approx_ci(correct, 3925, 1.96));
        correct = (correct + 7) % 3926;
    }
}
BENCHMARK(BM_NormalApproxCi);

void BM_Mcnemar(benchmark::State& state) {
    const auto n = state.range(0);
    std::int64_t b = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mci::stats::mcnemar(b, n - b));
        b = (b + 1) % (n + 1);
    }
}
BENCHMARK(BM_Mcnemar)->Arg(20)->Arg(200);

void BM_BinomialDraw(benchmark::State& state) {
    const auto n = state.range(0);
    mci::rng::splitmix64 gen(1);
    for (auto _ : state) benchmark::DoNotOptimize(mci::sim::draw_binomial(gen, n, 0.9));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BinomialDraw)->Arg(670)->Arg(3925);

void BM_SimulateCoverage(benchmark::State& state) {
    mci::sim::simulation_config config;
    config.p = 0.9;
    config.n_holdout = 670;
    config.trials = 1000;
    config.rng_seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mci::sim::simulate_coverage(config, 1.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SimulateCoverage)->Arg(1)->Arg(4);

void BM_Histogram(benchmark::State& state) {
    mci::rng::splitmix64 gen(2);
    std::vector<double> values;
    for (int i = 0; i < 10000; ++i) values.push_back(gen.next_unit());
    for (auto _ : state) benchmark::DoNotOptimize(mci::dist::make_histogram(values, 25));
}
BENCHMARK(BM_Histogram);

void BM_QqGaussian(benchmark::State& state) {
    mci::rng::splitmix64 gen(3);
    std::vector<double> values;
    for (int i = 0; i < 1000; ++i)
        values.push_back(0.9 + 0.01 * mci::stats::normal_quantile(gen.next_unit()));
    for (auto _ : state) benchmark::DoNotOptimize(mci::dist::qq_gaussian(values));
}
BENCHMARK(BM_QqGaussian);

} // namespace

BENCHMARK_MAIN();
