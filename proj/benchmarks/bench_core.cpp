#include <benchmark/benchmark.h>

#include "imb/datagen.hpp"
#include "imb/distributions.hpp"
#include "imb/erf.hpp"
#include "imb/rng.hpp"
#include "imb/stats.hpp"
#include "imb/svm.hpp"

namespace {

void BM_NormQuantile(benchmark::State& state) {
    imb::RngStream rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(imb::norm_quantile(rng.uniform01()));
    }
}
BENCHMARK(BM_NormQuantile);

void BM_SampleOne(benchmark::State& state) {
    const auto family = static_cast<imb::Family>(state.range(0));
    const imb::DistributionSpec spec{family, 0.0, imb::default_scale(family), 2.0};
    imb::RngStream rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(imb::sample_one(spec, rng));
    }
}
BENCHMARK(BM_SampleOne)->DenseRange(0, 3);

void BM_Generate1D(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const imb::GenRecipe recipe = imb::make_recipe(imb::Family::Laplace, 10.0);
    imb::RngStream rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(imb::generate(recipe, n, imb::Rational(1, 10), rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + n / 10));
}
BENCHMARK(BM_Generate1D)->Arg(10'000)->Arg(100'000);

void BM_HardSvm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int dim = static_cast<int>(state.range(1));
    const imb::GenRecipe recipe = imb::make_recipe(imb::Family::Gaussian, 4.0, dim);
    imb::RngStream rng(7);
    const imb::Dataset data = imb::generate(recipe, n, imb::Rational(1, 10), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(imb::train_hard_svm(data));
    }
}
BENCHMARK(BM_HardSvm)->Args({100, 10})->Args({1000, 10});

void BM_KsTwoSample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    imb::RngStream rng(7);
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = rng.uniform01();
    for (auto& v : b) v = rng.uniform01();
    for (auto _ : state) {
        benchmark::DoNotOptimize(imb::ks_two_sample(a, b));
    }
}
BENCHMARK(BM_KsTwoSample)->Arg(2000)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();
