#include "ckext/extension.hpp"
#include "ckext/function_catalog.hpp"
#include "ckext/mollifier.hpp"
#include "ckext/open_set.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace ckext;

namespace {

std::vector<double> sample_points(double lo, double hi, int n) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> xs(n);
    for (double& x : xs) x = u(rng);
    return xs;
}

const ExtensionPair& exp_pair() {
    static const ExtensionPair pair = build_extension(
        normalize({{0.0, 1.0}}), make_oracle("exp", {}), kInfiniteOrder);
    return pair;
}

void BM_sigma_deriv(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    double x = -0.95;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sigma_deriv(order, x));
        x += 1e-4;
        if (x > 0.95) x = -0.95;
    }
}
BENCHMARK(BM_sigma_deriv)->Arg(0)->Arg(4)->Arg(12)->Arg(32);

void BM_phi_big_table(benchmark::State& state) {
    double x = -0.999;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_big(x));
        x += 1e-4;
        if (x > 0.999) x = -0.999;
    }
}
BENCHMARK(BM_phi_big_table);

void BM_phi_big_direct(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(phi_big_direct(0.37));
}
BENCHMARK(BM_phi_big_direct);

void BM_build_extension(benchmark::State& state) {
    const OpenSet U = normalize({{0.0, 1.0}, {2.0, 3.0}});
    const OraclePtr f = make_oracle("exp", {});
    for (auto _ : state) {
        ExtensionPair pair = build_extension(U, f, kInfiniteOrder,
                                             static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(pair.g.eval(0.5));
    }
}
BENCHMARK(BM_build_extension)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_eval_g(benchmark::State& state) {
    const auto& pair = exp_pair();
    const auto xs = sample_points(-0.5, 1.5, 4096);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair.g.eval(xs[i]));
        i = (i + 1) & 4095;
    }
}
BENCHMARK(BM_eval_g);

void BM_eval_h_deriv(benchmark::State& state) {
    const auto& pair = exp_pair();
    const auto xs = sample_points(0.0, 1.0, 4096);
    const int order = static_cast<int>(state.range(0));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair.h.eval_deriv(order, xs[i]));
        i = (i + 1) & 4095;
    }
}
BENCHMARK(BM_eval_h_deriv)->Arg(1)->Arg(4);

} // namespace

BENCHMARK_MAIN();
