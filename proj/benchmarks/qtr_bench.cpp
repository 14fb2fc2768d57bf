#include "cli.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_FundamentalUnit(benchmark::State& state) {
    const qtr::Integer ell = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(qtr::fundamental_unit(ell));
}
// 1021 and 1549 have long periods among ell < 2000.
BENCHMARK(BM_FundamentalUnit)->Arg(29)->Arg(1021)->Arg(1549)->Arg(99989);

void BM_RankUnified(benchmark::State& state) {
    auto input = qtr::validate(37, 2 * 17 * 31 * 83);
    for (auto _ : state) benchmark::DoNotOptimize(qtr::rank_unified(input));
}
BENCHMARK(BM_RankUnified);

void BM_RankClosed(benchmark::State& state) {
    auto input = qtr::validate(37, 2 * 17 * 31 * 83);
    for (auto _ : state) benchmark::DoNotOptimize(qtr::rank_closed(input));
}
BENCHMARK(BM_RankClosed);

void BM_Validate(benchmark::State& state) {
    auto base = qtr::make_base_field(61);
    const qtr::Integer n("1000000000000000000000000000000000000003");
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(qtr::validate(base, n));
        } catch (const qtr::InvalidField&) {
        }
    }
}
BENCHMARK(BM_Validate)->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
    qtr::cli::ScanOptions options;
    options.ell = 37;
    options.n_max = 3000;
    options.jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qtr::cli::scan(options));
    state.SetItemsProcessed(state.iterations() * 3000);
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
