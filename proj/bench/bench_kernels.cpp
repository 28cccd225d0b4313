// Serial reference kernels against their OpenMP counterparts.  Thread count
// follows OMP_NUM_THREADS / HANKEL_LP_THREADS; it is reported as a counter.

#include <benchmark/benchmark.h>

#include "hlp/bessel.hpp"
#include "hlp/hankel.hpp"
#include "hlp/onef2.hpp"
#include "hlp/parallel.hpp"
#include "hlp/zeros.hpp"

namespace {

void label(benchmark::State& st) { st.counters["threads"] = hlp::thread_count(); }

void BM_ZeroTableSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hlp::zero_table_serial(1.3, static_cast<int>(st.range(0))));
    label(st);
}
void BM_ZeroTableParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hlp::zero_table(1.3, static_cast<int>(st.range(0))));
    label(st);
}

const hlp::TransformSpec& step_spec() {
    static const hlp::TransformSpec s(0.25, hlp::parse_weight("step:0,1;0.3,2;0.7,5"));
    return s;
}

void BM_PfeSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hlp::build_pfe_serial(step_spec(), 0.8, static_cast<int>(st.range(0))));
    label(st);
}
void BM_PfeParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hlp::build_pfe(step_spec(), 0.8, static_cast<int>(st.range(0))));
    label(st);
}

void BM_LocateSerial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(hlp::locate_zeros_serial(step_spec(), static_cast<int>(st.range(0)), step_spec().nu));
    label(st);
}
void BM_LocateParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hlp::locate_zeros(step_spec(), static_cast<int>(st.range(0)), step_spec().nu));
    label(st);
}

void BM_RegionGridSerial(benchmark::State& st) {
    int r = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(hlp::region_grid_serial(3.5, {0.0, 12.0}, {0.0, 12.0}, r));
    st.SetItemsProcessed(st.iterations() * r * r);
    label(st);
}
void BM_RegionGridParallel(benchmark::State& st) {
    int r = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(hlp::region_grid(3.5, {0.0, 12.0}, {0.0, 12.0}, r));
    st.SetItemsProcessed(st.iterations() * r * r);
    label(st);
}

}  // namespace

BENCHMARK(BM_ZeroTableSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZeroTableParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PfeSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PfeParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocateSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocateParallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionGridSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionGridParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
