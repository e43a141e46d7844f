#include <benchmark/benchmark.h>

#include "weilkit/central_orders.hpp"
#include "weilkit/dieudonne.hpp"
#include "weilkit/honda_tate.hpp"
#include "weilkit/ip_example.hpp"
#include "weilkit/weil.hpp"

using namespace weilkit;

namespace {

WeilSet single(const char* wire, long q) {
    const auto v = validate_weil(parse_polynomial(wire), GlobalContext::from_q(Integer(q)));
    return make_weil_set({*v.weil_class});
}

void BM_EnumerateWeil(benchmark::State& state) {
    const auto ctx = GlobalContext::from_q(Integer(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_weil(ctx, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_EnumerateWeil)->Args({2, 4})->Args({9, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);

void BM_HondaTateRecord(benchmark::State& state) {
    const auto w = single("32,-2,1", 32);
    for (auto _ : state) benchmark::DoNotOptimize(honda_tate_record(w.classes.front()));
}
BENCHMARK(BM_HondaTateRecord)->Unit(benchmark::kMicrosecond);

void BM_HondaTateGrid(benchmark::State& state) {
    const auto classes = enumerate_weil(GlobalContext::from_q(Integer(9)), 4);
    for (auto _ : state)
        for (const auto& c : classes) benchmark::DoNotOptimize(honda_tate_record(c));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(classes.size()));
}
BENCHMARK(BM_HondaTateGrid)->Unit(benchmark::kMillisecond);

void BM_BuildOrder(benchmark::State& state) {
    const auto w = single("16,-12,7,-3,1", 4);
    for (auto _ : state) benchmark::DoNotOptimize(build_order(w));
}
BENCHMARK(BM_BuildOrder)->Unit(benchmark::kMicrosecond);

void BM_DieudonneStructure(benchmark::State& state) {
    const auto w = single("9,-1,1", 9);
    for (auto _ : state) {
        const auto alg = build_dieudonne(w, state.range(0));
        benchmark::DoNotOptimize(check_structure(alg, true));
    }
}
BENCHMARK(BM_DieudonneStructure)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_VerifyCenter(benchmark::State& state) {
    const auto w = single("9,-1,1", 9);
    for (auto _ : state) benchmark::DoNotOptimize(verify_center_at_two_precisions(w, state.range(0)));
}
BENCHMARK(BM_VerifyCenter)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExampleIP(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(example_sec9(Integer(state.range(0))));
}
BENCHMARK(BM_ExampleIP)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
