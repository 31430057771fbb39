#include <benchmark/benchmark.h>

#include <padyn/lubin.hpp>
#include <padyn/oracle.hpp>
#include <padyn/ramification.hpp>
#include <padyn/series.hpp>

using namespace padyn;

static void BM_Compose(benchmark::State& state) {
    const PrimeContext ctx(3, 64, static_cast<int>(state.range(0)));
    const auto a = gm_endomorphism(ctx, mpz_class(-4));
    const auto b = gm_endomorphism(ctx, mpz_class(7));
    for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_IterateResidue(benchmark::State& state) {
    const PrimeContext ctx(2, 8, 64);
    const auto w = reduce_mod_p(gm_endomorphism(ctx, mpz_class(5)));
    for (auto _ : state) benchmark::DoNotOptimize(iterate(w, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_IterateResidue)->Arg(2)->Arg(16)->Arg(256);

static void BM_TorsionCheck(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const PrimeContext ctx(3, K + 8, K);
    const auto pair = gm_minimal_pair(ctx);
    for (auto _ : state) benchmark::DoNotOptimize(torsion_check(pair.f, std::nullopt));
}
BENCHMARK(BM_TorsionCheck)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_LowerRamification(benchmark::State& state) {
    const PrimeContext ctx(3, 8, 64);
    const auto w = reduce_mod_p(gm_endomorphism(ctx, mpz_class(4)));
    for (auto _ : state) benchmark::DoNotOptimize(lower_ramification(w, 3));
}
BENCHMARK(BM_LowerRamification)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
