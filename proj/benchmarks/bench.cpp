#include <benchmark/benchmark.h>

#include "azdual/ad_core.hpp"
#include "azdual/derivatives.hpp"
#include "azdual/mw_gl.hpp"
#include "azdual/verify.hpp"

using namespace azd;

namespace {

const std::vector<SignedSymMultisegment>& sweep() {
    static const auto s = standard_sweep(4, 2, 2);
    return s;
}

Multisegment staircase(int n) {
    Multisegment m;
    for (int i = 0; i < n; ++i) m.push_back(Segment::make(-2 * i, 2 * (n - i), 0));
    canonicalize(m);
    return m;
}

}  // namespace

static void BM_ad_symm_sweep(benchmark::State& st) {
    for (auto _ : st)
        for (auto& s : sweep()) benchmark::DoNotOptimize(ad_symm(s));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(sweep().size()));
}
BENCHMARK(BM_ad_symm_sweep)->Unit(benchmark::kMillisecond);

static void BM_mw_transpose(benchmark::State& st) {
    auto m = staircase(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(mw_transpose(m));
}
BENCHMARK(BM_mw_transpose)->Arg(4)->Arg(8)->Arg(16);

static void BM_derivative_sweep(benchmark::State& st) {
    for (auto _ : st)
        for (auto& s : sweep()) {
            HalfInt x = HalfInt::from_twice(s.lines[0].grid == Grid::integral ? 2 : 1);
            benchmark::DoNotOptimize(derivative(s, 0, x));
        }
}
BENCHMARK(BM_derivative_sweep)->Unit(benchmark::kMillisecond);

static void BM_dataset_sample(benchmark::State& st) {
    EnumParams p;
    p.N = 5;
    p.km = 5;
    p.kphi = 3;
    p.sampled = true;
    p.count = 1000;
    p.seed = 1;
    for (auto _ : st)
        enumerate_data(p, [](const LanglandsData& d) { benchmark::DoNotOptimize(ad_data(d)); });
    st.SetItemsProcessed(st.iterations() * 1000);
}
BENCHMARK(BM_dataset_sample)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
