#include <benchmark/benchmark.h>

#include "simpcalc/bisimplicial.hpp"
#include "simpcalc/cartesian.hpp"
#include "simpcalc/cat.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/standard.hpp"
#include "simpcalc/transfer.hpp"

using namespace simpcalc;

namespace {

void BM_CountHomSimplexToNerve(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto x = simplex(n, n);
    const auto y = nerve(poset_category(3), n);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_hom(x, y));
}
BENCHMARK(BM_CountHomSimplexToNerve)->DenseRange(1, 3);

void BM_KanCheckGroupoidNerve(benchmark::State& state)
{
    const int l = static_cast<int>(state.range(0));
    const auto j = share(groupoid_nerve(l, 3));
    const auto p = to_terminal(j);
    for (auto _ : state)
        benchmark::DoNotOptimize(has_rlp(p, FibrationClass::Kan).verdict);
}
BENCHMARK(BM_KanCheckGroupoidNerve)->DenseRange(1, 2);

void BM_TLower(benchmark::State& state)
{
    const auto x = share(box_product(simplex(1, 2), simplex(static_cast<int>(state.range(0)), 2)));
    for (auto _ : state)
        benchmark::DoNotOptimize(t_lower(x, 3).object);
}
BENCHMARK(BM_TLower)->DenseRange(0, 2);

void BM_TUpper(benchmark::State& state)
{
    const auto s = share(nerve(poset_category(static_cast<int>(state.range(0))), 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(t_upper(s, {2, 2}).object.total_cells());
}
BENCHMARK(BM_TUpper)->DenseRange(1, 2);

void BM_CartesianFibrationNerveMap(benchmark::State& state)
{
    const auto base = share(nerve(poset_category(1), 3));
    const auto prod = share(product(*base, *base));
    const auto p = product_projection(prod, base, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_cartesian_fibration(p).verdict);
}
BENCHMARK(BM_CartesianFibrationNerveMap);

void BM_SegalCompletenessClassificationDiagram(benchmark::State& state)
{
    const auto w = share(classification_diagram(chaotic_groupoid(static_cast<int>(state.range(0))), {2, 3}));
    for (auto _ : state)
        benchmark::DoNotOptimize(segal_completeness_check(w).verdict);
}
BENCHMARK(BM_SegalCompletenessClassificationDiagram)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
