// Microbenchmarks; cases are added as the library grows.
#include <benchmark/benchmark.h>

#include "cylg/qext.hpp"

static void BM_QExtMul(benchmark::State& state) {
    using namespace cylg;
    QExt x(rat(3, 7), rat(-2, 5), rat(1, 3), rat(4, 9));
    QExt y(rat(-1, 2), rat(5, 11), rat(7, 13), rat(2, 3));
    for (auto _ : state) {
        QExt z = x * y;
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_QExtMul);

BENCHMARK_MAIN();
