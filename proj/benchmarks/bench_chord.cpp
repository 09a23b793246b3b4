#include <benchmark/benchmark.h>

#include "chordgeom/body.hpp"
#include "chordgeom/chord_integral.hpp"
#include "chordgeom/chord_measure.hpp"
#include "chordgeom/corpus.hpp"

using namespace chordgeom;

namespace {

void BM_LineMC_Ball(benchmark::State& st) {
  const Ball B(Vec::Zero(3), 1.0);
  const long N = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(chord_line_mc(B, 2.0, N, 11).value);
  st.SetItemsProcessed(st.iterations() * N);
}
BENCHMARK(BM_LineMC_Ball)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_LineMC_Polytope(benchmark::State& st) {
  const HPolytope P = random_polytope(3, static_cast<int>(st.range(0)), 11, 0);
  for (auto _ : st) benchmark::DoNotOptimize(chord_line_mc(P, 2.0, 100000, 11).value);
  st.SetItemsProcessed(st.iterations() * 100000);
}
BENCHMARK(BM_LineMC_Polytope)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const HPolytope P = random_polytope(n, 2 * n + 4, 11, 1);
  for (auto _ : st) benchmark::DoNotOptimize(chord_projection(P, 2.0).value);
}
BENCHMARK(BM_Projection)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ProjectionMeasure(benchmark::State& st) {
  const HPolytope P = random_polytope(3, static_cast<int>(st.range(0)), 11, 2);
  for (auto _ : st) benchmark::DoNotOptimize(chord_data(P, 2.0).F.data());
}
BENCHMARK(BM_ProjectionMeasure)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Wulff(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const HPolytope P = random_polytope(n, static_cast<int>(st.range(1)), 11, 3);
  std::vector<double> h(P.h().data(), P.h().data() + P.size());
  for (auto _ : st) benchmark::DoNotOptimize(wulff(P.normals(), h).volume());
}
BENCHMARK(BM_Wulff)->Args({3, 10})->Args({3, 40})->Args({4, 12})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
