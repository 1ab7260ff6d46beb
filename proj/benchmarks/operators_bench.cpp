#include <benchmark/benchmark.h>

#include "rsky/data_io.hpp"
#include "rsky/dominance.hpp"
#include "rsky/operators.hpp"

namespace {

using namespace rsky;

Relation make_relation(benchmark::State& state) {
  return io::gen_synthetic({static_cast<std::size_t>(state.range(0)), 4, io::Distribution::kAnticorrelated, 1});
}

WeightPolytope make_polytope() {
  return WeightPolytope(4, {{{1, -1, 0, 0}, Relop::kGreaterEqual, 0}, {{0, 1, -1, 0}, Relop::kGreaterEqual, 0}});
}

void BM_Sky(benchmark::State& state) {
  const Relation r = make_relation(state);
  for (auto _ : state) benchmark::DoNotOptimize(sky(r).ids);
}

void BM_Nd(benchmark::State& state, NdAlgorithm alg) {
  const Relation r = make_relation(state);
  const auto fam = FunctionFamily::linear(make_polytope());
  for (auto _ : state) benchmark::DoNotOptimize(nd(r, fam, alg).ids);
}

void BM_Po(benchmark::State& state, PoMethod method) {
  const Relation r = make_relation(state);
  const WeightPolytope p = make_polytope();
  for (auto _ : state) benchmark::DoNotOptimize(po(r, FunctionFamily::linear(p), method).ids);
}

void BM_FDominanceVe(benchmark::State& state) {
  const WeightPolytope p = make_polytope();
  const std::vector<double> t{0.2, 0.4, 0.3, 0.5}, s{0.3, 0.5, 0.2, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(f_dominates_ve(t, s, p));
}

void BM_FDominanceLp(benchmark::State& state) {
  const WeightPolytope p = make_polytope();
  const std::vector<double> t{0.2, 0.4, 0.3, 0.5}, s{0.3, 0.5, 0.2, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(f_dominates_lp(t, s, p));
}

}  // namespace

BENCHMARK(BM_Sky)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nd, sve1, NdAlgorithm::kSve1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nd, sve2, NdAlgorithm::kSve2)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nd, ulp1, NdAlgorithm::kUlp1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Nd, ulp2, NdAlgorithm::kUlp2)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Po, direct, PoMethod::kDirect)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Po, pond, PoMethod::kPond)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FDominanceVe);
BENCHMARK(BM_FDominanceLp);

BENCHMARK_MAIN();
