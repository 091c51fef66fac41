#include <benchmark/benchmark.h>

#include <random>

#include "lpa/checkers.hpp"
#include "lpa/sample_graphs.hpp"

using namespace lpa;

namespace {

Graph bench_graph() {
  return parse_graph(
      "vertex u; vertex v [infinite]; vertex w; vertex x; vertex y;"
      "edge a: u -> v; edge b: v -> w; edge c: u -> w; edge d: w -> x; edge f: v -> x; edge g: x -> y");
}

void BM_Multiply(benchmark::State& state) {
  Algebra alg(line_graph(static_cast<std::size_t>(state.range(0))));
  ElementSampler sampler(alg, 1);
  std::vector<Element> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(sampler.element());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[i % 64] * xs[(i + 1) % 64]);
    ++i;
  }
}
BENCHMARK(BM_Multiply)->Arg(3)->Arg(6);

void BM_NormalizeRandomized(benchmark::State& state) {
  Algebra alg(bench_graph());
  std::mt19937_64 rng(3);
  std::vector<RawTerm> terms;
  for (VertexId mid = 0; mid < alg.graph().vertex_count(); ++mid) {
    auto paths = alg.graph().paths_ending_at(mid);
    for (const Path& p : paths) terms.push_back({alg.field().one(), Monomial{p.edges, p.edges, mid}});
  }
  for (auto _ : state) benchmark::DoNotOptimize(alg.normalize(terms, RewriteOrder::Randomized, &rng));
}
BENCHMARK(BM_NormalizeRandomized);

void BM_FiniteAlgebraTable(benchmark::State& state) {
  Algebra alg(bench_graph(), state.range(0) == 0 ? Field::rationals() : Field::prime(5));
  for (auto _ : state) benchmark::DoNotOptimize(FiniteAlgebra(alg).dim());
}
BENCHMARK(BM_FiniteAlgebraTable)->Arg(0)->Arg(5);

void BM_RegularityWitness(benchmark::State& state) {
  FiniteAlgebra fd(Algebra(bench_graph(), state.range(0) == 0 ? Field::rationals() : Field::prime(5)));
  ElementSampler sampler(fd.algebra(), 2);
  Element a = sampler.element();
  for (auto _ : state) benchmark::DoNotOptimize(regularity_witness(fd, a));
}
BENCHMARK(BM_RegularityWitness)->Arg(0)->Arg(5);

void BM_PInjectivity(benchmark::State& state) {
  FiniteAlgebra fd(Algebra(bench_graph(), state.range(0) == 0 ? Field::rationals() : Field::prime(5)));
  ElementSampler sampler(fd.algebra(), 2);
  Element a = sampler.element();
  for (auto _ : state) benchmark::DoNotOptimize(is_p_injective_at(fd, a).holds);
}
BENCHMARK(BM_PInjectivity)->Arg(0)->Arg(5);

void BM_ToMatrices(benchmark::State& state) {
  Algebra alg(bench_graph());
  auto d = MatricialDecomposition::decompose(alg);
  ElementSampler sampler(alg, 4);
  Element a = sampler.element();
  for (auto _ : state) benchmark::DoNotOptimize(d.to_matrices(a));
}
BENCHMARK(BM_ToMatrices);

void BM_BoundedSearch(benchmark::State& state) {
  Graph g = parse_graph("vertex v; vertex w; edge e: v -> w; edge f: w -> v; edge g: w -> w");
  Algebra alg(g);
  Element a = vertex_minus_cycle(alg, *g.find_cycle());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounded_regularity_search(alg, a, static_cast<std::size_t>(state.range(0))).found());
  }
}
BENCHMARK(BM_BoundedSearch)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
