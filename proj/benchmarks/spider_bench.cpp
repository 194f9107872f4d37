#include <benchmark/benchmark.h>

#include "spider/catalog.hpp"
#include "spider/indices.hpp"
#include "spider/leaf_law.hpp"
#include "spider/mc.hpp"
#include "spider/oracle.hpp"
#include "spider/rng.hpp"
#include "spider/stats.hpp"
#include "spider/tree.hpp"

using namespace spider;

static void BM_Grow(benchmark::State& state) {
  const GrowthModel model = GrowthModel::uniform(0.5);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(1, stream++);
    benchmark::DoNotOptimize(grow(model, n, rng).leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n - 1));
}
BENCHMARK(BM_Grow)->Arg(100)->Arg(10'000);

static void BM_EvalDirect(benchmark::State& state) {
  RngStream rng(2, 0);
  const TreeState tree = grow(GrowthModel::uniform(0.5), state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_direct(tree, IndexSpec::gini()).value);
  }
}
BENCHMARK(BM_EvalDirect)->Arg(500)->Arg(10'000);

static void BM_EvalReduced(benchmark::State& state) {
  std::uint64_t L = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_value(10'000, L, IndexSpec::hoover()));
    L = L == 5000 ? 3 : L + 1;
  }
}
BENCHMARK(BM_EvalReduced);

static void BM_RunExperiment(benchmark::State& state) {
  SimConfig c;
  c.model = GrowthModel::uniform(0.4);
  c.n = 201;
  c.replicates = static_cast<std::uint64_t>(state.range(0));
  c.master_seed = 3;
  for (const auto& e : MomentCatalog::standard().entries()) {
    c.indices.push_back(e.index);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(c).indices.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperiment)->Arg(10'000)->Unit(benchmark::kMillisecond);

static void BM_OracleVarianceExact(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_variance(IndexSpec::forgotten(), n, Rational(3, 10)));
  }
}
BENCHMARK(BM_OracleVarianceExact)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_CatalogMeanExact(benchmark::State& state) {
  const MomentCatalogEntry entry = MomentCatalog::standard().entry(IndexSpec::forgotten());
  for (auto _ : state) {
    benchmark::DoNotOptimize(entry.variance_at(50, Rational(3, 10)));
  }
}
BENCHMARK(BM_CatalogMeanExact);

static void BM_RawMomentExact(benchmark::State& state) {
  const LeafLaw<Rational> law(2000, Rational(1, 2));
  const CoeffTriangle triangle(30);
  const auto alpha = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(leaf_raw_moment_exact(law, alpha, triangle));
  }
}
BENCHMARK(BM_RawMomentExact)->Arg(5)->Arg(30);

static void BM_KsNormal(benchmark::State& state) {
  RngStream rng(4, 0);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) {
    x = rng.uniform() * 6.0 - 3.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ks_normal(xs));
  }
}
BENCHMARK(BM_KsNormal)->Arg(20'000);

BENCHMARK_MAIN();
