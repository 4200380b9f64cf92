// Copyright 2026 The dprel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "dprel/marginals.h"
#include "dprel/projection.h"
#include "dprel/relational.h"
#include "dprel/rng.h"
#include "dprel/ubs.h"

namespace dprel {
namespace {

std::vector<double> RandomVector(int64_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  std::vector<double> b(n);
  for (double& v : b) v = u(rng);
  return b;
}

// Feasible sampler input with sum m = 0.3 N.
std::vector<double> FeasibleVector(int64_t n, Rng& rng) {
  return ProjectCappedSimplex(RandomVector(n, rng), 3 * n / 10, 1e-12)->x;
}

Table RandomTable(int rows, int features, int cardinality, Rng& rng) {
  std::vector<Feature> schema;
  for (int f = 0; f < features; ++f) {
    schema.push_back({"f" + std::to_string(f), cardinality});
  }
  std::uniform_int_distribution<int> code(0, cardinality - 1);
  std::vector<int> codes(static_cast<size_t>(rows) * features);
  for (int& c : codes) c = code(rng);
  return *Table::FromCodes(*Schema::Create(std::move(schema)), std::move(codes));
}

void BM_Ubs(benchmark::State& state) {
  Rng rng(1);
  const int64_t n = state.range(0);
  const std::vector<double> x = FeasibleVector(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Ubs(x, 3 * n / 10, rng));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Ubs)->RangeMultiplier(2)->Range(1 << 14, 1 << 21)->Complexity();

void BM_ProjectCappedSimplex(benchmark::State& state) {
  Rng rng(2);
  const int64_t n = state.range(0);
  const std::vector<double> b = RandomVector(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ProjectCappedSimplex(b, 3 * n / 10, 1e-9));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ProjectCappedSimplex)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 20)
    ->Complexity();

void BM_CrossMarginal(benchmark::State& state) {
  Rng rng(3);
  const int rows = static_cast<int>(state.range(0));
  const Table t1 = RandomTable(rows, 3, 4, rng);
  const Table t2 = RandomTable(rows, 3, 4, rng);
  std::uniform_int_distribution<int> pick(0, rows - 1);
  std::vector<Edge> edges;
  for (int e = 0; e < 3 * rows; ++e) edges.emplace_back(pick(rng), pick(rng));
  const BiAdjacency adj = *BiAdjacency::Create(rows, rows, edges);
  const Workload w = Workload::Cross({0, 1}, {2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCrossMarginal(t1, t2, adj, w));
  }
  state.SetItemsProcessed(state.iterations() * adj.num_edges());
}
BENCHMARK(BM_CrossMarginal)->Range(1 << 8, 1 << 14);

void BM_PgdSolve(benchmark::State& state) {
  Rng rng(4);
  const int side = static_cast<int>(state.range(0));
  const Table t1 = RandomTable(side, 3, 2, rng);
  const Table t2 = RandomTable(side, 3, 2, rng);
  QueryMatrix q(side, side);
  for (const Workload& w : EnumerateCrossWorkloads(t1.schema(), t2.schema(), 3)) {
    if (!q.AddCrossWorkload(t1, t2, w).ok()) state.SkipWithError("workload");
  }
  const double m = 3.0 * side;
  std::vector<double> a(q.num_queries(), 1.0 / 8);
  std::vector<double> init(static_cast<size_t>(side) * side, m / (side * side));
  PgdConfig cfg;
  cfg.iterations = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PgdSolve(q, a, m, cfg, init, rng));
  }
}
BENCHMARK(BM_PgdSolve)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dprel

BENCHMARK_MAIN();
