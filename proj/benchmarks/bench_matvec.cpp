// Copyright 2026 The aess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generator application: assembled classical and Lindblad matrices against
// the matrix-free Lindblad operator.

#include <benchmark/benchmark.h>

#include "aess/generator.hpp"
#include "aess/models.hpp"
#include "aess/sat.hpp"

namespace {

aess::ModelSpec sat_spec(aess::ModelKind kind, int n, aess::Index assemble_max = aess::kAssembleMax) {
  aess::ModelSpec s = aess::make_sat_model(kind, aess::generate_planted_instance(n, aess::kSatThreshold,
                                                                                 aess::kDefaultP0, 11));
  s.assemble_max = assemble_max;
  return s;
}

void run_apply(benchmark::State& state, const aess::AnyGenerator& g) {
  const aess::CVec v = aess::CVec::Random(aess::dim_of(g));
  for (auto _ : state) benchmark::DoNotOptimize(aess::apply(g, v));
  state.SetItemsProcessed(state.iterations() * aess::dim_of(g));
}

void BM_ClassicalApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  run_apply(state, aess::build_model(sat_spec(aess::ModelKind::kSat3Classical, n), 1.0).generator);
}
BENCHMARK(BM_ClassicalApply)->DenseRange(10, 18, 4);

void BM_QuantumApplyAssembled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  run_apply(state, aess::build_model(sat_spec(aess::ModelKind::kSat3Quantum, n), 1.0).generator);
}
BENCHMARK(BM_QuantumApplyAssembled)->DenseRange(4, 7, 1);

void BM_QuantumApplyMatrixFree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  run_apply(state, aess::build_model(sat_spec(aess::ModelKind::kSat3Quantum, n, 0), 1.0).generator);
}
BENCHMARK(BM_QuantumApplyMatrixFree)->DenseRange(4, 7, 1);

}  // namespace

BENCHMARK_MAIN();
