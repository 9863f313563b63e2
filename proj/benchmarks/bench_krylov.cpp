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

// Sparse eigensolver paths on the ferromagnetic chain.

#include <benchmark/benchmark.h>

#include "aess/models.hpp"
#include "aess/spectral.hpp"

namespace {

void run_mode(benchmark::State& state, aess::SolveMode mode) {
  const int n = static_cast<int>(state.range(0));
  const aess::ModelPoint p = aess::build_model(aess::make_chain_model(aess::ModelKind::kFerroChain, n), 1.05);
  aess::SpectralOptions o;
  o.mode = mode;
  o.k = 4;
  for (auto _ : state) benchmark::DoNotOptimize(aess::full_spectrum(p.generator, o, p.targets));
}

void BM_ShiftInvert(benchmark::State& state) { run_mode(state, aess::SolveMode::kShiftInvert); }
BENCHMARK(BM_ShiftInvert)->DenseRange(9, 13, 2)->Unit(benchmark::kMillisecond);

void BM_Direct(benchmark::State& state) { run_mode(state, aess::SolveMode::kDirect); }
BENCHMARK(BM_Direct)->DenseRange(9, 11, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
