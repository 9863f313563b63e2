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

// Full dense diagonalization with left and right eigenvectors.

#include <benchmark/benchmark.h>

#include "aess/models.hpp"
#include "aess/spectral.hpp"

namespace {

void BM_DenseSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const aess::ModelPoint p = aess::build_model(
      aess::make_sat_model(aess::ModelKind::kSat3Classical,
                           aess::generate_planted_instance(n, aess::kSatThreshold, aess::kDefaultP0, 5)),
      1.0);
  aess::SpectralOptions o;
  o.mode = aess::SolveMode::kDense;
  for (auto _ : state) benchmark::DoNotOptimize(aess::full_spectrum(p.generator, o, p.targets));
}
BENCHMARK(BM_DenseSpectrum)->DenseRange(6, 9, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
