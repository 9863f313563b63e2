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

// Small ensemble run end to end; the argument is the worker count.

#include <benchmark/benchmark.h>

#include "aess/ensemble.hpp"

namespace {

void BM_Ensemble(benchmark::State& state) {
  aess::RunConfig c;
  c.n_list = {8, 9};
  c.instances = 8;
  c.w_list = {1.0};
  c.seed_base = 3;
  c.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aess::run_ensemble(c));
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
