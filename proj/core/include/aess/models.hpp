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

// Named models: everything needed to rebuild a generator at any W together
// with its known exact eigenvectors.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aess/generator.hpp"
#include "aess/sat.hpp"

namespace aess {

enum class ModelKind {
  kSat3Classical,  // "sat3-classical"
  kSat3Quantum,    // "sat3-quantum"
  kSat3Hx,         // "sat3-hx": quantum 3SAT plus the confined transverse field
  kAklt,           // "aklt"
  kXxDephasing,    // "xx-dephasing"
  kFerroChain,     // "ferro-chain"
};

ModelKind parse_model(std::string_view tag);
std::string model_tag(ModelKind kind);
bool is_sat_model(ModelKind kind);

/// Superoperator dimension above which quantum generators stay matrix-free.
inline constexpr Index kAssembleMax = 20000;

struct ModelSpec {
  ModelKind kind = ModelKind::kFerroChain;
  int n = 0;
  std::optional<SatInstance> instance;
  std::vector<Assignment> solutions;
  double h = 1.0;
  Index assemble_max = kAssembleMax;
};

/// 3SAT model; enumerates the solutions (needed for the steady targets).
ModelSpec make_sat_model(ModelKind kind, SatInstance inst, double h = 1.0);
/// Chain model (AKLT, XX, ferro) of n sites.
ModelSpec make_chain_model(ModelKind kind, int n);

struct ModelPoint {
  AnyGenerator generator;
  /// Known steady eigenvectors as columns: solution states, the AKLT state,
  /// the sector identity or the absorbing configuration.
  CMat targets;
};

ModelPoint build_model(const ModelSpec& spec, double w);

enum class PerturbationKind { kLowering, kFlip, kSz };
PerturbationKind parse_perturbation(std::string_view tag);
std::string perturbation_tag(PerturbationKind kind);

enum class LocalSpace {
  kClassicalBits,  // populations of bit strings
  kQubits,         // vectorized qubit register
  kSpinOne,        // vectorized spin-1 register
};

/// delta * sum_n (W L_n rho L_n^dag - 1/2 {L_n^dag L_n, rho}) with L_n = sigma^-,
/// sigma^x or S^z on every site. Throws KindMismatch when the kind does not
/// fit the local space (sz on classical bits, lowering/flip on spin-1).
AnyGenerator build_perturbation(PerturbationKind kind, double delta, double w, int n_sites,
                                LocalSpace space);
/// Same, for the local space of `spec`.
AnyGenerator build_perturbation(PerturbationKind kind, double delta, double w,
                                const ModelSpec& spec);

}  // namespace aess
