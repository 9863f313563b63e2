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

// Classical Markov generators acting on probability vectors over bit strings.
// State i is the bitmask of an assignment (bit n-1 = spin/variable n).

#pragma once

#include "aess/generator.hpp"
#include "aess/sat.hpp"

namespace aess {

inline constexpr int kMaxClassicalBits = 26;

/// Diagonal-subspace generator of the dissipative 3SAT solver. For every
/// clause m and every state i violating it: -1 on (i, i) and +W on
/// (i ^ bit(m_alpha), i) for each of the three clause variables.
SparseGenerator build_classical_generator(const SatInstance& inst, double w,
                                          int max_bits = kMaxClassicalBits);

/// Periodic 1D chain whose absorbing state is all spins down (all bits 0).
/// Each bond (n, n+1 mod N) that is not down-down contributes -2 on the
/// diagonal and +W for flipping either bond spin.
SparseGenerator build_ferro_chain_generator(int n_spins, double w,
                                            int max_bits = kMaxClassicalBits);

/// Classical counterpart of a single-site perturbation dissipator
/// delta * sum_n (W L_n rho L_n^dag - 1/2 {L_n^dag L_n, rho}) restricted to
/// populations; `lowering` uses sigma^- (1 -> 0), otherwise sigma^x.
RealSparse classical_single_site_dissipator(int n_bits, bool lowering, double delta, double w);

Vec apply_generator(const SparseGenerator& g, const Vec& v);

/// Largest absolute column sum; zero for a probability-conserving generator.
double stochasticity_check(const SparseGenerator& g);

}  // namespace aess
