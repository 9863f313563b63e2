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

// Reference constructions used as test oracles. They are deliberately
// written from the model definitions with plain dense loops and share no
// code path with the library builders.

#pragma once

#include <vector>

#include "aess/linalg.hpp"
#include "aess/sat.hpp"

namespace aess::oracle {

/// Literal truth evaluated bit by bit.
bool literal_true(const Literal& l, std::uint64_t bits);
int count_violated(const SatInstance& inst, std::uint64_t bits);

/// Classical 3SAT generator over all 2^N states.
Mat classical_3sat(const SatInstance& inst, double w);

/// Periodic ferromagnetic chain generator.
Mat ferro_chain(int n, double w);

CMat kron(const CMat& a, const CMat& b);

/// Column-stacking Lindblad superoperator from its defining action, probed
/// on the matrix units E_rc.
CMat liouvillian_by_action(const CMat& h, const std::vector<CMat>& jumps, double w);

CMat pauli_x();
CMat pauli_z();
CMat lowering();  // |0><1|, |1> excited

/// Operator `local` on `site` of n qubits (site k has weight 2^k).
CMat on_site(const CMat& local, int n, int site);

/// Spin-1 matrices in the basis m = +1, 0, -1.
struct Spin1 {
  CMat x, y, z;
};
Spin1 spin1();

/// Ground space of the periodic AKLT Hamiltonian sum_n P2(n, n+1), found by
/// dense diagonalization; returns the lowest eigenvector and the gap to the
/// next level.
CVec aklt_ground_state(int n, double* ground_energy = nullptr);

/// Independent enumeration of satisfying assignments.
std::vector<std::uint64_t> brute_force_solutions(const SatInstance& inst);

}  // namespace aess::oracle
