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

// Complex Krylov-Schur eigensolver for a few extremal eigenpairs of a
// non-Hermitian linear operator, with optional locking of a known
// orthonormal subspace (every Krylov vector is kept orthogonal to it).

#pragma once

#include <cstdint>
#include <functional>

#include "aess/linalg.hpp"

namespace aess {

using LinearMap = std::function<CVec(const CVec&)>;

enum class Which {
  kLargestMagnitude,
  kLargestReal,
};

struct KrylovOptions {
  int nev = 6;
  int ncv = 0;  // 0 picks max(2 nev + 1, 24), capped by the dimension
  double tol = 1e-12;
  int max_restarts = 3000;
  Which which = Which::kLargestMagnitude;
  std::uint64_t seed = 0x5eed;
};

struct KrylovResult {
  CVec values;   // Ritz values, most wanted first
  CMat vectors;  // unit-norm Ritz vectors
  Eigen::VectorXd residuals;
  int restarts = 0;
  long matvecs = 0;
};

/// Runs Krylov-Schur on `op` restricted to the orthogonal complement of the
/// columns of `locked` (orthonormal, may be empty). Throws ConvergenceFailure
/// when fewer than nev pairs converge within the restart budget.
KrylovResult krylov_schur(const LinearMap& op, Index n, const KrylovOptions& opts,
                          const CMat& locked = CMat());

/// Swaps the adjacent diagonal entries k and k+1 of an upper triangular T by
/// a unitary Givens rotation, accumulating it into U (T <- G^H T G, U <- U G).
void schur_swap(CMat& t, CMat& u, Index k);

/// Reorders a complex Schur form so that diagonal entries appear in
/// descending order of `score`.
void schur_sort(CMat& t, CMat& u, const std::function<double(cplx)>& score);

}  // namespace aess
