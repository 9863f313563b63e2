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

// Lindblad superoperators in the column-stacking convention
//
//   vec(rho)[c * D + r] = rho(r, c),   vec(A rho B) = (B^T kron A) vec(rho),
//
// with the jump strength W as the only dial:
//
//   L_W[rho] = -i (H_nH rho - rho H_nH^dag) + W sum_mu L_mu rho L_mu^dag,
//   H_nH     = H - (i/2) sum_mu L_mu^dag L_mu.
//
// Qubit convention: computational basis index = assignment bitmask, bit n-1
// for qubit n, sigma^z |1> = +|1>. Spin-1 sites use local index 0,1,2 for
// m = +1, 0, -1 and site n carries weight 3^(n-1).

#pragma once

#include <string>
#include <vector>

#include "aess/generator.hpp"
#include "aess/sat.hpp"

namespace aess {

using OperatorMatrix = ComplexSparse;
using JumpSet = std::vector<OperatorMatrix>;

inline constexpr int kMaxQuantumQubits = 7;
inline constexpr int kMaxAkltSpins = 6;
inline constexpr int kMaxXxSpins = 10;

// Vectorization.
CVec vectorize(const CMat& rho);
CMat devectorize(const CVec& v);

// Local operators embedded in an n-site register (site is 0-based).
enum class Pauli { kX, kY, kZ, kPlus, kMinus };
OperatorMatrix qubit_operator(int n_qubits, int site, Pauli which);
OperatorMatrix identity_operator(Index dim);
/// Single-site operator `local` (d x d) on `site` of an n-site register whose
/// site k carries weight d^k.
OperatorMatrix embed_local(const CMat& local, int n_sites, int site);

/// Full Liouvillian as a sparse D^2 x D^2 matrix.
LiouvillianMatrix build_liouvillian(const OperatorMatrix& h, const JumpSet& jumps, double w);

/// delta * sum_n (W L_n rho L_n^dag - 1/2 {L_n^dag L_n, rho}) as a superoperator.
ComplexSparse dissipator_superoperator(const JumpSet& jumps, double w, double delta);

/// Matrix-free action of the same Liouvillian; used where D^2 is too large to
/// assemble comfortably.
class LindbladForm {
 public:
  LindbladForm(OperatorMatrix h, JumpSet jumps, double w);

  Index hilbert_dim() const { return h_nh_.rows(); }
  double w() const { return w_; }
  const OperatorMatrix& effective_hamiltonian() const { return h_nh_; }
  const JumpSet& jumps() const { return jumps_; }

  CMat apply(const CMat& rho) const;
  CMat apply_adjoint(const CMat& x) const;
  CVec apply(const CVec& v) const { return vectorize(apply(devectorize(v))); }
  CVec apply_adjoint(const CVec& v) const { return vectorize(apply_adjoint(devectorize(v))); }

 private:
  OperatorMatrix h_nh_;
  OperatorMatrix h_nh_adj_;
  JumpSet jumps_;
  std::vector<OperatorMatrix> jumps_adj_;
  double w_;
};

/// Wraps a Lindblad form as a matrix-free generator in the vectorized basis.
MatrixFreeGenerator make_matrix_free(LindbladForm form);

// 3SAT.
/// Diagonal projector onto the unique falsifying configuration of a clause.
OperatorMatrix clause_projector(const Clause& clause, int n_qubits);
/// H_3SAT = sum_m P_m (diagonal, entry = number of violated clauses).
OperatorMatrix build_h3sat(const SatInstance& inst, int max_qubits = kMaxQuantumQubits);
/// L_{m,alpha} = sigma^x_{m_alpha} P_m, ordered clause-major.
JumpSet build_3sat_jumps(const SatInstance& inst, int max_qubits = kMaxQuantumQubits);
/// Modified transverse field confined to the complement of the solution:
/// h sum_{m != m'} sum_{n in Ind(m, m')} P_mm' sigma^x_n P_mm',
/// P_mm' = I - (I - P_m)(I - P_m').
OperatorMatrix build_hx(const SatInstance& inst, double h, int max_qubits = kMaxQuantumQubits);

// AKLT.
struct SpinOneOperators {
  CMat sx, sy, sz;
};
SpinOneOperators spin_one_operators();
/// Two-site projector onto total spin 2 from the Casimir polynomial.
CMat spin_two_projector();
/// 4N jumps S^a_n P2_{n,n+1}, S^a_{n+1} P2_{n,n+1} (a = x, y), periodic.
JumpSet build_aklt_model(int n_spins);
/// Normalized periodic AKLT ground state from its bond-dimension-2 matrix
/// product representation.
CVec aklt_state(int n_spins);

// Dephasing XX chain.
struct SectorSpec {
  double magnetization = 0.0;
  std::vector<Index> indices;  // ascending full-register basis indices
};
SectorSpec magnetization_sector(int n_spins, double sz);

struct XxModel {
  OperatorMatrix h;  // full register
  JumpSet jumps;     // full register, s^z_n
  SectorSpec sector;
};
/// H = sum_n s^x_n s^x_{n+1} + s^y_n s^y_{n+1} (open chain), L_n = s^z_n.
/// The sector is S^z = 0 for even n and -1/2 for odd n.
XxModel build_xx_dephasing(int n_spins);

/// Submatrix on the retained indices; throws LeakageError if `op` couples
/// the sector to its complement by more than `tol`.
OperatorMatrix sector_restrict(const OperatorMatrix& op, const SectorSpec& sector,
                               double tol = 1e-12);

/// Pure-state projector |psi><psi| as a vectorized operator.
CVec pure_state_operator(const CVec& psi);
/// Computational basis state |bits> as a vectorized projector.
CVec basis_projector(Index hilbert_dim, Index index);

}  // namespace aess
