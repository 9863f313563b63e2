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

#include "aess/quantum.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <set>

#include "aess/errors.hpp"

namespace aess {

namespace {

Index isqrt_exact(Index n) {
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw ShapeMismatch("vector length " + std::to_string(n) + " is not a square");
  return r;
}

ComplexSparse from_triplets(Index rows, Index cols, const std::vector<ComplexTriplet>& t) {
  ComplexSparse m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(cplx{0.0, 0.0});
  m.makeCompressed();
  return m;
}

/// Appends scale * (A kron B) to `out`.
void kron_into(const ComplexSparse& a, const ComplexSparse& b, cplx scale,
               std::vector<ComplexTriplet>& out) {
  const Index nb = b.rows();
  for (int ca = 0; ca < a.outerSize(); ++ca) {
    for (ComplexSparse::InnerIterator ia(a, ca); ia; ++ia) {
      for (int cb = 0; cb < b.outerSize(); ++cb) {
        for (ComplexSparse::InnerIterator ib(b, cb); ib; ++ib) {
          out.emplace_back(static_cast<int>(ia.row() * nb + ib.row()),
                           static_cast<int>(ca * nb + cb), scale * ia.value() * ib.value());
        }
      }
    }
  }
}

void check_square_same(const OperatorMatrix& h, const JumpSet& jumps) {
  if (h.rows() != h.cols()) throw ShapeMismatch("Hamiltonian is not square");
  for (const auto& l : jumps) {
    if (l.rows() != h.rows() || l.cols() != h.cols()) {
      throw ShapeMismatch("jump operator dimension differs from Hamiltonian");
    }
  }
}

OperatorMatrix effective_hamiltonian(const OperatorMatrix& h, const JumpSet& jumps) {
  OperatorMatrix h_nh = h;
  for (const auto& l : jumps) {
    OperatorMatrix ll = l.adjoint() * l;
    h_nh -= cplx{0.0, 0.5} * ll;
  }
  h_nh.prune(cplx{0.0, 0.0});
  return h_nh;
}

/// Embeds a two-site operator acting on sites (a, b) of an n-site register
/// with local dimension d. `two_site` is indexed by la + d * lb.
OperatorMatrix embed_two_site(const CMat& two_site, int n_sites, int d, int a, int b) {
  Index dim = 1;
  for (int i = 0; i < n_sites; ++i) dim *= d;
  Index wa = 1, wb = 1;
  for (int i = 0; i < a; ++i) wa *= d;
  for (int i = 0; i < b; ++i) wb *= d;
  std::vector<ComplexTriplet> t;
  for (Index s = 0; s < dim; ++s) {
    const Index la = (s / wa) % d, lb = (s / wb) % d;
    const Index base = s - la * wa - lb * wb;
    const Index col = la + d * lb;
    for (Index row = 0; row < d * d; ++row) {
      const cplx v = two_site(row, col);
      if (std::abs(v) < 1e-15) continue;
      const Index ra = row % d, rb = row / d;
      t.emplace_back(static_cast<int>(base + ra * wa + rb * wb), static_cast<int>(s), v);
    }
  }
  return from_triplets(dim, dim, t);
}

}  // namespace

CVec vectorize(const CMat& rho) {
  if (rho.rows() != rho.cols()) throw ShapeMismatch("operator is not square");
  return Eigen::Map<const CVec>(rho.data(), rho.size());
}

CMat devectorize(const CVec& v) {
  const Index d = isqrt_exact(v.size());
  return Eigen::Map<const CMat>(v.data(), d, d);
}

OperatorMatrix identity_operator(Index dim) {
  OperatorMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

OperatorMatrix embed_local(const CMat& local, int n_sites, int site) {
  const Index d = local.rows();
  if (local.cols() != d || site < 0 || site >= n_sites) {
    throw ShapeMismatch("local operator or site out of range");
  }
  Index dim = 1, weight = 1;
  for (int i = 0; i < n_sites; ++i) dim *= d;
  for (int i = 0; i < site; ++i) weight *= d;
  std::vector<ComplexTriplet> t;
  for (Index s = 0; s < dim; ++s) {
    const Index l = (s / weight) % d;
    const Index base = s - l * weight;
    for (Index r = 0; r < d; ++r) {
      if (local(r, l) != cplx{0.0, 0.0}) {
        t.emplace_back(static_cast<int>(base + r * weight), static_cast<int>(s), local(r, l));
      }
    }
  }
  return from_triplets(dim, dim, t);
}

OperatorMatrix qubit_operator(int n_qubits, int site, Pauli which) {
  if (site < 0 || site >= n_qubits) throw ShapeMismatch("qubit site out of range");
  const Index dim = Index{1} << n_qubits;
  const Index bit = Index{1} << site;
  std::vector<ComplexTriplet> t;
  for (Index s = 0; s < dim; ++s) {
    const bool up = (s & bit) != 0;
    switch (which) {
      case Pauli::kX:
        t.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), 1.0);
        break;
      case Pauli::kY:
        // sigma^y |1> = i |0>, sigma^y |0> = -i |1> with |1> = up.
        t.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), up ? cplx{0, 1} : cplx{0, -1});
        break;
      case Pauli::kZ:
        t.emplace_back(static_cast<int>(s), static_cast<int>(s), up ? 1.0 : -1.0);
        break;
      case Pauli::kPlus:
        if (!up) t.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), 1.0);
        break;
      case Pauli::kMinus:
        if (up) t.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), 1.0);
        break;
    }
  }
  return from_triplets(dim, dim, t);
}

LiouvillianMatrix build_liouvillian(const OperatorMatrix& h, const JumpSet& jumps, double w) {
  check_square_same(h, jumps);
  const Index d = h.rows();
  const OperatorMatrix h_nh = effective_hamiltonian(h, jumps);
  const OperatorMatrix id = identity_operator(d);

  std::vector<ComplexTriplet> t;
  kron_into(id, h_nh, cplx{0.0, -1.0}, t);
  const OperatorMatrix h_conj = h_nh.conjugate();
  kron_into(h_conj, id, cplx{0.0, 1.0}, t);
  if (w != 0.0) {
    for (const auto& l : jumps) {
      const OperatorMatrix lc = l.conjugate();
      kron_into(lc, l, w, t);
    }
  }

  LiouvillianMatrix out;
  out.matrix = from_triplets(d * d, d * d, t);
  out.info.model = "lindblad";
  out.info.w = w;
  out.info.basis = BasisKind::kVectorized;
  out.info.hilbert_dim = d;
  out.info.basis_doc = "column-stacked operators, rho(r,c) at c*D+r";
  return out;
}

ComplexSparse dissipator_superoperator(const JumpSet& jumps, double w, double delta) {
  if (jumps.empty()) throw ShapeMismatch("dissipator needs at least one jump operator");
  const Index d = jumps.front().rows();
  check_square_same(identity_operator(d), jumps);
  std::vector<ComplexTriplet> t;
  if (delta != 0.0) {
    const OperatorMatrix id = identity_operator(d);
    for (const auto& l : jumps) {
      const OperatorMatrix ll = l.adjoint() * l;
      const OperatorMatrix llt = ll.transpose();
      const OperatorMatrix lc = l.conjugate();
      if (w != 0.0) kron_into(lc, l, delta * w, t);
      kron_into(id, ll, -0.5 * delta, t);
      kron_into(llt, id, -0.5 * delta, t);
    }
  }
  return from_triplets(d * d, d * d, t);
}

LindbladForm::LindbladForm(OperatorMatrix h, JumpSet jumps, double w)
    : h_nh_(), jumps_(std::move(jumps)), w_(w) {
  check_square_same(h, jumps_);
  h_nh_ = aess::effective_hamiltonian(h, jumps_);
  h_nh_adj_ = h_nh_.adjoint();
  for (const auto& l : jumps_) jumps_adj_.push_back(l.adjoint());
}

CMat LindbladForm::apply(const CMat& rho) const {
  if (rho.rows() != hilbert_dim() || rho.cols() != hilbert_dim()) {
    throw ShapeMismatch("density matrix dimension differs from Lindblad form");
  }
  CMat out = cplx{0.0, -1.0} * (h_nh_ * rho);
  out += cplx{0.0, 1.0} * (rho * h_nh_adj_);
  if (w_ != 0.0) {
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
      CMat lr = jumps_[k] * rho;
      out += w_ * (lr * jumps_adj_[k]);
    }
  }
  return out;
}

CMat LindbladForm::apply_adjoint(const CMat& x) const {
  if (x.rows() != hilbert_dim() || x.cols() != hilbert_dim()) {
    throw ShapeMismatch("operator dimension differs from Lindblad form");
  }
  CMat out = cplx{0.0, 1.0} * (h_nh_adj_ * x);
  out += cplx{0.0, -1.0} * (x * h_nh_);
  if (w_ != 0.0) {
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
      CMat lx = jumps_adj_[k] * x;
      out += w_ * (lx * jumps_[k]);
    }
  }
  return out;
}

namespace {

class LindbladOperator final : public LinearOperator {
 public:
  // Uses ||B kron A|| = ||B|| ||A|| in the induced 1- and infinity-norms.
  explicit LindbladOperator(LindbladForm form) : form_(std::move(form)) {
    const auto& h = form_.effective_hamiltonian();
    norm1_ = 2.0 * one_norm(h);
    norm_inf_ = 2.0 * inf_norm(h);
    for (const auto& l : form_.jumps()) {
      norm1_ += std::abs(form_.w()) * std::pow(one_norm(l), 2);
      norm_inf_ += std::abs(form_.w()) * std::pow(inf_norm(l), 2);
    }
  }
  Index dim() const override { return form_.hilbert_dim() * form_.hilbert_dim(); }
  CVec apply(const CVec& v) const override { return form_.apply(v); }
  CVec apply_adjoint(const CVec& v) const override { return form_.apply_adjoint(v); }
  double norm_bound() const override { return norm1_; }
  double inf_norm_bound() const override { return norm_inf_; }

 private:
  LindbladForm form_;
  double norm1_ = 0.0, norm_inf_ = 0.0;
};

}  // namespace

MatrixFreeGenerator make_matrix_free(LindbladForm form) {
  MatrixFreeGenerator g;
  g.info.model = "lindblad";
  g.info.w = form.w();
  g.info.basis = BasisKind::kVectorized;
  g.info.hilbert_dim = form.hilbert_dim();
  g.info.basis_doc = "column-stacked density matrix, rho(r, c) at c * D + r";
  g.op = std::make_shared<LindbladOperator>(std::move(form));
  return g;
}

// --- 3SAT -----------------------------------------------------------------

namespace {

void check_qubits(int n, int max_qubits) {
  if (n > max_qubits) {
    throw DimensionOverflow(std::to_string(n) + " qubits exceed the quantum cap of " +
                            std::to_string(max_qubits));
  }
}

}  // namespace

OperatorMatrix clause_projector(const Clause& clause, int n_qubits) {
  const Index dim = Index{1} << n_qubits;
  const auto mask = clause.variable_mask(), bad = clause.violating_bits();
  std::vector<ComplexTriplet> t;
  for (Index s = 0; s < dim; ++s) {
    if ((static_cast<std::uint64_t>(s) & mask) == bad) {
      t.emplace_back(static_cast<int>(s), static_cast<int>(s), 1.0);
    }
  }
  return from_triplets(dim, dim, t);
}

OperatorMatrix build_h3sat(const SatInstance& inst, int max_qubits) {
  const int n = inst.num_vars();
  check_qubits(n, max_qubits);
  const Index dim = Index{1} << n;
  std::vector<ComplexTriplet> t;
  for (Index s = 0; s < dim; ++s) {
    const int v = violations(static_cast<std::uint64_t>(s), inst);
    if (v) t.emplace_back(static_cast<int>(s), static_cast<int>(s), static_cast<double>(v));
  }
  return from_triplets(dim, dim, t);
}

JumpSet build_3sat_jumps(const SatInstance& inst, int max_qubits) {
  const int n = inst.num_vars();
  check_qubits(n, max_qubits);
  const Index dim = Index{1} << n;
  JumpSet jumps;
  jumps.reserve(3 * inst.num_clauses());
  for (const auto& clause : inst.clauses()) {
    const auto mask = clause.variable_mask(), bad = clause.violating_bits();
    for (const auto& lit : clause.literals) {
      const Index flip = Index{1} << (lit.variable - 1);
      std::vector<ComplexTriplet> t;
      for (Index s = 0; s < dim; ++s) {
        if ((static_cast<std::uint64_t>(s) & mask) == bad) {
          t.emplace_back(static_cast<int>(s ^ flip), static_cast<int>(s), 1.0);
        }
      }
      jumps.push_back(from_triplets(dim, dim, t));
    }
  }
  return jumps;
}

OperatorMatrix build_hx(const SatInstance& inst, double h, int max_qubits) {
  const int n = inst.num_vars();
  check_qubits(n, max_qubits);
  const Index dim = Index{1} << n;
  if (h == 0.0) return OperatorMatrix(dim, dim);

  const auto& clauses = inst.clauses();
  std::vector<ComplexTriplet> t;
  for (std::size_t m = 0; m < clauses.size(); ++m) {
    for (std::size_t mp = 0; mp < clauses.size(); ++mp) {
      if (m == mp) continue;
      const auto mask_a = clauses[m].variable_mask(), bad_a = clauses[m].violating_bits();
      const auto mask_b = clauses[mp].variable_mask(), bad_b = clauses[mp].violating_bits();
      auto in_range = [&](std::uint64_t s) {
        return (s & mask_a) == bad_a || (s & mask_b) == bad_b;
      };
      const std::uint64_t qubits = mask_a | mask_b;
      for (int q = 0; q < n; ++q) {
        const std::uint64_t flip = std::uint64_t{1} << q;
        if (!(qubits & flip)) continue;
        for (Index s = 0; s < dim; ++s) {
          const auto us = static_cast<std::uint64_t>(s);
          if (in_range(us) && in_range(us ^ flip)) {
            t.emplace_back(static_cast<int>(us ^ flip), static_cast<int>(s), h);
          }
        }
      }
    }
  }
  return from_triplets(dim, dim, t);
}

// --- AKLT -----------------------------------------------------------------

SpinOneOperators spin_one_operators() {
  const double r = std::sqrt(2.0);
  CMat sp = CMat::Zero(3, 3);  // raising: index 1 (m=0) -> 0 (m=+1), 2 -> 1
  sp(0, 1) = r;
  sp(1, 2) = r;
  const CMat sm = sp.adjoint();
  SpinOneOperators ops;
  ops.sx = 0.5 * (sp + sm);
  ops.sy = cplx{0.0, -0.5} * (sp - sm);
  ops.sz = CMat::Zero(3, 3);
  ops.sz(0, 0) = 1.0;
  ops.sz(2, 2) = -1.0;
  return ops;
}

CMat spin_two_projector() {
  const auto s = spin_one_operators();
  const CMat id = CMat::Identity(3, 3);
  auto kron = [](const CMat& a, const CMat& b) {
    // Two-site index la + 3 * lb: site a is the fast index.
    CMat out(9, 9);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) out.block(i * 3, j * 3, 3, 3) = b(i, j) * a;
    return out;
  };
  CMat total = CMat::Zero(9, 9);
  for (const CMat* op : {&s.sx, &s.sy, &s.sz}) {
    const CMat st = kron(*op, id) + kron(id, *op);
    total += st * st;
  }
  CMat proj = CMat::Identity(9, 9);
  for (int sp : {0, 1}) {
    const double c = sp * (sp + 1.0);
    proj = proj * (total - c * CMat::Identity(9, 9)) / (6.0 - c);
  }
  return proj;
}

JumpSet build_aklt_model(int n_spins) {
  if (n_spins < 3) throw InvalidParams("AKLT chain needs at least 3 spins");
  if (n_spins > kMaxAkltSpins) {
    throw DimensionOverflow("AKLT chain limited to " + std::to_string(kMaxAkltSpins) + " spins");
  }
  const auto s = spin_one_operators();
  const CMat p2 = spin_two_projector();
  const CMat id = CMat::Identity(3, 3);
  auto on_first = [&](const CMat& a) {
    CMat out(9, 9);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) out.block(i * 3, j * 3, 3, 3) = id(i, j) * a;
    return out;
  };
  auto on_second = [&](const CMat& b) {
    CMat out(9, 9);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) out.block(i * 3, j * 3, 3, 3) = b(i, j) * id;
    return out;
  };
  JumpSet jumps;
  for (int site = 0; site < n_spins; ++site) {
    const int next = (site + 1) % n_spins;
    for (const CMat* a : {&s.sx, &s.sy}) {
      jumps.push_back(embed_two_site(on_first(*a) * p2, n_spins, 3, site, next));
      jumps.push_back(embed_two_site(on_second(*a) * p2, n_spins, 3, site, next));
    }
  }
  return jumps;
}

CVec aklt_state(int n_spins) {
  if (n_spins < 2) throw InvalidParams("AKLT state needs at least 2 spins");
  // Local matrices for m = +1, 0, -1 (local index 0, 1, 2).
  std::array<Eigen::Matrix2cd, 3> a;
  a[0] << 0, std::sqrt(2.0 / 3.0), 0, 0;
  a[1] << -std::sqrt(1.0 / 3.0), 0, 0, std::sqrt(1.0 / 3.0);
  a[2] << 0, 0, -std::sqrt(2.0 / 3.0), 0;
  Index dim = 1;
  for (int i = 0; i < n_spins; ++i) dim *= 3;
  CVec psi(dim);
  for (Index s = 0; s < dim; ++s) {
    Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
    Index rest = s;
    for (int site = 0; site < n_spins; ++site) {
      prod = prod * a[static_cast<std::size_t>(rest % 3)];
      rest /= 3;
    }
    psi[s] = prod.trace();
  }
  return psi / psi.norm();
}

// --- XX chain ---------------------------------------------------------------

SectorSpec magnetization_sector(int n_spins, double sz) {
  const double ups = sz + 0.5 * n_spins;
  const auto k = static_cast<int>(std::llround(ups));
  if (std::abs(ups - k) > 1e-9 || k < 0 || k > n_spins) {
    throw InvalidParams("magnetization not reachable for this chain length");
  }
  SectorSpec sector{sz, {}};
  const Index dim = Index{1} << n_spins;
  for (Index s = 0; s < dim; ++s) {
    if (std::popcount(static_cast<std::uint64_t>(s)) == k) sector.indices.push_back(s);
  }
  return sector;
}

XxModel build_xx_dephasing(int n_spins) {
  if (n_spins < 4) throw InvalidParams("XX chain needs at least 4 spins");
  if (n_spins > kMaxXxSpins) {
    throw DimensionOverflow("XX chain limited to " + std::to_string(kMaxXxSpins) + " spins");
  }
  const Index dim = Index{1} << n_spins;
  XxModel model;
  model.h = OperatorMatrix(dim, dim);
  for (int site = 0; site + 1 < n_spins; ++site) {
    // s^x s^x + s^y s^y = (sigma^+ sigma^- + sigma^- sigma^+) / 2
    const OperatorMatrix hop = qubit_operator(n_spins, site, Pauli::kPlus) *
                               qubit_operator(n_spins, site + 1, Pauli::kMinus);
    model.h += 0.5 * (hop + OperatorMatrix(hop.adjoint()));
  }
  model.h.prune(cplx{0.0, 0.0});
  for (int site = 0; site < n_spins; ++site) {
    model.jumps.push_back(0.5 * qubit_operator(n_spins, site, Pauli::kZ));
  }
  model.sector = magnetization_sector(n_spins, n_spins % 2 == 0 ? 0.0 : -0.5);
  return model;
}

OperatorMatrix sector_restrict(const OperatorMatrix& op, const SectorSpec& sector, double tol) {
  if (op.rows() != op.cols()) throw ShapeMismatch("operator is not square");
  std::vector<int> position(static_cast<std::size_t>(op.rows()), -1);
  for (std::size_t k = 0; k < sector.indices.size(); ++k) {
    const Index idx = sector.indices[k];
    if (idx < 0 || idx >= op.rows()) throw ShapeMismatch("sector index outside operator");
    position[static_cast<std::size_t>(idx)] = static_cast<int>(k);
  }
  const auto n = static_cast<Index>(sector.indices.size());
  std::vector<ComplexTriplet> t;
  for (int c = 0; c < op.outerSize(); ++c) {
    for (OperatorMatrix::InnerIterator it(op, c); it; ++it) {
      const int pr = position[static_cast<std::size_t>(it.row())];
      const int pc = position[static_cast<std::size_t>(c)];
      if ((pr < 0) != (pc < 0)) {
        if (std::abs(it.value()) > tol) {
          throw LeakageError("operator couples the sector to its complement (|element| = " +
                             std::to_string(std::abs(it.value())) + ")");
        }
        continue;
      }
      if (pr >= 0) t.emplace_back(pr, pc, it.value());
    }
  }
  return from_triplets(n, n, t);
}

CVec pure_state_operator(const CVec& psi) {
  const CMat rho = psi * psi.adjoint();
  return vectorize(rho);
}

CVec basis_projector(Index hilbert_dim, Index index) {
  CVec v = CVec::Zero(hilbert_dim * hilbert_dim);
  v[index * hilbert_dim + index] = 1.0;
  return v;
}

}  // namespace aess
