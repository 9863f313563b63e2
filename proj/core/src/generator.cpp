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

#include "aess/generator.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <type_traits>

#include "aess/errors.hpp"

namespace aess {

CVec GeneratorInfo::trace_vector() const {
  if (basis == BasisKind::kClassical) return CVec::Ones(hilbert_dim);
  CVec t = CVec::Zero(hilbert_dim * hilbert_dim);
  for (Index i = 0; i < hilbert_dim; ++i) t[i * hilbert_dim + i] = 1.0;
  return t;
}

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_len(Index n, const CVec& v) {
  if (v.size() != n) throw ShapeMismatch("vector length differs from generator dimension");
}

}  // namespace

bool is_assembled(const AnyGenerator& g) { return !std::holds_alternative<MatrixFreeGenerator>(g); }

const GeneratorInfo& info_of(const AnyGenerator& g) {
  return std::visit([](const auto& x) -> const GeneratorInfo& { return x.info; }, g);
}

Index dim_of(const AnyGenerator& g) {
  return std::visit([](const auto& x) { return x.dim(); }, g);
}

CVec apply(const AnyGenerator& g, const CVec& v) {
  return std::visit(Overloaded{
                        [&](const SparseGenerator& x) -> CVec {
                          check_len(x.dim(), v);
                          CVec out(v.size());
                          out.real() = x.matrix * v.real();
                          out.imag() = x.matrix * v.imag();
                          return out;
                        },
                        [&](const LiouvillianMatrix& x) -> CVec {
                          check_len(x.dim(), v);
                          return x.matrix * v;
                        },
                        [&](const MatrixFreeGenerator& x) -> CVec {
                          check_len(x.dim(), v);
                          return x.op->apply(v);
                        },
                    },
                    g);
}

CVec apply_adjoint(const AnyGenerator& g, const CVec& v) {
  return std::visit(Overloaded{
                        [&](const SparseGenerator& x) -> CVec {
                          check_len(x.dim(), v);
                          CVec out(v.size());
                          out.real() = x.matrix.transpose() * v.real();
                          out.imag() = x.matrix.transpose() * v.imag();
                          return out;
                        },
                        [&](const LiouvillianMatrix& x) -> CVec {
                          check_len(x.dim(), v);
                          return x.matrix.adjoint() * v;
                        },
                        [&](const MatrixFreeGenerator& x) -> CVec {
                          check_len(x.dim(), v);
                          return x.op->apply_adjoint(v);
                        },
                    },
                    g);
}

double one_norm(const AnyGenerator& g) {
  return std::visit(Overloaded{
                        [](const MatrixFreeGenerator& x) { return x.op->norm_bound(); },
                        [](const auto& x) { return one_norm(x.matrix); },
                    },
                    g);
}

double max_row_norm(const AnyGenerator& g) {
  return std::visit(Overloaded{
                        [](const MatrixFreeGenerator& x) { return x.op->inf_norm_bound(); },
                        [](const auto& x) { return inf_norm(x.matrix); },
                    },
                    g);
}

AnyGenerator add(const AnyGenerator& a, const AnyGenerator& b) {
  if (dim_of(a) != dim_of(b)) throw ShapeMismatch("generators differ in dimension");
  if (const auto* x = std::get_if<SparseGenerator>(&a)) {
    if (const auto* y = std::get_if<SparseGenerator>(&b)) {
      SparseGenerator s{RealSparse(x->matrix + y->matrix), x->info};
      s.matrix.prune(0.0);
      return s;
    }
  }
  if (const auto* x = std::get_if<LiouvillianMatrix>(&a)) {
    if (const auto* y = std::get_if<LiouvillianMatrix>(&b)) {
      LiouvillianMatrix s{ComplexSparse(x->matrix + y->matrix), x->info};
      s.matrix.prune(cplx(0.0));
      return s;
    }
  }
  throw KindMismatch("only assembled generators of the same flavour can be added");
}

CMat to_dense(const AnyGenerator& g) {
  return std::visit(Overloaded{
                        [](const SparseGenerator& x) -> CMat { return Mat(x.matrix).cast<cplx>(); },
                        [](const LiouvillianMatrix& x) -> CMat { return CMat(x.matrix); },
                        [](const MatrixFreeGenerator& x) -> CMat {
                          const Index n = x.dim();
                          CMat out(n, n);
                          CVec e = CVec::Zero(n);
                          for (Index j = 0; j < n; ++j) {
                            e[j] = 1.0;
                            out.col(j) = x.op->apply(e);
                            e[j] = 0.0;
                          }
                          return out;
                        },
                    },
                    g);
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_matrix_market(std::ostream& out, const RealSparse& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int c = 0; c < m.outerSize(); ++c) {
    for (RealSparse::InnerIterator it(m, c); it; ++it) {
      out << it.row() + 1 << ' ' << c + 1 << ' ';
      put(out, it.value());
      out << '\n';
    }
  }
}

void write_matrix_market(std::ostream& out, const ComplexSparse& m) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int c = 0; c < m.outerSize(); ++c) {
    for (ComplexSparse::InnerIterator it(m, c); it; ++it) {
      out << it.row() + 1 << ' ' << c + 1 << ' ';
      put(out, it.value().real());
      out << ' ';
      put(out, it.value().imag());
      out << '\n';
    }
  }
}

void write_matrix_market(const std::string& path, const AnyGenerator& g) {
  if (!is_assembled(g)) throw KindMismatch("matrix-free generators cannot be exported");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  std::visit(Overloaded{
                 [](const MatrixFreeGenerator&) {
                   throw KindMismatch("matrix-free generators cannot be exported");
                 },
                 [&](const auto& x) { write_matrix_market(out, x.matrix); },
             },
             g);
}

}  // namespace aess
