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

#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>

#include "aess/linalg.hpp"

namespace aess {

/// How a generator's vector space maps onto operators.
enum class BasisKind {
  /// Entry i is the population of classical state i (a diagonal operator).
  kClassical,
  /// Column-stacked D x D operator: rho(r, c) sits at index c * D + r.
  kVectorized,
};

struct GeneratorInfo {
  std::string model;
  double w = 1.0;
  BasisKind basis = BasisKind::kClassical;
  Index hilbert_dim = 0;
  std::string basis_doc;

  /// Vector of the trace functional: Tr[X] = trace_vector()^H vec(X).
  CVec trace_vector() const;
  Index vector_dim() const {
    return basis == BasisKind::kClassical ? hilbert_dim : hilbert_dim * hilbert_dim;
  }
};

/// Real generator of a classical Markov process (columns are source states).
struct SparseGenerator {
  RealSparse matrix;
  GeneratorInfo info;

  Index dim() const { return matrix.rows(); }
};

/// Complex superoperator in the column-stacking convention.
struct LiouvillianMatrix {
  ComplexSparse matrix;
  GeneratorInfo info;

  Index dim() const { return matrix.rows(); }
};

/// Linear operator known only through its action.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index dim() const = 0;
  virtual CVec apply(const CVec& v) const = 0;
  virtual CVec apply_adjoint(const CVec& v) const = 0;
  /// Upper bound on the induced 1-norm.
  virtual double norm_bound() const = 0;
  /// Upper bound on the induced infinity-norm.
  virtual double inf_norm_bound() const = 0;
};

/// Generator applied without assembling its matrix.
struct MatrixFreeGenerator {
  std::shared_ptr<const LinearOperator> op;
  GeneratorInfo info;

  Index dim() const { return op->dim(); }
};

/// Any generator flavour; the spectral layer accepts all of them. Shift-invert
/// needs an assembled matrix, so matrix-free generators use direct iteration.
using AnyGenerator = std::variant<SparseGenerator, LiouvillianMatrix, MatrixFreeGenerator>;

bool is_assembled(const AnyGenerator& g);

const GeneratorInfo& info_of(const AnyGenerator& g);
Index dim_of(const AnyGenerator& g);
CVec apply(const AnyGenerator& g, const CVec& v);
CVec apply_adjoint(const AnyGenerator& g, const CVec& v);
double one_norm(const AnyGenerator& g);
/// Maximum absolute row sum (an upper bound for matrix-free generators).
double max_row_norm(const AnyGenerator& g);
/// Sum of two generators of the same flavour and dimension.
AnyGenerator add(const AnyGenerator& a, const AnyGenerator& b);
/// Dense complex copy; only for small dimensions (matrix-free generators are
/// probed column by column).
CMat to_dense(const AnyGenerator& g);

/// Matrix Market coordinate export ("real general" or "complex general").
void write_matrix_market(std::ostream& out, const RealSparse& m);
void write_matrix_market(std::ostream& out, const ComplexSparse& m);
/// Throws KindMismatch for matrix-free generators.
void write_matrix_market(const std::string& path, const AnyGenerator& g);

}  // namespace aess
