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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace aess {

using cplx = std::complex<double>;
using Index = Eigen::Index;

using RealSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using ComplexSparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using RealTriplet = Eigen::Triplet<double, int>;
using ComplexTriplet = Eigen::Triplet<cplx, int>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Maximum absolute column sum (induced 1-norm).
template <typename Scalar>
double one_norm(const Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>& a) {
  double best = 0.0;
  for (int c = 0; c < a.outerSize(); ++c) {
    double s = 0.0;
    for (typename Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>::InnerIterator it(a, c); it; ++it) {
      s += std::abs(it.value());
    }
    best = std::max(best, s);
  }
  return best;
}

/// Maximum absolute row sum (induced infinity-norm).
template <typename Scalar>
double inf_norm(const Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>& a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (int c = 0; c < a.outerSize(); ++c) {
    for (typename Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>::InnerIterator it(a, c); it; ++it) {
      rows[it.row()] += std::abs(it.value());
    }
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

}  // namespace aess
