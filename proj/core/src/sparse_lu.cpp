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

#include "aess/sparse_lu.hpp"

#include <string>
#include <vector>

#include <suitesparse/umfpack.h>

#include "aess/errors.hpp"

namespace aess {

namespace {

template <typename Scalar>
Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int> shifted(
    const Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>& a, Scalar shift) {
  if (a.rows() != a.cols()) throw ShapeMismatch("LU factorization needs a square matrix");
  Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int> id(a.rows(), a.cols());
  id.setIdentity();
  Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int> s = a - shift * id;
  s.makeCompressed();
  return s;
}

void check_status(SuiteSparse_long status, const char* stage) {
  if (status == UMFPACK_WARNING_singular_matrix) {
    throw ConvergenceFailure(std::string("sparse LU: singular matrix at ") + stage +
                             "; move the shift away from the spectrum");
  }
  if (status != UMFPACK_OK) {
    throw ConvergenceFailure(std::string("sparse LU: UMFPACK error ") + std::to_string(status) +
                             " at " + stage);
  }
}

}  // namespace

struct ShiftedLu::Impl {
  bool complex = false;
  Index n = 0;
  std::vector<SuiteSparse_long> ap, ai;
  std::vector<double> ax;  // real values, or interleaved (re, im) pairs
  void* numeric = nullptr;

  ~Impl() {
    if (!numeric) return;
    if (complex) {
      umfpack_zl_free_numeric(&numeric);
    } else {
      umfpack_dl_free_numeric(&numeric);
    }
  }

  template <typename Scalar>
  void copy_structure(const Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>& m) {
    n = m.rows();
    ap.assign(m.outerIndexPtr(), m.outerIndexPtr() + m.outerSize() + 1);
    ai.assign(m.innerIndexPtr(), m.innerIndexPtr() + m.nonZeros());
  }

  void factor() {
    void* symbolic = nullptr;
    SuiteSparse_long st;
    if (complex) {
      st = umfpack_zl_symbolic(n, n, ap.data(), ai.data(), ax.data(), nullptr, &symbolic, nullptr,
                               nullptr);
      check_status(st, "symbolic");
      st = umfpack_zl_numeric(ap.data(), ai.data(), ax.data(), nullptr, symbolic, &numeric, nullptr,
                              nullptr);
      umfpack_zl_free_symbolic(&symbolic);
    } else {
      st = umfpack_dl_symbolic(n, n, ap.data(), ai.data(), ax.data(), &symbolic, nullptr, nullptr);
      check_status(st, "symbolic");
      st = umfpack_dl_numeric(ap.data(), ai.data(), ax.data(), symbolic, &numeric, nullptr, nullptr);
      umfpack_dl_free_symbolic(&symbolic);
    }
    check_status(st, "numeric");
  }

  CVec solve(const CVec& b, bool adjoint) const {
    if (b.size() != n) throw ShapeMismatch("right-hand side length differs from LU dimension");
    CVec x(n);
    if (complex) {
      // std::complex<double> is layout-compatible with packed (re, im) pairs.
      const SuiteSparse_long st = umfpack_zl_solve(
          adjoint ? UMFPACK_At : UMFPACK_A, ap.data(), ai.data(), ax.data(), nullptr,
          reinterpret_cast<double*>(x.data()), nullptr, reinterpret_cast<const double*>(b.data()),
          nullptr, numeric, nullptr, nullptr);
      check_status(st, "solve");
      return x;
    }
    // Real factors: A^H = A^T, and real and imaginary parts decouple.
    Vec re = b.real(), im = b.imag(), xr(n), xi(n);
    const int sys = adjoint ? UMFPACK_At : UMFPACK_A;
    check_status(umfpack_dl_solve(sys, ap.data(), ai.data(), ax.data(), xr.data(), re.data(),
                                  numeric, nullptr, nullptr),
                 "solve");
    if (im.cwiseAbs().maxCoeff() > 0.0) {
      check_status(umfpack_dl_solve(sys, ap.data(), ai.data(), ax.data(), xi.data(), im.data(),
                                    numeric, nullptr, nullptr),
                   "solve");
    } else {
      xi.setZero();
    }
    x.real() = xr;
    x.imag() = xi;
    return x;
  }
};

ShiftedLu::ShiftedLu(const RealSparse& a, double shift) : impl_(std::make_unique<Impl>()) {
  const RealSparse s = shifted(a, shift);
  impl_->copy_structure(s);
  impl_->ax.assign(s.valuePtr(), s.valuePtr() + s.nonZeros());
  impl_->factor();
}

ShiftedLu::ShiftedLu(const ComplexSparse& a, cplx shift) : impl_(std::make_unique<Impl>()) {
  const ComplexSparse s = shifted(a, shift);
  impl_->complex = true;
  impl_->copy_structure(s);
  impl_->ax.resize(2 * static_cast<std::size_t>(s.nonZeros()));
  for (Index k = 0; k < s.nonZeros(); ++k) {
    impl_->ax[2 * k] = s.valuePtr()[k].real();
    impl_->ax[2 * k + 1] = s.valuePtr()[k].imag();
  }
  impl_->factor();
}

ShiftedLu::~ShiftedLu() = default;
ShiftedLu::ShiftedLu(ShiftedLu&&) noexcept = default;
ShiftedLu& ShiftedLu::operator=(ShiftedLu&&) noexcept = default;

Index ShiftedLu::dim() const { return impl_->n; }
CVec ShiftedLu::solve(const CVec& b) const { return impl_->solve(b, false); }
CVec ShiftedLu::solve_adjoint(const CVec& b) const { return impl_->solve(b, true); }

}  // namespace aess
