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

#include "aess/krylov_schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "aess/errors.hpp"

namespace aess {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
  double c;
  cplx s;
};

// Rotation with [c s; -conj(s) c] [f; g] = [r; 0].
Givens make_givens(cplx f, cplx g) {
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return {1.0, 0.0};
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  const double nrm = std::hypot(af, ag);
  return {af / nrm, (f / af) * std::conj(g) / nrm};
}

// x <- c x + s y,  y <- c y - conj(s) x
template <typename X, typename Y>
void rotate(X&& x, Y&& y, double c, cplx s) {
  for (Index i = 0; i < x.size(); ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = c * yi - std::conj(s) * xi;
  }
}

CVec random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = cplx(nd(rng), nd(rng));
  return v;
}

// Two passes of classical Gram-Schmidt against `locked` and the first k
// columns of `v`; returns the coefficients on `v`.
CVec orthogonalize(CVec& w, const CMat& locked, const CMat& v, Index k) {
  CVec h = CVec::Zero(k);
  for (int pass = 0; pass < 2; ++pass) {
    if (locked.cols() > 0) w.noalias() -= locked * (locked.adjoint() * w);
    if (k > 0) {
      const CVec c = v.leftCols(k).adjoint() * w;
      w.noalias() -= v.leftCols(k) * c;
      h += c;
    }
  }
  return h;
}

// Eigenvector of upper triangular t for diagonal entry i, unit norm.
CVec triangular_eigenvector(const CMat& t, Index i, double small) {
  CVec y = CVec::Zero(t.rows());
  y[i] = 1.0;
  const cplx lam = t(i, i);
  for (Index j = i - 1; j >= 0; --j) {
    cplx acc = 0.0;
    for (Index l = j + 1; l <= i; ++l) acc += t(j, l) * y[l];
    cplx d = t(j, j) - lam;
    if (std::abs(d) < small) d = small;
    y[j] = -acc / d;
  }
  return y / y.norm();
}

}  // namespace

void schur_swap(CMat& t, CMat& u, Index k) {
  const Index n = t.rows();
  const cplx t11 = t(k, k), t22 = t(k + 1, k + 1);
  const Givens g = make_givens(t(k, k + 1), t22 - t11);
  if (k + 2 < n) {
    rotate(t.row(k).tail(n - k - 2), t.row(k + 1).tail(n - k - 2), g.c, g.s);
  }
  if (k > 0) rotate(t.col(k).head(k), t.col(k + 1).head(k), g.c, std::conj(g.s));
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  rotate(u.col(k), u.col(k + 1), g.c, std::conj(g.s));
}

void schur_sort(CMat& t, CMat& u, const std::function<double(cplx)>& score) {
  const Index n = t.rows();
  for (Index i = 0; i < n; ++i) {
    Index best = i;
    for (Index j = i + 1; j < n; ++j) {
      if (score(t(j, j)) > score(t(best, best))) best = j;
    }
    for (Index j = best; j > i; --j) schur_swap(t, u, j - 1);
  }
}

KrylovResult krylov_schur(const LinearMap& op, Index n, const KrylovOptions& opts,
                          const CMat& locked) {
  if (locked.cols() > 0 && locked.rows() != n) {
    throw ShapeMismatch("locked subspace has the wrong row count");
  }
  const Index avail = n - locked.cols();
  int nev = opts.nev;
  if (nev < 1 || avail < 1) throw InvalidParams("Krylov-Schur needs nev >= 1 and a nonempty space");
  if (nev > avail) nev = static_cast<int>(avail);
  Index m = opts.ncv > 0 ? opts.ncv : std::max<Index>(2 * nev + 1, 24);
  m = std::min(m, avail);
  if (m <= nev && m < avail) m = std::min<Index>(nev + 1, avail);

  const auto score = [&](cplx z) {
    return opts.which == Which::kLargestReal ? z.real() : std::abs(z);
  };

  std::mt19937_64 rng(opts.seed);
  CMat v = CMat::Zero(n, m + 1);
  CMat h = CMat::Zero(m + 1, m);
  {
    CVec w = random_vector(n, rng);
    orthogonalize(w, locked, v, 0);
    v.col(0) = w / w.norm();
  }

  KrylovResult out;
  Index k = 0;
  for (int restart = 0;; ++restart) {
    for (Index j = k; j < m; ++j) {
      CVec w = op(v.col(j));
      ++out.matvecs;
      const double wn = w.norm();
      const CVec c = orthogonalize(w, locked, v, j + 1);
      h.col(j).head(j + 1) = c;
      double beta = w.norm();
      if (beta <= 1e-12 * std::max(wn, c.norm()) || j + 1 >= avail) {
        // Invariant subspace: continue from a fresh direction.
        h(j + 1, j) = 0.0;
        w = random_vector(n, rng);
        orthogonalize(w, locked, v, j + 1);
        beta = w.norm();
        v.col(j + 1) = j + 1 < avail && beta > 0.0 ? CVec(w / beta) : CVec(CVec::Zero(n));
      } else {
        h(j + 1, j) = beta;
        v.col(j + 1) = w / beta;
      }
    }

    Eigen::ComplexSchur<CMat> schur(h.topRows(m));
    if (schur.info() != Eigen::Success) throw ConvergenceFailure("Schur decomposition failed");
    CMat t = schur.matrixT();
    CMat u = schur.matrixU();
    schur_sort(t, u, score);
    const Eigen::RowVectorXcd b = h.row(m) * u;

    double scale = 0.0;
    for (Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(t(i, i)));
    const double small = std::max(kEps * scale, std::numeric_limits<double>::min());

    Eigen::VectorXd res(nev);
    int nconv = 0;
    for (int i = 0; i < nev; ++i) {
      const CVec y = triangular_eigenvector(t, i, small);
      res[i] = std::abs((b.head(i + 1) * y.head(i + 1))(0, 0));
      if (res[i] <= opts.tol * std::max(scale, small)) ++nconv;
    }

    if (nconv >= nev || restart >= opts.max_restarts) {
      if (nconv < nev) {
        throw ConvergenceFailure("Krylov-Schur: " + std::to_string(nconv) + " of " +
                                 std::to_string(nev) + " eigenpairs converged after " +
                                 std::to_string(restart) + " restarts");
      }
      out.values.resize(nev);
      out.vectors.resize(n, nev);
      out.residuals = res;
      const CMat basis = v.leftCols(m) * u;
      for (int i = 0; i < nev; ++i) {
        const CVec y = triangular_eigenvector(t, i, small);
        CVec x = basis * y;
        out.values[i] = t(i, i);
        out.vectors.col(i) = x / x.norm();
      }
      out.restarts = restart;
      return out;
    }

    const Index p = nev + (m - nev) / 2;
    const CMat kept = v.leftCols(m) * u.leftCols(p);
    v.leftCols(p) = kept;
    v.col(p) = v.col(m);
    h.setZero();
    h.topLeftCorner(p, p) = t.topLeftCorner(p, p).triangularView<Eigen::Upper>();
    h.row(p).head(p) = b.head(p);
    k = p;
  }
}

}  // namespace aess
