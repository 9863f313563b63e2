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

#include "aess/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "aess/errors.hpp"
#include "aess/krylov_schur.hpp"
#include "aess/quantum.hpp"
#include "aess/sparse_lu.hpp"

namespace aess {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kClusterTol = 1e-8;
constexpr double kNearDefectiveTol = 1e-6;
constexpr double kMaxCond = 1e12;
// Full biorthonormality verification is quadratic in the number of modes
// times the dimension; beyond this many modes only the slowest are checked.
constexpr Index kFullCheckModes = 256;

struct Mode {
  cplx value;
  CVec r, l;
  bool has_left = false;
  bool target = false;
};

void normalize_right(CVec& r) {
  r /= r.norm();
  Index idx = 0;
  r.cwiseAbs().maxCoeff(&idx);
  const cplx p = r[idx];
  if (std::abs(p) > 0.0) r *= std::conj(p) / std::abs(p);
}

bool is_purely_imaginary(cplx z) {
  return std::abs(z.real()) <= kZeroModeTol && std::abs(z.imag()) > kZeroModeTol;
}

// Solves (lambda - m0) a = rhs, tolerating a singular system at an exact
// coalescence.
CVec solve_coupling(const CMat& m0, cplx lambda, const CVec& rhs) {
  const Index d = m0.rows();
  const CMat a = lambda * CMat::Identity(d, d) - m0;
  return a.completeOrthogonalDecomposition().solve(rhs);
}

CMat orthonormal_columns(const CMat& x) {
  Eigen::HouseholderQR<CMat> qr(x);
  const CMat r = qr.matrixQR().topRows(x.cols()).triangularView<Eigen::Upper>();
  double big = 0.0;
  for (Index i = 0; i < r.rows(); ++i) big = std::max(big, std::abs(r(i, i)));
  for (Index i = 0; i < r.rows(); ++i) {
    if (std::abs(r(i, i)) <= 1e-10 * big || big == 0.0) {
      throw InvalidParams("target vectors are linearly dependent");
    }
  }
  return qr.householderQ() * CMat::Identity(x.rows(), x.cols());
}

// Dense right-multiplication L * X for any generator flavour.
CMat apply_block(const AnyGenerator& g, const CMat& x) {
  if (const auto* s = std::get_if<SparseGenerator>(&g)) {
    CMat out(x.rows(), x.cols());
    out.real() = s->matrix * Mat(x.real());
    out.imag() = s->matrix * Mat(x.imag());
    return out;
  }
  if (const auto* c = std::get_if<LiouvillianMatrix>(&g)) return c->matrix * x;
  CMat out(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) out.col(j) = aess::apply(g, x.col(j));
  return out;
}

bool is_real(const CMat& x) { return x.imag().cwiseAbs().maxCoeff() == 0.0; }

void sort_modes(std::vector<Mode>& modes, double scale) {
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.value.real() > b.value.real(); });
  const double tie = 1e-12 * scale;
  std::size_t i = 0;
  while (i < modes.size()) {
    std::size_t j = i + 1;
    while (j < modes.size() &&
           std::abs(modes[j].value.real() - modes[j - 1].value.real()) <= tie) {
      ++j;
    }
    std::stable_sort(modes.begin() + static_cast<std::ptrdiff_t>(i),
                     modes.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const Mode& a, const Mode& b) { return a.value.imag() > b.value.imag(); });
    i = j;
  }
}

std::vector<Mode> dense_modes(const AnyGenerator& g, const CMat& q, const CMat& m0,
                              bool* need_target_left) {
  const Index n = dim_of(g);
  const Index d = q.cols();
  std::vector<Mode> modes;
  const bool real_path = std::holds_alternative<SparseGenerator>(g) && (d == 0 || is_real(q));

  if (d == 0) {
    DenseEig e = real_path ? dense_eig(Mat(to_dense(g).real())) : dense_eig(to_dense(g));
    for (Index j = 0; j < n; ++j) {
      modes.push_back({e.values[j], e.right.col(j), e.left.col(j), true, false});
    }
    return modes;
  }

  // Orthonormal complement of the targets from a full Householder basis.
  CMat qc;
  if (real_path) {
    Eigen::HouseholderQR<Mat> qr(Mat(q.real()));
    const Mat full = qr.householderQ();
    qc = full.rightCols(n - d).cast<cplx>();
  } else {
    Eigen::HouseholderQR<CMat> qr(q);
    const CMat full = qr.householderQ();
    qc = full.rightCols(n - d);
  }
  const CMat lqc = apply_block(g, qc);
  const CMat b = qc.adjoint() * lqc;
  DenseEig e = real_path ? dense_eig(Mat(b.real())) : dense_eig(b);
  const CMat qh_lqc = q.adjoint() * lqc;
  for (Index j = 0; j < n - d; ++j) {
    Mode m;
    m.value = e.values[j];
    const CVec coupling = qh_lqc * e.right.col(j);
    m.r = qc * e.right.col(j) + q * solve_coupling(m0, m.value, coupling);
    m.l = qc * e.left.col(j);
    m.has_left = true;
    modes.push_back(std::move(m));
  }
  Eigen::ComplexEigenSolver<CMat> es(m0);
  for (Index j = 0; j < d; ++j) {
    modes.push_back({es.eigenvalues()[j], q * es.eigenvectors().col(j), CVec(), false, true});
  }
  *need_target_left = true;
  return modes;
}

std::vector<Mode> iterative_modes(const AnyGenerator& g, const SpectralOptions& opts,
                                  SolveMode mode, const CMat& q, const CMat& m0, double scale) {
  const Index n = dim_of(g);
  const Index d = q.cols();
  KrylovOptions ko;
  ko.nev = opts.k;
  ko.ncv = opts.ncv;
  ko.tol = opts.tol;
  ko.max_restarts = opts.max_restarts;

  std::optional<ShiftedLu> lu;
  LinearMap op, adj;
  if (mode == SolveMode::kShiftInvert) {
    if (const auto* s = std::get_if<SparseGenerator>(&g)) {
      lu.emplace(s->matrix, opts.shift);
    } else if (const auto* c = std::get_if<LiouvillianMatrix>(&g)) {
      lu.emplace(c->matrix, cplx(opts.shift));
    } else {
      throw KindMismatch("shift-invert needs an assembled generator");
    }
    op = [&lu](const CVec& x) { return lu->solve(x); };
    adj = [&lu](const CVec& x) { return lu->solve_adjoint(x); };
    ko.which = Which::kLargestMagnitude;
  } else {
    op = [&g](const CVec& x) { return aess::apply(g, x); };
    adj = [&g](const CVec& x) { return aess::apply_adjoint(g, x); };
    ko.which = Which::kLargestReal;
  }

  std::vector<Mode> modes;
  const KrylovResult kr = krylov_schur(op, n, ko, q);
  for (Index i = 0; i < kr.values.size(); ++i) {
    Mode m;
    const CVec y = kr.vectors.col(i);
    const CVec ly = aess::apply(g, y);
    m.value = y.dot(ly);  // Rayleigh quotient; y is orthogonal to the targets
    m.r = d > 0 ? CVec(y + q * solve_coupling(m0, m.value, q.adjoint() * ly)) : y;
    modes.push_back(std::move(m));
  }

  if (opts.compute_left) {
    // L^H leaves the complement of the targets invariant, so the same locked
    // search yields the left vectors of the non-target modes.
    KrylovOptions ka = ko;
    ka.nev = std::min<Index>(ko.nev + 2, n - d);
    ka.seed = ko.seed + 1;
    const KrylovResult kl = krylov_schur(adj, n, ka, q);
    std::vector<cplx> lvals(kl.values.size());
    for (Index j = 0; j < kl.values.size(); ++j) {
      const CVec l = kl.vectors.col(j);
      lvals[j] = std::conj(l.dot(aess::apply_adjoint(g, l)));
    }
    std::vector<bool> used(lvals.size(), false);
    for (auto& m : modes) {
      Index best = -1;
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < lvals.size(); ++j) {
        if (used[j]) continue;
        const double dj = std::abs(lvals[j] - m.value);
        if (dj < dist) {
          dist = dj;
          best = static_cast<Index>(j);
        }
      }
      if (best >= 0 && dist <= kNearDefectiveTol * std::max(1.0, std::abs(m.value))) {
        used[best] = true;
        m.l = kl.vectors.col(best);
        m.has_left = true;
      }
    }
  }

  Eigen::ComplexEigenSolver<CMat> es;
  if (d > 0) es.compute(m0);
  for (Index j = 0; j < d; ++j) {
    Mode m{es.eigenvalues()[j], q * es.eigenvectors().col(j), CVec(), false, true};
    if (opts.compute_left && d == 1) {
      // The trace functional is the left vector whenever it is conserved.
      const CVec t = info_of(g).trace_vector();
      const CVec lt = aess::apply_adjoint(g, t);
      if ((lt - std::conj(m.value) * t).norm() <= opts.target_tol * scale * t.norm()) {
        m.l = t;
        m.has_left = true;
      }
    }
    modes.push_back(std::move(m));
  }
  return modes;
}

void check_residuals(const AnyGenerator& g, const SpectralDecomposition& dec, double tol) {
  const double bound = tol * std::max(1.0, dec.norm);
  for (Index i = 0; i < dec.size(); ++i) {
    const cplx lam = dec.values[i];
    const double rr = (aess::apply(g, dec.right.col(i)) - lam * dec.right.col(i)).norm();
    if (rr > bound * dec.right.col(i).norm()) {
      throw ResidualTooLarge("right residual " + std::to_string(rr) + " for mode " +
                             std::to_string(i));
    }
    if (!dec.has_left[i]) continue;
    const double lr =
        (aess::apply_adjoint(g, dec.left.col(i)) - std::conj(lam) * dec.left.col(i)).norm();
    if (lr > bound * dec.left.col(i).norm()) {
      throw ResidualTooLarge("left residual " + std::to_string(lr) + " for mode " +
                             std::to_string(i));
    }
  }
}

// Union-find grouping of eigenvalues closer than `tol` (relative to
// max(1, |lambda|)).
std::vector<std::vector<Index>> group(const CVec& v, const std::vector<Index>& idx, double tol) {
  std::vector<Index> parent(idx.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const cplx la = v[idx[a]], lb = v[idx[b]];
      if (std::abs(la - lb) <= tol * std::max({1.0, std::abs(la), std::abs(lb)})) {
        parent[find(static_cast<Index>(b))] = find(static_cast<Index>(a));
      }
    }
  }
  std::vector<std::vector<Index>> out;
  std::vector<Index> slot(idx.size(), -1);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Index root = find(static_cast<Index>(a));
    if (slot[root] < 0) {
      slot[root] = static_cast<Index>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(idx[a]);
  }
  return out;
}

void biorthonormalize_impl(SpectralDecomposition& dec, bool tolerate) {
  std::vector<Index> with_left;
  for (Index i = 0; i < dec.size(); ++i) {
    if (dec.has_left[i]) with_left.push_back(i);
  }
  dec.near_defective.clear();

  // Distinct but nearly coalesced eigenvalues: skipped and reported.
  std::vector<bool> skip(dec.size(), false);
  for (const auto& c : group(dec.values, with_left, kNearDefectiveTol)) {
    if (c.size() < 2) continue;
    const auto exact = group(dec.values, c, kClusterTol);
    if (exact.size() < 2) continue;
    if (!tolerate) {
      throw NearDefective("eigenvalues within " + std::to_string(kNearDefectiveTol) +
                          " of each other are not separable");
    }
    dec.near_defective.push_back(c);
    for (Index i : c) skip[i] = true;
  }

  std::vector<Index> active;
  for (Index i : with_left) {
    if (!skip[i]) active.push_back(i);
  }
  for (const auto& c : group(dec.values, active, kClusterTol)) {
    try {
      if (c.size() == 1) {
        const Index i = c[0];
        const cplx s = dec.left.col(i).dot(dec.right.col(i));
        const double cond = dec.left.col(i).norm() * dec.right.col(i).norm() / std::abs(s);
        if (!(cond <= kMaxCond)) throw NearDefective("left/right pair nearly orthogonal");
        dec.left.col(i) /= std::conj(s);
        continue;
      }
      CMat rc(dec.right.rows(), static_cast<Index>(c.size()));
      CMat lc(dec.left.rows(), static_cast<Index>(c.size()));
      for (std::size_t a = 0; a < c.size(); ++a) {
        rc.col(a) = dec.right.col(c[a]);
        lc.col(a) = dec.left.col(c[a]);
      }
      Eigen::HouseholderQR<CMat> qr(rc);
      rc = qr.householderQ() * CMat::Identity(rc.rows(), rc.cols());
      const CMat gram = lc.adjoint() * rc;
      Eigen::JacobiSVD<CMat> svd(gram);
      const auto& sv = svd.singularValues();
      if (!(sv[sv.size() - 1] > 0.0) || sv[0] / sv[sv.size() - 1] > kMaxCond) {
        throw NearDefective("cross-Gram matrix of a degenerate cluster is singular");
      }
      lc = lc * gram.inverse().adjoint();
      for (std::size_t a = 0; a < c.size(); ++a) {
        dec.right.col(c[a]) = rc.col(a);
        dec.left.col(c[a]) = lc.col(a);
      }
    } catch (const NearDefective&) {
      if (!tolerate) throw;
      dec.near_defective.push_back(c);
      for (Index i : c) skip[i] = true;
    }
  }

  std::vector<Index> checked;
  for (Index i : active) {
    if (!skip[i]) checked.push_back(i);
  }
  if (static_cast<Index>(checked.size()) > kFullCheckModes) checked.resize(kFullCheckModes);
  CMat lsel(dec.left.rows(), static_cast<Index>(checked.size()));
  CMat rsel(dec.right.rows(), static_cast<Index>(checked.size()));
  for (std::size_t a = 0; a < checked.size(); ++a) {
    lsel.col(a) = dec.left.col(checked[a]);
    rsel.col(a) = dec.right.col(checked[a]);
  }
  const CMat gram = lsel.adjoint() * rsel;
  const double dev =
      checked.empty()
          ? 0.0
          : (gram - CMat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-8 && !tolerate) {
    throw NearDefective("biorthonormality deviation " + std::to_string(dev));
  }
  const bool all_left = std::all_of(dec.has_left.begin(), dec.has_left.end(), [](bool b) { return b; });
  dec.biorthonormal = all_left && dec.near_defective.empty() && dev <= 1e-8;
}

}  // namespace

DenseEig dense_eig(const CMat& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw ShapeMismatch("eigenproblem needs a square matrix");
  CMat work = a;
  DenseEig out{CVec(n), CMat(n, n), CMat(n, n)};
  if (n == 0) return out;
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n),
                                        work.data(), static_cast<lapack_int>(n), out.values.data(),
                                        out.left.data(), static_cast<lapack_int>(n),
                                        out.right.data(), static_cast<lapack_int>(n));
  if (info != 0) throw ConvergenceFailure("zgeev failed with info " + std::to_string(info));
  return out;
}

DenseEig dense_eig(const Mat& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw ShapeMismatch("eigenproblem needs a square matrix");
  Mat work = a, vl(n, n), vr(n, n);
  Vec wr(n), wi(n);
  DenseEig out{CVec(n), CMat(n, n), CMat(n, n)};
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), wr.data(), wi.data(), vl.data(),
                    static_cast<lapack_int>(n), vr.data(), static_cast<lapack_int>(n));
  if (info != 0) throw ConvergenceFailure("dgeev failed with info " + std::to_string(info));
  for (Index j = 0; j < n; ++j) {
    if (wi[j] == 0.0) {
      out.values[j] = wr[j];
      out.right.col(j) = vr.col(j).cast<cplx>();
      out.left.col(j) = vl.col(j).cast<cplx>();
      continue;
    }
    // Conjugate pair stored as (real part, imaginary part) columns.
    out.values[j] = cplx(wr[j], wi[j]);
    out.values[j + 1] = cplx(wr[j + 1], wi[j + 1]);
    out.right.col(j).real() = vr.col(j);
    out.right.col(j).imag() = vr.col(j + 1);
    out.right.col(j + 1) = out.right.col(j).conjugate();
    out.left.col(j).real() = vl.col(j);
    out.left.col(j).imag() = vl.col(j + 1);
    out.left.col(j + 1) = out.left.col(j).conjugate();
    ++j;
  }
  return out;
}

SpectralDecomposition full_spectrum(const AnyGenerator& g, const SpectralOptions& opts,
                                    const CMat& targets) {
  const Index n = dim_of(g);
  SpectralDecomposition dec;
  dec.info = info_of(g);
  dec.norm = one_norm(g);
  const double scale = std::max(1.0, dec.norm);

  CMat q, m0;
  if (targets.cols() > 0) {
    if (targets.rows() != n) throw ShapeMismatch("target vectors have the wrong length");
    q = orthonormal_columns(targets);
    const CMat lq = apply_block(g, q);
    m0 = q.adjoint() * lq;
    const double res = (lq - q * m0).colwise().norm().maxCoeff();
    if (res > opts.target_tol * scale) {
      throw TrackingLost("target states do not span an invariant subspace (residual " +
                         std::to_string(res) + ")");
    }
  }

  SolveMode mode = opts.mode;
  if (mode == SolveMode::kAuto) {
    if (n <= opts.dense_auto_max) {
      mode = SolveMode::kDense;
    } else {
      mode = is_assembled(g) ? SolveMode::kShiftInvert : SolveMode::kDirect;
    }
  }
  if (mode == SolveMode::kDense && n > opts.dense_max) {
    throw TooLarge("dense eigensolve limited to dimension " + std::to_string(opts.dense_max));
  }
  if (mode != SolveMode::kDense && n - q.cols() <= opts.k + 1) mode = SolveMode::kDense;

  std::vector<Mode> modes;
  bool need_target_left = false;
  if (mode == SolveMode::kDense) {
    modes = dense_modes(g, q, m0, &need_target_left);
    dec.method = "dense";
    dec.complete = true;
  } else {
    modes = iterative_modes(g, opts, mode, q, m0, scale);
    dec.method = mode == SolveMode::kShiftInvert ? "shift-invert" : "direct";
    dec.complete = static_cast<Index>(modes.size()) == n;
  }

  for (auto& m : modes) {
    normalize_right(m.r);
    if (m.has_left) m.l /= m.l.norm();
  }
  sort_modes(modes, scale);

  const Index k = static_cast<Index>(modes.size());
  dec.values.resize(k);
  dec.right.resize(n, k);
  dec.left = CMat::Zero(n, k);
  dec.has_left.assign(k, false);
  for (Index i = 0; i < k; ++i) {
    dec.values[i] = modes[i].value;
    dec.right.col(i) = modes[i].r;
    if (modes[i].has_left) {
      dec.left.col(i) = modes[i].l;
      dec.has_left[i] = true;
    }
    if (modes[i].target) dec.target_modes.push_back(i);
  }

  if (need_target_left && opts.compute_left) {
    // Complete set: the missing left vectors are rows of the inverse of R.
    Eigen::PartialPivLU<CMat> lu(dec.right.adjoint());
    for (Index i : dec.target_modes) {
      CVec e = CVec::Zero(k);
      e[i] = 1.0;
      const CVec l = lu.solve(e);
      if (l.allFinite()) {
        dec.left.col(i) = l / l.norm();
        dec.has_left[i] = true;
      }
    }
  }
  if (!opts.compute_left) std::fill(dec.has_left.begin(), dec.has_left.end(), false);

  check_residuals(g, dec, opts.residual_tol);
  biorthonormalize_impl(dec, true);
  return dec;
}

void biorthonormalize(SpectralDecomposition& dec) { biorthonormalize_impl(dec, false); }

ModeRoles mode_roles(const SpectralDecomposition& dec) {
  ModeRoles roles;
  if (!dec.target_modes.empty()) {
    roles.steady = dec.target_modes;
  } else {
    for (Index i = 0; i < dec.size(); ++i) {
      if (std::abs(dec.values[i]) <= kZeroModeTol) roles.steady.push_back(i);
    }
  }
  if (roles.steady.empty()) throw NoSteadyState("no eigenvalue within 1e-9 of zero");
  for (Index i = 0; i < dec.size(); ++i) {
    if (std::find(roles.steady.begin(), roles.steady.end(), i) != roles.steady.end()) continue;
    if (is_purely_imaginary(dec.values[i])) {
      roles.purely_imaginary = true;
      continue;
    }
    roles.metastable = i;
    break;
  }
  return roles;
}

namespace {

Index require_metastable(const ModeRoles& roles) {
  if (roles.metastable < 0) throw DegenerateCase("no decaying mode in the decomposition");
  return roles.metastable;
}

Index require_unique(const ModeRoles& roles) {
  if (roles.steady.size() != 1) {
    throw DegenerateCase("steady state is " + std::to_string(roles.steady.size()) +
                         "-fold degenerate");
  }
  return roles.steady[0];
}

}  // namespace

double liouvillian_gap(const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  const Index m = require_metastable(roles);
  return std::abs(dec.values[roles.steady[0]].real() - dec.values[m].real());
}

cplx eigen_overlap(const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  const Index s = require_unique(roles);
  const Index m = require_metastable(roles);
  const CVec r0 = dec.right.col(s).normalized();
  const CVec r1 = dec.right.col(m).normalized();
  return r0.dot(r1);
}

double degenerate_overlap(const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  const Index m = require_metastable(roles);
  CMat steady(dec.right.rows(), static_cast<Index>(roles.steady.size()));
  for (std::size_t a = 0; a < roles.steady.size(); ++a) steady.col(a) = dec.right.col(roles.steady[a]);
  const CMat q = orthonormal_columns(steady);
  return (q.adjoint() * dec.right.col(m).normalized()).squaredNorm();
}

TwoLevel effective_two_level(const SpectralDecomposition& dec, const AnyGenerator* g) {
  const ModeRoles roles = mode_roles(dec);
  const Index s = require_unique(roles);
  const Index m = require_metastable(roles);
  const CVec r0 = dec.right.col(s).normalized();
  const CVec r1 = dec.right.col(m).normalized();
  const cplx nu = r0.dot(r1);
  const double nu2 = std::norm(nu);
  if (nu2 > 1.0 - 1e-12) throw OverlapSaturated("|nu|^2 too close to 1 for a stable basis");
  const double root = std::sqrt(1.0 - nu2);
  const cplx l0 = dec.values[s], l1 = dec.values[m];

  TwoLevel out;
  out.formula << l0, (l1 - l0) * nu / root, 0.0, l1;
  out.projected = out.formula;
  if (g) {
    CMat e(r0.size(), 2);
    e.col(0) = r0;
    e.col(1) = (r1 - nu * r0) / root;
    CMat le(r0.size(), 2);
    le.col(0) = aess::apply(*g, e.col(0));
    le.col(1) = aess::apply(*g, e.col(1));
    out.projected = e.adjoint() * le;
    out.discrepancy = (out.projected - out.formula).cwiseAbs().maxCoeff();
    const double bound = 1e-8 * std::max(1.0, out.formula.cwiseAbs().maxCoeff());
    if (out.discrepancy > bound) {
      throw ResidualTooLarge("effective two-level matrix disagrees with direct projection by " +
                             std::to_string(out.discrepancy));
    }
  }
  return out;
}

namespace {

// Steady state scaled to unit trace (left as is when traceless).
CVec unit_trace(const CVec& r0, const CVec& t) {
  const cplx tr = t.dot(r0);
  return std::abs(tr) > 1e-12 ? CVec(r0 / tr) : r0;
}

}  // namespace

EigStructureReport metastable_structure(const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  const Index s = require_unique(roles);
  const Index m = require_metastable(roles);
  if (!dec.has_left[m]) throw InvalidParams("decomposition lacks the metastable left vector");

  EigStructureReport rep;
  const CVec r0 = dec.right.col(s).normalized();
  const CVec r1h = dec.right.col(m).normalized();
  rep.nu = r0.dot(r1h);
  if (std::abs(rep.nu) < 1e-150) {
    throw DegenerateCase("metastable mode orthogonal to the steady state; <r1> = 1 undefined");
  }
  rep.r1 = r1h / rep.nu;
  const CVec dr = rep.r1 - r0;
  rep.dr_norm2 = dr.squaredNorm();
  rep.identity_residual = std::abs(rep.dr_norm2 - (1.0 / std::norm(rep.nu) - 1.0));
  rep.rel_dr = dr.norm() / rep.r1.norm();

  const CVec l = dec.left.col(m);
  rep.l1 = l / std::conj(l.dot(rep.r1));
  const CVec t = dec.info.trace_vector();
  const double dim = static_cast<double>(dec.info.hilbert_dim);
  rep.kappa = t.dot(rep.l1).real() / (dim - 1.0);
  const CVec dl = rep.l1 - rep.kappa * (t - unit_trace(r0, t));
  rep.rel_dl = dl.norm() / rep.l1.norm();
  return rep;
}

DefinitenessReport l1_definiteness(const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  const Index m = require_metastable(roles);
  if (std::abs(dec.values[m].imag()) > 1e-9) {
    throw ComplexLambda1("lambda_1 = " + std::to_string(dec.values[m].real()) + " + " +
                         std::to_string(dec.values[m].imag()) + "i is not real");
  }
  const EigStructureReport st = metastable_structure(dec);
  const CVec x = st.l1 / st.kappa;
  const CVec t = dec.info.trace_vector();
  const CVec rho0 = unit_trace(dec.right.col(roles.steady[0]).normalized(), t);

  DefinitenessReport rep;
  if (dec.info.basis == BasisKind::kClassical) {
    const Index n = x.size();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return x[a].real() < x[b].real(); });
    rep.eigenvalues.resize(n);
    for (Index i = 0; i < n; ++i) rep.eigenvalues[i] = x[order[i]].real();
    rep.zero_index = order[0];
    rep.zero_fidelity = rho0[order[0]].real();
  } else {
    const CMat op = devectorize(x);
    const CMat herm = 0.5 * (op + op.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(herm);
    rep.eigenvalues = es.eigenvalues();
    rep.zero_index = 0;
    const CVec v = es.eigenvectors().col(0);
    rep.zero_fidelity = v.dot(devectorize(rho0) * v).real();
  }
  int near_one = 0;
  for (Index i = 0; i < rep.eigenvalues.size(); ++i) {
    const double e = rep.eigenvalues[i];
    if (e < -1e-8) ++rep.negative_count;
    if (std::abs(e) <= 1e-8) ++rep.zero_count;
    if (e >= 0.5 && e <= 1.5) ++near_one;
  }
  rep.fraction_near_one = rep.eigenvalues.size() ? static_cast<double>(near_one) /
                                                       static_cast<double>(rep.eigenvalues.size())
                                                 : 0.0;
  return rep;
}

OverlapReport overlap_report(const SpectralDecomposition& dec, const AnyGenerator* g) {
  OverlapReport r;
  r.model = dec.info.model;
  r.w = dec.info.w;
  const ModeRoles roles = mode_roles(dec);
  r.d = static_cast<int>(roles.steady.size());
  r.purely_imaginary = roles.purely_imaginary;
  r.kappa = r.rel_dr = r.rel_dl = kNaN;
  const Index m = require_metastable(roles);
  r.lambda1 = dec.values[m];
  r.gap = liouvillian_gap(dec);
  if (r.d == 1) {
    r.nu = eigen_overlap(dec);
    r.nu2 = std::norm(r.nu);
    if (dec.has_left[m] && std::abs(r.nu) > 1e-150) {
      const EigStructureReport st = metastable_structure(dec);
      r.kappa = st.kappa;
      r.rel_dr = st.rel_dr;
      r.rel_dl = st.rel_dl;
    }
    if (r.nu2 <= 1.0 - 1e-12) {
      r.leff = effective_two_level(dec, g).formula;
      r.has_leff = true;
    }
  } else {
    r.nu = cplx(kNaN, kNaN);
    r.nu2 = degenerate_overlap(dec);
  }
  return r;
}

std::string fmt_e12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string overlap_csv_header() {
  return "model,N,seed,W,d,delta,re_nu,im_nu,nu2,kappa,rel_dr,rel_dl,re_lambda1,im_lambda1,"
         "purely_imaginary";
}

std::string overlap_csv_row(const OverlapReport& r) {
  std::ostringstream os;
  os << r.model << ',' << r.n << ',' << r.seed << ',' << fmt_e12(r.w) << ',' << r.d << ','
     << fmt_e12(r.gap) << ',' << fmt_e12(r.nu.real()) << ',' << fmt_e12(r.nu.imag()) << ','
     << fmt_e12(r.nu2) << ',' << fmt_e12(r.kappa) << ',' << fmt_e12(r.rel_dr) << ','
     << fmt_e12(r.rel_dl) << ',' << fmt_e12(r.lambda1.real()) << ',' << fmt_e12(r.lambda1.imag())
     << ',' << (r.purely_imaginary ? 1 : 0);
  return os.str();
}

}  // namespace aess
