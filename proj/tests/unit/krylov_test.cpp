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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "aess/errors.hpp"
#include "aess/krylov_schur.hpp"
#include "aess/sparse_lu.hpp"

namespace aess {
namespace {

// A = V diag(d) V^-1 with a well-conditioned V close to the identity.
CMat with_spectrum(const CVec& d, unsigned seed) {
  std::srand(seed);
  const Index n = d.size();
  const CMat v = CMat::Identity(n, n) + 0.3 / std::sqrt(static_cast<double>(n)) * CMat::Random(n, n);
  return v * d.asDiagonal() * v.inverse();
}

CVec spread_spectrum(Index n) {
  CVec d(n);
  for (Index i = 0; i < n; ++i) d[i] = cplx(-0.05 * static_cast<double>(i) * (1.0 + 0.01 * i), 0.3 * std::sin(1.0 * i));
  return d;
}

double nearest(const CVec& pool, cplx z) { return (pool.array() - z).abs().minCoeff(); }

TEST(SchurSwap, PreservesSimilarityAndSwapsDiagonal) {
  std::srand(5);
  const Index n = 6;
  CMat t = CMat::Random(n, n).triangularView<Eigen::Upper>();
  CMat u = CMat::Identity(n, n);
  const CMat a = t;
  const cplx d2 = t(2, 2), d3 = t(3, 3);
  schur_swap(t, u, 2);
  EXPECT_LE((u * t * u.adjoint() - a).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LE((u.adjoint() * u - CMat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(CMat(t.triangularView<Eigen::StrictlyLower>()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(std::abs(t(2, 2) - d3), 1e-14);
  EXPECT_LE(std::abs(t(3, 3) - d2), 1e-14);
}

TEST(SchurSort, OrdersByScore) {
  std::srand(8);
  const Index n = 8;
  CMat t = CMat::Random(n, n).triangularView<Eigen::Upper>();
  CMat u = CMat::Identity(n, n);
  const CMat a = t;
  schur_sort(t, u, [](cplx z) { return z.real(); });
  for (Index i = 0; i + 1 < n; ++i) EXPECT_GE(t(i, i).real(), t(i + 1, i + 1).real());
  EXPECT_LE((u * t * u.adjoint() - a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KrylovSchur, LargestRealMatchesDense) {
  const Index n = 300;
  const CVec d = spread_spectrum(n);
  const CMat a = with_spectrum(d, 3);
  KrylovOptions o;
  o.nev = 5;
  o.which = Which::kLargestReal;
  const KrylovResult r = krylov_schur([&](const CVec& v) { return CVec(a * v); }, n, o);
  ASSERT_EQ(r.values.size(), 5);
  std::vector<double> re(d.size());
  for (Index i = 0; i < n; ++i) re[i] = d[i].real();
  std::sort(re.rbegin(), re.rend());
  for (Index i = 0; i < 5; ++i) {
    EXPECT_LE(nearest(d, r.values[i]), 1e-9);
    EXPECT_NEAR(r.values[i].real(), re[i], 1e-9);
    EXPECT_LE((a * r.vectors.col(i) - r.values[i] * r.vectors.col(i)).norm(), 1e-9);
    EXPECT_NEAR(r.vectors.col(i).norm(), 1.0, 1e-12);
  }
  EXPECT_GT(r.matvecs, 0);
}

TEST(KrylovSchur, ShiftInvertFindsNearestToPole) {
  const Index n = 200;
  const CVec d = spread_spectrum(n);
  const CMat a = with_spectrum(d, 4);
  const ComplexSparse as = a.sparseView();
  const double sigma = -3.01;
  const ShiftedLu si(as, cplx(sigma));
  KrylovOptions o;
  o.nev = 4;
  const KrylovResult r = krylov_schur([&](const CVec& v) { return si.solve(v); }, n, o);
  std::vector<double> dist(n);
  for (Index i = 0; i < n; ++i) dist[i] = std::abs(d[i] - sigma);
  std::sort(dist.begin(), dist.end());
  for (Index i = 0; i < 4; ++i) {
    const cplx lambda = sigma + 1.0 / r.values[i];
    EXPECT_LE(nearest(d, lambda), 1e-9);
    EXPECT_LE(std::abs(lambda - sigma), dist[3] + 1e-9);
  }
}

TEST(KrylovSchur, LockingRemovesInvariantSubspace) {
  const Index n = 150;
  const CVec d = spread_spectrum(n);
  const CMat a = with_spectrum(d, 6);
  // Right eigenvector of the rightmost eigenvalue (d[0] = 0) from dense.
  Eigen::ComplexEigenSolver<CMat> es(a);
  Index top = 0;
  es.eigenvalues().real().maxCoeff(&top);
  const CMat locked = es.eigenvectors().col(top).normalized();
  KrylovOptions o;
  o.nev = 3;
  o.which = Which::kLargestReal;
  const KrylovResult r = krylov_schur([&](const CVec& v) { return CVec(a * v); }, n, o, locked);
  for (Index i = 0; i < 3; ++i) {
    EXPECT_LE(nearest(d.tail(n - 1), r.values[i]), 1e-9);
    EXPECT_GT(std::abs(r.values[i] - d[0]), 1e-3);
    EXPECT_LE(std::abs(locked.col(0).dot(r.vectors.col(i))), 1e-10);
  }
  EXPECT_NEAR(r.values[0].real(), d[1].real(), 1e-9);
}

TEST(KrylovSchur, ReportsNonConvergence) {
  const Index n = 400;
  const CMat a = with_spectrum(spread_spectrum(n), 9);
  KrylovOptions o;
  o.nev = 8;
  o.ncv = 17;
  o.max_restarts = 1;
  o.which = Which::kLargestReal;
  EXPECT_THROW(krylov_schur([&](const CVec& v) { return CVec(a * v); }, n, o), ConvergenceFailure);
}

TEST(KrylovSchur, DeterministicForFixedSeed) {
  const Index n = 120;
  const CMat a = with_spectrum(spread_spectrum(n), 10);
  KrylovOptions o;
  o.nev = 3;
  o.which = Which::kLargestReal;
  auto op = [&](const CVec& v) { return CVec(a * v); };
  const KrylovResult r1 = krylov_schur(op, n, o), r2 = krylov_schur(op, n, o);
  EXPECT_EQ(r1.values, r2.values);
  EXPECT_EQ(r1.matvecs, r2.matvecs);
}

}  // namespace
}  // namespace aess
