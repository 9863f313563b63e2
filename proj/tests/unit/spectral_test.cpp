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
#include <cmath>

#include <Eigen/Eigenvalues>

#include "aess/classical.hpp"
#include "aess/errors.hpp"
#include "aess/models.hpp"
#include "aess/quantum.hpp"
#include "aess/spectral.hpp"
#include "oracles.hpp"

namespace aess {
namespace {

SparseGenerator from_dense(const Mat& m) {
  SparseGenerator g;
  g.matrix = m.sparseView();
  g.info.model = "test";
  g.info.basis = BasisKind::kClassical;
  g.info.hilbert_dim = m.rows();
  return g;
}

double nearest(const CVec& pool, cplx z) { return (pool.array() - z).abs().minCoeff(); }

TEST(FullSpectrum, DiagonalGenerator) {
  Mat m = Mat::Zero(3, 3);
  m(1, 1) = -1.0;
  m(2, 2) = -3.0;
  const SpectralDecomposition dec = full_spectrum(from_dense(m));
  ASSERT_EQ(dec.size(), 3);
  EXPECT_EQ(dec.method, "dense");
  EXPECT_TRUE(dec.complete);
  EXPECT_NEAR(std::abs(dec.values[0]), 0.0, 1e-15);
  EXPECT_NEAR(dec.values[1].real(), -1.0, 1e-15);
  EXPECT_NEAR(dec.values[2].real(), -3.0, 1e-15);
  EXPECT_TRUE(dec.biorthonormal);
  EXPECT_NEAR(liouvillian_gap(dec), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(eigen_overlap(dec)), 0.0, 1e-15);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(dec.right(i, i)), 1.0, 1e-15);
}

TEST(FullSpectrum, SingleClauseSpectrum) {
  const SatInstance inst(3, {Clause{{Literal{1, false}, Literal{2, false}, Literal{3, false}}}});
  const SpectralDecomposition dec = full_spectrum(build_classical_generator(inst, 1.0));
  int zeros = 0;
  for (Index i = 0; i < dec.size(); ++i) {
    if (std::abs(dec.values[i]) <= 1e-10) ++zeros;
  }
  EXPECT_EQ(zeros, 7);
  EXPECT_NEAR(dec.values[7].real(), -3.0, 1e-10);
}

TEST(FullSpectrum, JordanBlockIsNearDefective) {
  Mat m = Mat::Zero(3, 3);
  m(1, 1) = -1.0;
  m(2, 2) = -1.0;
  m(1, 2) = 1.0;
  SpectralDecomposition dec = full_spectrum(from_dense(m));
  EXPECT_FALSE(dec.biorthonormal);
  EXPECT_FALSE(dec.near_defective.empty());
  EXPECT_THROW(biorthonormalize(dec), NearDefective);
}

TEST(FullSpectrum, DenseAgreesWithShiftInvertAndDirect) {
  const ModelSpec spec = make_chain_model(ModelKind::kFerroChain, 9);
  const ModelPoint p = build_model(spec, 1.05);
  SpectralOptions dense_opts;
  dense_opts.mode = SolveMode::kDense;
  const SpectralDecomposition ref = full_spectrum(p.generator, dense_opts, p.targets);
  for (SolveMode mode : {SolveMode::kShiftInvert, SolveMode::kDirect}) {
    SpectralOptions o;
    o.mode = mode;
    o.k = 6;
    const SpectralDecomposition it = full_spectrum(p.generator, o, p.targets);
    EXPECT_FALSE(it.complete);
    ASSERT_GE(it.size(), 7);
    for (Index i = 0; i < it.size(); ++i) EXPECT_LE(nearest(ref.values, it.values[i]), 1e-6);
    // The rightmost non-target modes are shared.
    EXPECT_NEAR(it.values[1].real(), ref.values[1].real(), 1e-6);
    EXPECT_NEAR(std::abs(eigen_overlap(it)), std::abs(eigen_overlap(ref)), 1e-6);
    EXPECT_NEAR(liouvillian_gap(it), liouvillian_gap(ref), 1e-6);
  }
}

TEST(FullSpectrum, BiorthonormalOnRandomInstance) {
  const SatInstance inst = generate_planted_instance(6, 4.267, 0.08, 3);
  const SpectralDecomposition dec = full_spectrum(build_classical_generator(inst, 1.0));
  const CMat gram = dec.left.adjoint() * dec.right;
  if (dec.biorthonormal) {
    EXPECT_LE((gram - CMat::Identity(dec.size(), dec.size())).cwiseAbs().maxCoeff(), 1e-8);
  } else {
    EXPECT_FALSE(dec.near_defective.empty());
  }
  const Mat a = oracle::classical_3sat(inst, 1.0);
  for (Index i = 0; i < dec.size(); ++i) {
    EXPECT_LE((a * dec.right.col(i) - dec.values[i] * dec.right.col(i)).norm(), 1e-9);
    EXPECT_NEAR(dec.right.col(i).norm(), 1.0, 1e-12);
  }
}

TEST(FullSpectrum, TargetsMustBeInvariant) {
  const ModelSpec spec = make_chain_model(ModelKind::kFerroChain, 4);
  const ModelPoint p = build_model(spec, 1.0);
  CMat bad = CMat::Zero(16, 1);
  bad(5, 0) = 1.0;
  EXPECT_THROW(full_spectrum(p.generator, {}, bad), TrackingLost);
  EXPECT_THROW(full_spectrum(p.generator, {}, CMat::Zero(3, 1)), ShapeMismatch);
  const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
  ASSERT_EQ(dec.target_modes.size(), 1U);
  EXPECT_NEAR(std::abs(dec.values[dec.target_modes[0]]), 0.0, 1e-12);
}

TEST(FullSpectrum, DenseCapRaisesTooLarge) {
  const ModelPoint p = build_model(make_chain_model(ModelKind::kFerroChain, 6), 1.0);
  SpectralOptions o;
  o.mode = SolveMode::kDense;
  o.dense_max = 32;
  EXPECT_THROW(full_spectrum(p.generator, o), TooLarge);
}

TEST(DenseEig, LeftAndRightEigenvectors) {
  std::srand(2);
  const Mat a = Mat::Random(7, 7);
  const DenseEig e = dense_eig(a);
  for (Index i = 0; i < 7; ++i) {
    EXPECT_LE((a * e.right.col(i) - e.values[i] * e.right.col(i)).norm(), 1e-12);
    EXPECT_LE((a.adjoint() * e.left.col(i) - std::conj(e.values[i]) * e.left.col(i)).norm(), 1e-12);
  }
  EXPECT_THROW(dense_eig(Mat(Mat::Zero(2, 3))), ShapeMismatch);
}

TEST(Overlap, EffectiveTwoLevelMatchesProjection) {
  const SatInstance inst = filter_by_solution_count(40, 1, {7, 4.267, 0.08}).instance;
  const ModelSpec spec = make_sat_model(ModelKind::kSat3Classical, inst);
  ASSERT_EQ(spec.solutions.size(), 1U);
  const ModelPoint p = build_model(spec, 1.0);
  const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
  const TwoLevel t = effective_two_level(dec, &p.generator);
  // Independent projection with the dense oracle.
  const Mat a = oracle::classical_3sat(inst, 1.0);
  const CVec r0 = dec.right.col(dec.target_modes[0]).normalized();
  const ModeRoles roles = mode_roles(dec);
  const CVec r1 = dec.right.col(roles.metastable).normalized();
  const cplx nu = r0.dot(r1);
  CMat e(r0.size(), 2);
  e.col(0) = r0;
  e.col(1) = (r1 - nu * r0) / std::sqrt(1.0 - std::norm(nu));
  const CMat proj = e.adjoint() * a * e;
  EXPECT_LE((proj - CMat(t.formula)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(std::abs(t.formula(1, 0)), 0.0, 1e-15);
}

TEST(Overlap, DegenerateSteadyStates) {
  const SatInstance inst(3, {Clause{{Literal{1, false}, Literal{2, false}, Literal{3, false}}}});
  const SpectralDecomposition dec = full_spectrum(build_classical_generator(inst, 1.0));
  EXPECT_EQ(mode_roles(dec).steady.size(), 7U);
  EXPECT_THROW(eigen_overlap(dec), DegenerateCase);
  EXPECT_NEAR(liouvillian_gap(dec), 3.0, 1e-10);
  // r1 = (3, -1, -1, 0, -1, 0, 0, 0)/sqrt(12); its steady-space share is 3/12.
  EXPECT_NEAR(degenerate_overlap(dec), 0.25, 1e-10);
}

TEST(Overlap, ZeroAtZeroW) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ModelSpec spec = make_sat_model(ModelKind::kSat3Classical, generate_planted_instance(7, 4.267, 0.08, seed));
    const ModelPoint p = build_model(spec, 0.0);
    const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
    if (spec.solutions.size() == 1) {
      EXPECT_LE(std::norm(eigen_overlap(dec)), 1e-20);
    } else {
      EXPECT_LE(degenerate_overlap(dec), 1e-20);
    }
  }
}

TEST(Structure, MetastableIdentityHolds) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ModelSpec spec = make_sat_model(ModelKind::kSat3Classical, generate_planted_instance(8, 4.267, 0.08, seed));
    if (spec.solutions.size() != 1) continue;
    const ModelPoint p = build_model(spec, 1.0);
    const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
    const EigStructureReport st = metastable_structure(dec);
    const double nu2 = std::norm(st.nu);
    EXPECT_LE(st.identity_residual, 1e-8);
    // Independent: ||r1/nu - r0||^2 from the returned vectors.
    const CVec r0 = dec.right.col(dec.target_modes[0]).normalized();
    EXPECT_NEAR((st.r1 - r0).squaredNorm(), 1.0 / nu2 - 1.0, 1e-8);
    EXPECT_NEAR(r0.dot(st.r1).real(), 1.0, 1e-12);
    EXPECT_NEAR(st.l1.dot(st.r1).real(), 1.0, 1e-10);
  }
}

TEST(Structure, LeftMetastableIsPositiveOffSolution) {
  const ModelSpec spec = make_sat_model(ModelKind::kSat3Classical, filter_by_solution_count(3, 1, {9, 4.267, 0.08}).instance);
  const ModelPoint p = build_model(spec, 1.0);
  const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
  const DefinitenessReport d = l1_definiteness(dec);
  EXPECT_EQ(d.eigenvalues.size(), 512);
  for (Index i = 0; i + 1 < d.eigenvalues.size(); ++i) EXPECT_LE(d.eigenvalues[i], d.eigenvalues[i + 1]);
  EXPECT_EQ(d.negative_count, 0);
  EXPECT_EQ(d.zero_count, 1);
  EXPECT_EQ(d.zero_index, static_cast<Index>(spec.solutions[0].bits));
  EXPECT_GT(d.zero_fidelity, 0.99);
}

TEST(Structure, ComplexLambda1Rejected) {
  // Rotation block with a decaying complex pair next to a zero mode.
  Mat m = Mat::Zero(3, 3);
  m(1, 1) = -1.0;
  m(2, 2) = -1.0;
  m(1, 2) = 2.0;
  m(2, 1) = -2.0;
  const SpectralDecomposition dec = full_spectrum(from_dense(m));
  EXPECT_THROW(l1_definiteness(dec), ComplexLambda1);
}

TEST(Report, CsvRowFormatting) {
  EXPECT_EQ(fmt_e12(1.0), "1.000000000000e+00");
  EXPECT_EQ(fmt_e12(-0.5), "-5.000000000000e-01");
  OverlapReport r;
  r.model = "x";
  const std::string row = overlap_csv_row(r);
  const std::string head = overlap_csv_header();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(head.begin(), head.end(), ','));
}

TEST(Report, QuantumSatMatchesDenseOracle) {
  const SatInstance inst = filter_by_solution_count(5, 1, {4, 4.267, 0.08}).instance;
  const ModelSpec spec = make_sat_model(ModelKind::kSat3Quantum, inst);
  const ModelPoint p = build_model(spec, 1.0);
  const SpectralDecomposition dec = full_spectrum(p.generator, {}, p.targets);
  const OverlapReport r = overlap_report(dec, &p.generator);
  const CMat l = oracle::liouvillian_by_action(CMat(build_h3sat(inst)), [&] {
    std::vector<CMat> js;
    for (const auto& j : build_3sat_jumps(inst)) js.push_back(CMat(j));
    return js;
  }(), 1.0);
  Eigen::ComplexEigenSolver<CMat> es(l);
  double lead = -1e300;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double re = es.eigenvalues()[i].real();
    if (std::abs(es.eigenvalues()[i]) > 1e-9) lead = std::max(lead, re);
  }
  EXPECT_NEAR(r.gap, -lead, 1e-8);
  EXPECT_EQ(r.d, 1);
}

}  // namespace
}  // namespace aess
