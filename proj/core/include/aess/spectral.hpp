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

// Eigendecomposition of generators and the steady/metastable diagnostics
// built on it.
//
// Known exact eigenvectors (e.g. the solution state) can be passed as
// "targets". Their span must be invariant; it is then locked out of the
// iterative search, so the rest of the spectrum is found on the orthogonal
// complement and never confused with the target mode even where the two
// eigenvalues coalesce.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aess/generator.hpp"

namespace aess {

enum class SolveMode {
  kAuto,         // dense up to dense_auto_max, else shift-invert or direct
  kDense,        // LAPACK on the full matrix
  kShiftInvert,  // Krylov-Schur on (L - shift)^{-1}, nearest to shift
  kDirect,       // Krylov-Schur on L itself, rightmost eigenvalues
};

inline constexpr double kZeroModeTol = 1e-9;

struct SpectralOptions {
  SolveMode mode = SolveMode::kAuto;
  /// Eigenpairs requested from the iterative modes, targets not included.
  int k = 6;
  /// Shift-invert pole; must not be an eigenvalue.
  double shift = 0.05;
  Index dense_auto_max = 256;
  Index dense_max = 8192;
  double tol = 1e-12;
  int max_restarts = 3000;
  int ncv = 0;
  bool compute_left = true;
  double residual_tol = 1e-8;  // relative to the 1-norm of L
  double target_tol = 1e-10;   // invariance check of the target subspace
};

struct SpectralDecomposition {
  CVec values;  // descending real part, ties by descending imaginary part
  CMat right;   // unit-norm columns, largest entry real positive
  CMat left;    // valid where has_left[i]
  std::vector<bool> has_left;
  bool biorthonormal = false;
  bool complete = false;         // all eigenpairs present
  std::vector<Index> target_modes;  // modes spanning the supplied targets
  std::vector<std::vector<Index>> near_defective;
  GeneratorInfo info;
  double norm = 0.0;  // 1-norm of the generator
  std::string method;

  Index size() const { return values.size(); }
};

/// Computes eigenpairs of `g`. `targets` holds known eigenvectors as columns
/// (their span must be L-invariant); pass an empty matrix when none are known.
SpectralDecomposition full_spectrum(const AnyGenerator& g, const SpectralOptions& opts = {},
                                    const CMat& targets = CMat());

/// Scales left vectors so that l_i^H r_j = delta_ij. Numerically degenerate
/// clusters get their right vectors orthonormalized first. Throws
/// NearDefective when a cross-Gram matrix has condition number > 1e12.
void biorthonormalize(SpectralDecomposition& dec);

/// Dense eigen-solve (all eigenpairs, left and right) via LAPACK.
struct DenseEig {
  CVec values;
  CMat left, right;
};
DenseEig dense_eig(const CMat& a);
DenseEig dense_eig(const Mat& a);

/// Which modes play the steady and metastable roles.
struct ModeRoles {
  std::vector<Index> steady;
  Index metastable = -1;
  bool purely_imaginary = false;  // purely imaginary modes were skipped
};
/// Steady modes are the target modes if any, else |lambda| <= kZeroModeTol;
/// the metastable mode is the next one in sort order that is not purely
/// imaginary. Throws NoSteadyState.
ModeRoles mode_roles(const SpectralDecomposition& dec);

/// |Re(lambda_0 - lambda_1)|, which reduces to -Re(lambda_d) for d zero modes.
double liouvillian_gap(const SpectralDecomposition& dec);
/// r0_hat^H r1_hat for a unique steady state; DegenerateCase if d > 1.
cplx eigen_overlap(const SpectralDecomposition& dec);
/// sum_k |q_k^H r_d_hat|^2 over an orthonormal basis q_k of the steady space.
double degenerate_overlap(const SpectralDecomposition& dec);

struct TwoLevel {
  Eigen::Matrix2cd formula;    // closed form
  Eigen::Matrix2cd projected;  // E^H L E; equal to formula when L is given
  double discrepancy = 0.0;
};
/// Effective generator in the basis {r0_hat, (r1_hat - nu r0_hat)/sqrt(1-|nu|^2)}:
/// [[lambda_0, (lambda_1 - lambda_0) nu / sqrt(1 - |nu|^2)], [0, lambda_1]].
/// With `g`, cross-checks against direct projection (ResidualTooLarge above
/// 1e-8). Throws OverlapSaturated if |nu|^2 > 1 - 1e-12.
TwoLevel effective_two_level(const SpectralDecomposition& dec, const AnyGenerator* g = nullptr);

struct EigStructureReport {
  cplx nu;
  double kappa = 0.0;
  double rel_dr = 0.0;  // ||delta_r|| / ||r1||
  double rel_dl = 0.0;  // ||delta_l|| / ||l1||
  double dr_norm2 = 0.0;
  double identity_residual = 0.0;  // | ||delta_r||^2 - (|nu|^-2 - 1) |
  CVec r1;  // rescaled so that r0_hat^H r1 = 1
  CVec l1;  // rescaled so that l1^H r1 = 1
};
/// Needs the metastable left vector. Throws NoSteadyState, DegenerateCase.
EigStructureReport metastable_structure(const SpectralDecomposition& dec);

struct DefinitenessReport {
  Vec eigenvalues;  // of kappa^{-1} l1 (Hermitian part), ascending
  int negative_count = 0;  // below -1e-8
  int zero_count = 0;      // within [-1e-8, 1e-8]
  Index zero_index = -1;   // index of the smallest eigenvalue
  double zero_fidelity = 0.0;  // with the unit-trace steady state
  double fraction_near_one = 0.0;  // share in [0.5, 1.5]
};
/// Throws ComplexLambda1 if |Im lambda_1| > 1e-9.
DefinitenessReport l1_definiteness(const SpectralDecomposition& dec);

/// One analysed (model, W) point.
struct OverlapReport {
  std::string model;
  int n = 0;
  std::uint64_t seed = 0;
  double w = 0.0;
  int d = 0;
  double gap = 0.0;
  cplx nu{0.0, 0.0};
  double nu2 = 0.0;
  double kappa = 0.0;  // NaN when unavailable
  double rel_dr = 0.0;
  double rel_dl = 0.0;
  cplx lambda1{0.0, 0.0};
  bool purely_imaginary = false;
  Eigen::Matrix2cd leff = Eigen::Matrix2cd::Zero();
  bool has_leff = false;
};

/// Fills the report from a decomposition. Quantities that need missing left
/// vectors or a unique steady state are set to NaN.
OverlapReport overlap_report(const SpectralDecomposition& dec, const AnyGenerator* g = nullptr);

std::string overlap_csv_header();
std::string overlap_csv_row(const OverlapReport& r);

/// printf("%.12e") formatting used by every CSV writer.
std::string fmt_e12(double v);

}  // namespace aess
