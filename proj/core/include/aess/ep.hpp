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

// Exceptional-point search along W and the perturbation scan around it.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aess/models.hpp"
#include "aess/spectral.hpp"

namespace aess {

using ModelBuilder = std::function<ModelPoint(double w)>;
ModelBuilder builder_for(const ModelSpec& spec);

/// Full single-point pipeline: decomposition with targets plus report.
OverlapReport analyze_point(const ModelPoint& point, const SpectralOptions& opts = {});

/// One OverlapReport per grid value, in grid order.
std::vector<OverlapReport> scan_w(const ModelBuilder& builder, const std::vector<double>& grid,
                                  const SpectralOptions& opts = {});

struct EpOptions {
  double w_lo = 1.0;
  double w_hi = 1.5;
  double tol = 1e-6;
  SpectralOptions spectral;
  /// Shift-invert pole placed this far right of the tracked eigenvalue, so
  /// that the nearest eigenvalue is the rightmost one for Metzler generators.
  double probe_offset = 1.0;
};

struct EpSample {
  double w = 0.0;
  cplx lambda1;      // rightmost eigenvalue apart from the tracked mode
  cplx lambda0;      // eigenvalue of the tracked mode
  double nu2 = 0.0;  // overlap of the two
  double f = 0.0;    // Re(lambda1 - lambda0)
};

struct EpReport {
  double wc = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double tol = 0.0;
  std::vector<EpSample> samples;  // in evaluation order
  bool converged = false;
};

/// Rightmost eigenvalue of the spectrum with the tracked mode removed.
EpSample probe_rightmost(const ModelPoint& point, double w, const EpOptions& opts);

/// Bisection on f(W) = Re(lambda1 - lambda0). Throws NoSignChange when f
/// does not change sign over the bracket.
EpReport find_wc(const ModelBuilder& builder, const EpOptions& opts = {});
std::string ep_report_json(const EpReport& r);

struct PtPoint {
  double delta = 0.0;
  cplx a, b;  // tracked pair; a has the larger real (then imaginary) part
};
struct PtScanResult {
  double w = 0.0;
  std::vector<PtPoint> points;  // ascending delta
};

struct PtOptions {
  SpectralOptions spectral;
  double min_fidelity = 0.5;
  /// The third best mode must trail the second by this much.
  double min_separation = 0.2;
};

/// For each delta diagonalizes L + perturbation(delta) and follows the pair
/// that coalesces at delta = 0 by eigenvector continuity, outward from 0 on
/// each side. Throws TrackingLost when the continuation is ambiguous.
PtScanResult pt_scan(const ModelPoint& at_wc, const std::function<AnyGenerator(double)>& perturbation,
                     const std::vector<double>& deltas, const PtOptions& opts = {});

/// Log-log slope of |a - b| against |delta| over one branch.
double splitting_exponent(const PtScanResult& r, bool negative_branch);

/// +-{1e-4 .. 1e-2}, `per_side` logarithmically spaced magnitudes per sign.
std::vector<double> default_delta_grid(int per_side = 9);

std::string pt_csv_header();
std::string pt_csv_row(const PtPoint& p);
std::string scan_csv_header();
std::string scan_csv_row(const OverlapReport& r);

}  // namespace aess
