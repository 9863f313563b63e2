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

// Finite-size scaling fits y(N).

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aess {

enum class FitKind {
  kExponential,   // a e^{-b N}, linear least squares on log y
  kPower,         // a N^{-b}, linear least squares on log y
  kShiftedPower,  // a N^{-b} + c, variable projection over b
};

FitKind parse_fit_kind(std::string_view tag);
std::string fit_kind_tag(FitKind kind);

struct FitResult {
  FitKind kind = FitKind::kExponential;
  double a = 0.0, b = 0.0, c = 0.0;
  double residual_norm = 0.0;  // 2-norm of residuals in the fitted space
  double r2 = 0.0;             // coefficient of determination, same space
  double slope = 0.0;          // d log y / d N (exponential) or d log y / d log N (power)
};

/// Throws FitFailure with fewer than 4 points, non-positive y for the log
/// fits, or a non-converged shifted-power fit.
FitResult fit_scaling(const std::vector<double>& x, const std::vector<double>& y, FitKind kind);

/// Ordinary least-squares line; returns {intercept, slope, r2}.
struct LineFit {
  double intercept = 0.0, slope = 0.0, r2 = 0.0, residual_norm = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::string fit_result_json(const FitResult& f);

}  // namespace aess
