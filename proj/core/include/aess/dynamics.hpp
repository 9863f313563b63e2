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

// Time evolution d rho / dt = L rho by modal synthesis or fixed-step RK4.
// Times are in units of the inverse jump rate.

#pragma once

#include <string>
#include <vector>

#include "aess/spectral.hpp"

namespace aess {

struct Trajectory {
  std::vector<double> times;
  std::vector<CVec> states;
  std::vector<double> fidelity;    // Re <target, state>; NaN without a target
  std::vector<double> trace;       // Re Tr[state]
  std::vector<double> c1_contrib;  // |c_1 e^{lambda_1 t}| ||r_1||; NaN for RK4
};

/// Uniform distribution (classical) or I / D (vectorized).
CVec maximally_mixed(const GeneratorInfo& info);

/// rho(t) = sum_i e^{lambda_i t} c_i r_i with c_i = l_i^H rho_ini. Needs a
/// complete biorthonormal decomposition (NearDefective otherwise).
Trajectory evolve_spectral(const SpectralDecomposition& dec, const CVec& rho_ini,
                           const std::vector<double>& times, const CVec& target = CVec());

/// Classical fourth-order Runge-Kutta with dt <= 0.1 / ||L||_max-row
/// (StepTooLarge otherwise). Samples every `record_every` steps and at t_max.
/// At W = 1 the trace (and Hermiticity for operators) is checked to 1e-8 at
/// every sample; ConservationViolated otherwise.
Trajectory evolve_rk4(const AnyGenerator& g, const CVec& rho_ini, double dt, double t_max,
                      int record_every = 1, const CVec& target = CVec());

/// Metastable amplitude c_1 = l_1^H rho_ini (biorthonormal scaling).
cplx c1_coefficient(const SpectralDecomposition& dec, const CVec& rho_ini);

struct PlateauReport {
  double t_begin = 0.0, t_end = 0.0;  // [5 / |Re l2|, 0.2 / |Re l1|]
  bool nonempty = false;
  int samples = 0;                    // trajectory samples inside the window
  double plateau_fidelity = 0.0;      // mean fidelity inside the window
  double max_residual = 0.0;          // max ||rho(t) - c0 r0 - e^{l1 t} c1 r1||
  double max_residual_ratio = 0.0;    // max residual / e^{Re l2 t}
};

/// Throws NoSeparation unless |Re lambda_2| > 10 |Re lambda_1|.
PlateauReport plateau_report(const Trajectory& traj, const SpectralDecomposition& dec);

std::string trajectory_csv_header();
std::string trajectory_csv_row(const Trajectory& t, std::size_t i);

}  // namespace aess
