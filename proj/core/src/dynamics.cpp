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

#include "aess/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aess/errors.hpp"
#include "aess/quantum.hpp"

namespace aess {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double fidelity_of(const CVec& target, const CVec& state) {
  return target.size() ? target.dot(state).real() : kNaN;
}

double hermiticity_defect(const CVec& v) {
  const CMat rho = devectorize(v);
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

CVec maximally_mixed(const GeneratorInfo& info) {
  const auto d = static_cast<double>(info.hilbert_dim);
  if (info.basis == BasisKind::kClassical) return CVec::Constant(info.hilbert_dim, 1.0 / d);
  return vectorize(CMat::Identity(info.hilbert_dim, info.hilbert_dim) / d);
}

Trajectory evolve_spectral(const SpectralDecomposition& dec, const CVec& rho_ini,
                           const std::vector<double>& times, const CVec& target) {
  if (!dec.complete || !dec.biorthonormal) {
    throw NearDefective("modal synthesis needs a complete biorthonormal decomposition");
  }
  if (rho_ini.size() != dec.right.rows()) throw ShapeMismatch("initial state has the wrong length");
  const CVec c = dec.left.adjoint() * rho_ini;
  const CVec t = dec.info.trace_vector();
  const ModeRoles roles = mode_roles(dec);
  Trajectory out;
  for (double time : times) {
    CVec e(dec.size());
    for (Index i = 0; i < dec.size(); ++i) e[i] = std::exp(dec.values[i] * time) * c[i];
    CVec rho = dec.right * e;
    out.times.push_back(time);
    out.fidelity.push_back(fidelity_of(target, rho));
    out.trace.push_back(t.dot(rho).real());
    out.c1_contrib.push_back(roles.metastable >= 0
                                 ? std::abs(e[roles.metastable]) * dec.right.col(roles.metastable).norm()
                                 : kNaN);
    out.states.push_back(std::move(rho));
  }
  return out;
}

Trajectory evolve_rk4(const AnyGenerator& g, const CVec& rho_ini, double dt, double t_max,
                      int record_every, const CVec& target) {
  if (!(dt > 0.0) || !(t_max >= 0.0) || record_every < 1) {
    throw InvalidParams("RK4 needs dt > 0, t_max >= 0 and record_every >= 1");
  }
  const double limit = 0.1 / max_row_norm(g);
  if (dt > limit) {
    throw StepTooLarge("dt = " + std::to_string(dt) + " exceeds 0.1 / ||L|| = " +
                       std::to_string(limit));
  }
  if (rho_ini.size() != dim_of(g)) throw ShapeMismatch("initial state has the wrong length");

  const GeneratorInfo& info = info_of(g);
  const CVec t = info.trace_vector();
  const bool conserving = info.w == 1.0;
  const bool vectorized = info.basis == BasisKind::kVectorized;
  const double trace0 = t.dot(rho_ini).real();

  const auto steps = static_cast<long>(std::ceil(t_max / dt - 1e-9));
  const double h = steps > 0 ? t_max / static_cast<double>(steps) : 0.0;

  Trajectory out;
  CVec rho = rho_ini;
  auto record = [&](double time) {
    const double tr = t.dot(rho).real();
    if (conserving) {
      if (std::abs(tr - trace0) > 1e-8) {
        throw ConservationViolated("trace drifted by " + std::to_string(tr - trace0) +
                                   " at t = " + std::to_string(time));
      }
      if (vectorized && hermiticity_defect(rho) > 1e-8) {
        throw ConservationViolated("Hermiticity lost at t = " + std::to_string(time));
      }
    }
    out.times.push_back(time);
    out.fidelity.push_back(fidelity_of(target, rho));
    out.trace.push_back(tr);
    out.c1_contrib.push_back(kNaN);
    out.states.push_back(rho);
  };

  record(0.0);
  for (long s = 1; s <= steps; ++s) {
    const CVec k1 = aess::apply(g, rho);
    const CVec k2 = aess::apply(g, rho + 0.5 * h * k1);
    const CVec k3 = aess::apply(g, rho + 0.5 * h * k2);
    const CVec k4 = aess::apply(g, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % record_every == 0 || s == steps) record(static_cast<double>(s) * h);
  }
  return out;
}

cplx c1_coefficient(const SpectralDecomposition& dec, const CVec& rho_ini) {
  const ModeRoles roles = mode_roles(dec);
  if (roles.metastable < 0) throw DegenerateCase("no metastable mode");
  if (!dec.has_left[roles.metastable]) {
    throw InvalidParams("decomposition lacks the metastable left vector");
  }
  return dec.left.col(roles.metastable).dot(rho_ini);
}

PlateauReport plateau_report(const Trajectory& traj, const SpectralDecomposition& dec) {
  const ModeRoles roles = mode_roles(dec);
  if (roles.metastable < 0) throw NoSeparation("no decaying mode");
  Index second = -1;
  for (Index i = roles.metastable + 1; i < dec.size(); ++i) {
    if (std::find(roles.steady.begin(), roles.steady.end(), i) != roles.steady.end()) continue;
    if (std::abs(dec.values[i].real()) <= kZeroModeTol) continue;
    second = i;
    break;
  }
  const double r1 = std::abs(dec.values[roles.metastable].real());
  if (second < 0) throw NoSeparation("only one decay rate present");
  const double r2 = std::abs(dec.values[second].real());
  if (!(r2 > 10.0 * r1)) {
    throw NoSeparation("|Re lambda_2| = " + std::to_string(r2) + " is not above 10 |Re lambda_1| = " +
                       std::to_string(10.0 * r1));
  }
  if (traj.states.empty()) throw InvalidParams("empty trajectory");

  PlateauReport rep;
  rep.t_begin = 5.0 / r2;
  rep.t_end = 0.2 / r1;
  rep.nonempty = rep.t_end > rep.t_begin;

  // Steady component: projection with the steady left vectors if available,
  // else the trace (steady states of unit trace).
  const CVec& rho0 = traj.states.front();
  CVec steady = CVec::Zero(rho0.size());
  for (Index s : roles.steady) {
    if (dec.has_left[s]) {
      steady += dec.left.col(s).dot(rho0) * dec.right.col(s);
    } else {
      const CVec t = dec.info.trace_vector();
      steady += t.dot(rho0) * dec.right.col(s) / t.dot(dec.right.col(s));
    }
  }
  const cplx c1 = c1_coefficient(dec, rho0);
  double fsum = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double time = traj.times[k];
    if (time < rep.t_begin || time > rep.t_end) continue;
    const CVec model = steady + std::exp(dec.values[roles.metastable] * time) * c1 *
                                    dec.right.col(roles.metastable);
    const double res = (traj.states[k] - model).norm();
    rep.max_residual = std::max(rep.max_residual, res);
    rep.max_residual_ratio = std::max(rep.max_residual_ratio, res / std::exp(-r2 * time));
    fsum += traj.fidelity[k];
    ++rep.samples;
  }
  rep.plateau_fidelity = rep.samples ? fsum / rep.samples : kNaN;
  return rep;
}

std::string trajectory_csv_header() { return "t,fidelity,trace,c1_contrib"; }

std::string trajectory_csv_row(const Trajectory& t, std::size_t i) {
  return fmt_e12(t.times[i]) + ',' + fmt_e12(t.fidelity[i]) + ',' + fmt_e12(t.trace[i]) + ',' +
         fmt_e12(t.c1_contrib[i]);
}

}  // namespace aess
