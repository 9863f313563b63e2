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

#include "aess/fit.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <nlohmann/json.hpp>

#include "aess/errors.hpp"

namespace aess {

FitKind parse_fit_kind(std::string_view tag) {
  if (tag == "exponential") return FitKind::kExponential;
  if (tag == "power") return FitKind::kPower;
  if (tag == "shifted-power") return FitKind::kShiftedPower;
  throw InvalidParams("unknown fit kind '" + std::string(tag) +
                      "' (expected exponential, power, shifted-power)");
}

std::string fit_kind_tag(FitKind kind) {
  switch (kind) {
    case FitKind::kExponential:
      return "exponential";
    case FitKind::kPower:
      return "power";
    case FitKind::kShiftedPower:
      return "shifted-power";
  }
  return "unknown";
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw FitFailure("line fit needs two or more paired points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitFailure("abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    sse += r * r;
  }
  f.residual_norm = std::sqrt(sse);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return f;
}

namespace {

struct Projected {
  double a, c, sse;
};

// Best (a, c) for fixed b by linear least squares on y = a N^{-b} + c.
Projected project(const std::vector<double>& x, const std::vector<double>& y, double b) {
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = std::pow(x[i], -b);
  const LineFit l = fit_line(u, y);
  return {l.slope, l.intercept, l.residual_norm * l.residual_norm};
}

}  // namespace

FitResult fit_scaling(const std::vector<double>& x, const std::vector<double>& y, FitKind kind) {
  if (x.size() != y.size() || x.size() < 4) throw FitFailure("scaling fits need at least 4 points");
  FitResult f;
  f.kind = kind;
  if (kind == FitKind::kExponential || kind == FitKind::kPower) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(y[i] > 0.0)) throw FitFailure("log-space fit needs positive data");
      if (kind == FitKind::kPower && !(x[i] > 0.0)) throw FitFailure("power fit needs positive N");
      lx[i] = kind == FitKind::kPower ? std::log(x[i]) : x[i];
      ly[i] = std::log(y[i]);
    }
    const LineFit l = fit_line(lx, ly);
    f.a = std::exp(l.intercept);
    f.b = -l.slope;
    f.slope = l.slope;
    f.residual_norm = l.residual_norm;
    f.r2 = l.r2;
    return f;
  }

  for (double xi : x) {
    if (!(xi > 0.0)) throw FitFailure("shifted power fit needs positive N");
  }
  // Coarse scan, then Brent refinement inside the best bracket.
  constexpr double kLo = 0.01, kHi = 12.0;
  constexpr int kGrid = 240;
  int best = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double b = kLo + (kHi - kLo) * i / kGrid;
    const double s = project(x, y, b).sse;
    if (s < best_sse) {
      best_sse = s;
      best = i;
    }
  }
  const double step = (kHi - kLo) / kGrid;
  const double lo = std::max(kLo, kLo + (best - 1) * step);
  const double hi = std::min(kHi, kLo + (best + 1) * step);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(
      [&](double b) { return project(x, y, b).sse; }, lo, hi, 50, iters);
  if (iters >= 200 || !std::isfinite(r.second)) throw FitFailure("shifted power fit did not converge");
  const Projected p = project(x, y, r.first);
  f.a = p.a;
  f.b = r.first;
  f.c = p.c;
  f.slope = -f.b;
  f.residual_norm = std::sqrt(p.sse);
  double my = 0, syy = 0;
  for (double yi : y) my += yi;
  my /= static_cast<double>(y.size());
  for (double yi : y) syy += (yi - my) * (yi - my);
  f.r2 = syy > 0.0 ? 1.0 - p.sse / syy : 1.0;
  return f;
}

std::string fit_result_json(const FitResult& f) {
  nlohmann::ordered_json j;
  j["kind"] = fit_kind_tag(f.kind);
  j["a"] = f.a;
  j["b"] = f.b;
  j["c"] = f.c;
  j["residual_norm"] = f.residual_norm;
  j["r2"] = f.r2;
  return j.dump(2);
}

}  // namespace aess
