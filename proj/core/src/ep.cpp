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

#include "aess/ep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aess/errors.hpp"

namespace aess {

ModelBuilder builder_for(const ModelSpec& spec) {
  return [spec](double w) { return build_model(spec, w); };
}

OverlapReport analyze_point(const ModelPoint& point, const SpectralOptions& opts) {
  const SpectralDecomposition dec = full_spectrum(point.generator, opts, point.targets);
  return overlap_report(dec, &point.generator);
}

std::vector<OverlapReport> scan_w(const ModelBuilder& builder, const std::vector<double>& grid,
                                  const SpectralOptions& opts) {
  std::vector<OverlapReport> out;
  out.reserve(grid.size());
  for (double w : grid) {
    if (w < 0.0) throw InvalidParams("W grid must be non-negative");
    out.push_back(analyze_point(builder(w), opts));
  }
  return out;
}

namespace {

bool contains(const std::vector<Index>& v, Index i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

}  // namespace

EpSample probe_rightmost(const ModelPoint& point, double w, const EpOptions& opts) {
  if (point.targets.cols() == 0) throw TrackingLost("model has no tracked steady mode");
  const AnyGenerator& g = point.generator;

  // Eigenvalue of the tracked mode, from its invariant block.
  const CMat q = point.targets.householderQr().householderQ() *
                 CMat::Identity(point.targets.rows(), point.targets.cols());
  CMat lq(q.rows(), q.cols());
  for (Index j = 0; j < q.cols(); ++j) lq.col(j) = aess::apply(g, q.col(j));
  const CVec mus = (q.adjoint() * lq).eigenvalues();
  Index top = 0;
  mus.real().maxCoeff(&top);

  SpectralOptions so = opts.spectral;
  so.compute_left = false;
  so.shift = mus[top].real() + opts.probe_offset;
  // Only the rightmost eigenvalue is needed; plain Krylov-Schur on L finds
  // it without a factorization.
  if (so.mode == SolveMode::kAuto && dim_of(g) > so.dense_auto_max) so.mode = SolveMode::kDirect;
  const SpectralDecomposition dec = full_spectrum(g, so, point.targets);

  EpSample s;
  s.w = w;
  Index m = -1;
  for (Index i = 0; i < dec.size(); ++i) {
    if (!contains(dec.target_modes, i)) {
      m = i;
      break;
    }
  }
  if (m < 0) throw TrackingLost("no mode besides the tracked one was found");
  s.lambda1 = dec.values[m];
  Index t = dec.target_modes.front();
  for (Index i : dec.target_modes) {
    if (dec.values[i].real() > dec.values[t].real()) t = i;
  }
  s.lambda0 = dec.values[t];
  s.f = s.lambda1.real() - s.lambda0.real();
  const CVec r1 = dec.right.col(m).normalized();
  if (dec.target_modes.size() == 1) {
    s.nu2 = std::norm(dec.right.col(t).normalized().dot(r1));
  } else {
    CMat steady(dec.right.rows(), static_cast<Index>(dec.target_modes.size()));
    for (std::size_t a = 0; a < dec.target_modes.size(); ++a) {
      steady.col(a) = dec.right.col(dec.target_modes[a]);
    }
    const CMat qs = steady.householderQr().householderQ() *
                    CMat::Identity(steady.rows(), steady.cols());
    s.nu2 = (qs.adjoint() * r1).squaredNorm();
  }
  return s;
}

EpReport find_wc(const ModelBuilder& builder, const EpOptions& opts) {
  if (!(opts.w_hi > opts.w_lo) || !(opts.tol > 0.0)) {
    throw InvalidParams("find_wc needs w_lo < w_hi and tol > 0");
  }
  EpReport rep;
  rep.bracket_lo = opts.w_lo;
  rep.bracket_hi = opts.w_hi;
  rep.tol = opts.tol;
  auto eval = [&](double w) {
    const EpSample s = probe_rightmost(builder(w), w, opts);
    rep.samples.push_back(s);
    return s.f;
  };

  double lo = opts.w_lo, hi = opts.w_hi;
  const double flo = eval(lo);
  const double fhi = eval(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    std::ostringstream os;
    os << "Re(lambda1 - lambda0) does not cross zero on [" << lo << ", " << hi << "] (f = " << flo
       << ", " << fhi << ")";
    throw NoSignChange(os.str());
  }
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  rep.lo = lo;
  rep.hi = hi;
  rep.wc = 0.5 * (lo + hi);
  rep.converged = true;
  return rep;
}

std::string ep_report_json(const EpReport& r) {
  nlohmann::ordered_json j;
  j["W_c"] = r.wc;
  j["bracket"] = {r.bracket_lo, r.bracket_hi};
  j["final_bracket"] = {r.lo, r.hi};
  j["tol"] = r.tol;
  j["converged"] = r.converged;
  auto samples = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"W", s.w},
                       {"re_lambda1", s.lambda1.real()},
                       {"im_lambda1", s.lambda1.imag()},
                       {"re_lambda0", s.lambda0.real()},
                       {"nu2", s.nu2}});
  }
  j["samples"] = samples;
  return j.dump(2);
}

namespace {

CMat orthonormal_pair(const CVec& a, const CVec& b) {
  CMat m(a.size(), 2);
  m.col(0) = a;
  m.col(1) = b;
  return m.householderQr().householderQ() * CMat::Identity(a.size(), 2);
}

PtPoint track_step(const AnyGenerator& l, double delta, CMat& span, const PtOptions& opts) {
  SpectralOptions so = opts.spectral;
  so.compute_left = false;
  const SpectralDecomposition dec = full_spectrum(l, so);
  std::vector<std::pair<double, Index>> score;
  for (Index i = 0; i < dec.size(); ++i) {
    score.emplace_back((span.adjoint() * dec.right.col(i).normalized()).squaredNorm(), i);
  }
  std::stable_sort(score.begin(), score.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  if (score.size() < 2 || score[1].first < opts.min_fidelity ||
      (score.size() > 2 && score[2].first > score[1].first - opts.min_separation)) {
    std::ostringstream os;
    os << "pair continuation ambiguous at delta = " << delta;
    throw TrackingLost(os.str());
  }
  const Index ia = score[0].second, ib = score[1].second;
  span = orthonormal_pair(dec.right.col(ia), dec.right.col(ib));
  PtPoint p{delta, dec.values[ia], dec.values[ib]};
  const double tie = 1e-12 * std::max({1.0, std::abs(p.a), std::abs(p.b)});
  const bool same_re = std::abs(p.a.real() - p.b.real()) <= tie;
  if ((!same_re && p.b.real() > p.a.real()) || (same_re && p.b.imag() > p.a.imag())) {
    std::swap(p.a, p.b);
  }
  return p;
}

}  // namespace

PtScanResult pt_scan(const ModelPoint& at_wc, const std::function<AnyGenerator(double)>& perturbation,
                     const std::vector<double>& deltas, const PtOptions& opts) {
  PtScanResult out;
  out.w = info_of(at_wc.generator).w;

  // Coalescing pair at delta = 0: tracked mode plus the slowest other mode.
  // The deflated eigenvector component orthogonal to the target stays well
  // defined even next to the coalescence.
  SpectralOptions so = opts.spectral;
  so.compute_left = false;
  const SpectralDecomposition dec0 = full_spectrum(at_wc.generator, so, at_wc.targets);
  const ModeRoles roles = mode_roles(dec0);
  if (roles.steady.size() != 1 || roles.metastable < 0) {
    throw TrackingLost("the perturbation scan needs a unique tracked mode and a partner");
  }
  const CVec r0 = dec0.right.col(roles.steady[0]).normalized();
  const CVec r1 = dec0.right.col(roles.metastable).normalized();
  const CMat span0 = orthonormal_pair(r0, r1 - r0.dot(r1) * r0);

  std::vector<double> pos, neg;
  for (double d : deltas) {
    if (d > 0.0) pos.push_back(d);
    if (d < 0.0) neg.push_back(d);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end(), [](double a, double b) { return a > b; });

  for (const auto* branch : {&neg, &pos}) {
    CMat span = span0;
    for (double d : *branch) {
      const AnyGenerator l = add(at_wc.generator, perturbation(d));
      out.points.push_back(track_step(l, d, span, opts));
    }
  }
  if (std::find(deltas.begin(), deltas.end(), 0.0) != deltas.end()) {
    out.points.push_back({0.0, dec0.values[roles.steady[0]], dec0.values[roles.metastable]});
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const PtPoint& a, const PtPoint& b) { return a.delta < b.delta; });
  return out;
}

double splitting_exponent(const PtScanResult& r, bool negative_branch) {
  std::vector<double> xs, ys;
  for (const auto& p : r.points) {
    if ((negative_branch && p.delta < 0.0) || (!negative_branch && p.delta > 0.0)) {
      xs.push_back(std::log(std::abs(p.delta)));
      ys.push_back(std::log(std::abs(p.a - p.b)));
    }
  }
  if (xs.size() < 2) throw InvalidParams("need at least two points on the branch");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> default_delta_grid(int per_side) {
  if (per_side < 2) throw InvalidParams("delta grid needs at least two magnitudes per side");
  std::vector<double> out;
  for (int sign : {-1, 1}) {
    for (int i = 0; i < per_side; ++i) {
      const double e = -4.0 + 2.0 * i / (per_side - 1);
      out.push_back(sign * std::pow(10.0, e));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string pt_csv_header() { return "delta,re1,im1,re2,im2"; }

std::string pt_csv_row(const PtPoint& p) {
  return fmt_e12(p.delta) + ',' + fmt_e12(p.a.real()) + ',' + fmt_e12(p.a.imag()) + ',' +
         fmt_e12(p.b.real()) + ',' + fmt_e12(p.b.imag());
}

std::string scan_csv_header() { return "W,delta_gap,nu2"; }

std::string scan_csv_row(const OverlapReport& r) {
  return fmt_e12(r.w) + ',' + fmt_e12(r.gap) + ',' + fmt_e12(r.nu2);
}

}  // namespace aess
