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

#include "aess/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "aess/ep.hpp"
#include "aess/errors.hpp"
#include "aess/models.hpp"

namespace aess {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::vector<InstanceRow> run_task(const RunConfig& cfg, ModelKind kind, int n, int k) {
  const std::uint64_t seed = instance_seed(cfg.seed_base, n, k);
  std::vector<InstanceRow> rows;
  for (double w : cfg.w_list) {
    InstanceRow r;
    r.n = n;
    r.k = k;
    r.seed = seed;
    r.wc = kNaN;
    r.report.w = w;
    r.report.n = n;
    rows.push_back(r);
  }
  try {
    ModelSpec spec;
    std::uint64_t used = seed;
    if (is_sat_model(kind)) {
      const PlantedParams params{n, cfg.ratio, cfg.p0};
      if (cfg.target_solutions == 1 || cfg.target_solutions == 2) {
        FilteredInstance fi = filter_by_solution_count(seed, cfg.target_solutions, params);
        used = fi.seed;
        spec = make_sat_model(kind, std::move(fi.instance), cfg.h);
      } else {
        spec = make_sat_model(kind, generate_planted_instance(params, seed), cfg.h);
      }
    } else {
      spec = make_chain_model(kind, n);
    }
    double wc = kNaN;
    if (cfg.find_wc) {
      EpOptions eo;
      eo.w_lo = cfg.wc_lo;
      eo.w_hi = cfg.wc_hi;
      eo.tol = cfg.wc_tol;
      wc = find_wc(builder_for(spec), eo).wc;
    }
    for (std::size_t i = 0; i < cfg.w_list.size(); ++i) {
      OverlapReport rep = analyze_point(build_model(spec, cfg.w_list[i]));
      rep.n = n;
      rep.seed = used;
      rows[i].report = rep;
      rows[i].seed = used;
      rows[i].wc = wc;
    }
  } catch (const std::exception& e) {
    for (auto& r : rows) r.status = sanitize(e.what());
  }
  return rows;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

// Standard deviation among instances (n - 1 normalization; 0 for one row).
double stdev(const std::vector<double>& v) {
  if (v.size() < 2) return v.empty() ? kNaN : 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.model = get_or<std::string>(j, "model", c.model);
    c.n_list = get_or<std::vector<int>>(j, "n", c.n_list);
    c.instances = get_or<int>(j, "instances", c.instances);
    c.target_solutions = get_or<int>(j, "target_solutions", c.target_solutions);
    c.w_list = get_or<std::vector<double>>(j, "w", c.w_list);
    c.p0 = get_or<double>(j, "p0", c.p0);
    c.ratio = get_or<double>(j, "ratio", c.ratio);
    c.seed_base = get_or<std::uint64_t>(j, "seed_base", c.seed_base);
    c.h = get_or<double>(j, "h", c.h);
    c.fit = get_or<std::string>(j, "fit", c.fit);
    c.find_wc = get_or<bool>(j, "find_wc", c.find_wc);
    c.wc_lo = get_or<double>(j, "wc_lo", c.wc_lo);
    c.wc_hi = get_or<double>(j, "wc_hi", c.wc_hi);
    c.wc_tol = get_or<double>(j, "wc_tol", c.wc_tol);
    c.rows_path = get_or<std::string>(j, "rows_csv", c.rows_path);
    c.summary_path = get_or<std::string>(j, "summary_csv", c.summary_path);
    c.threads = get_or<int>(j, "threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("run config: ") + e.what());
  }
  parse_model(c.model);
  parse_fit_kind(c.fit);
  if (c.instances < 1) throw InvalidParams("run config: instances must be >= 1");
  if (c.n_list.empty()) throw InvalidParams("run config: empty N list");
  if (c.w_list.empty()) throw InvalidParams("run config: empty W list");
  if (c.target_solutions < 0 || c.target_solutions > 2) {
    throw InvalidParams("run config: target_solutions must be 0, 1 or 2");
  }
  return c;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = c.model;
  j["n"] = c.n_list;
  j["instances"] = c.instances;
  j["target_solutions"] = c.target_solutions;
  j["w"] = c.w_list;
  j["p0"] = c.p0;
  j["ratio"] = c.ratio;
  j["seed_base"] = c.seed_base;
  j["h"] = c.h;
  j["fit"] = c.fit;
  j["find_wc"] = c.find_wc;
  j["wc_lo"] = c.wc_lo;
  j["wc_hi"] = c.wc_hi;
  j["wc_tol"] = c.wc_tol;
  j["rows_csv"] = c.rows_path;
  j["summary_csv"] = c.summary_path;
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError("config " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::uint64_t instance_seed(std::uint64_t base, int n, int k) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
      static_cast<std::uint32_t>(k);
  return base ^ splitmix64(key);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int t = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AESS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) t = t > 0 ? std::min(t, cap) : cap;
  }
  return std::max(t, 1);
}

EnsembleSummary run_ensemble(const RunConfig& cfg) {
  const ModelKind kind = parse_model(cfg.model);
  struct Task {
    int n, k;
  };
  std::vector<Task> tasks;
  for (int n : cfg.n_list) {
    for (int k = 0; k < cfg.instances; ++k) tasks.push_back({n, k});
  }
  std::vector<std::vector<InstanceRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_task(cfg, kind, tasks[i].n, tasks[i].k);
    }
  };
  const int nthreads = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(tasks.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  EnsembleSummary s;
  for (auto& r : results) {
    for (auto& row : r) s.instances.push_back(std::move(row));
  }
  std::stable_sort(s.instances.begin(), s.instances.end(), [](const auto& a, const auto& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.k < b.k;
  });
  s.rows = summarize(s.instances);

  std::map<int, std::pair<int, int>> per_n;  // failed, total instances
  for (const auto& r : s.instances) {
    if (r.report.w != cfg.w_list.front()) continue;
    auto& e = per_n[r.n];
    e.second += 1;
    if (r.status != "ok") e.first += 1;
  }
  for (const auto& [n, e] : per_n) {
    if (2 * e.first > e.second) {
      throw Exhausted("more than half of the instances failed at N = " + std::to_string(n));
    }
  }
  return s;
}

std::vector<SummaryRow> summarize(const std::vector<InstanceRow>& rows) {
  std::map<std::pair<int, double>, std::vector<const InstanceRow*>> groups;
  for (const auto& r : rows) groups[{r.n, r.report.w}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    SummaryRow s;
    s.n = key.first;
    s.w = key.second;
    std::vector<double> gap, omn, wc;
    for (const auto* r : members) {
      if (r->status != "ok") {
        ++s.failures;
        continue;
      }
      ++s.count;
      gap.push_back(r->report.gap);
      omn.push_back(1.0 - r->report.nu2);
      if (std::isfinite(r->wc)) wc.push_back(r->wc);
    }
    s.mean_gap = mean(gap);
    s.std_gap = stdev(gap);
    s.mean_one_minus_nu2 = mean(omn);
    s.std_one_minus_nu2 = stdev(omn);
    s.mean_wc = mean(wc);
    s.std_wc = stdev(wc);
    out.push_back(s);
  }
  return out;
}

std::string instance_csv_header() {
  return "model,N,k,seed,W,d,delta,re_nu,im_nu,nu2,one_minus_nu2,kappa,rel_dr,rel_dl,wc,status";
}

std::string instance_csv_row(const InstanceRow& r, const std::string& model) {
  const OverlapReport& o = r.report;
  const bool ok = r.status == "ok";
  auto f = [&](double v) { return fmt_e12(ok ? v : kNaN); };
  return model + ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' +
         std::to_string(r.seed) + ',' + fmt_e12(o.w) + ',' + std::to_string(ok ? o.d : 0) + ',' +
         f(o.gap) + ',' + f(o.nu.real()) + ',' + f(o.nu.imag()) + ',' + f(o.nu2) + ',' +
         f(1.0 - o.nu2) + ',' + f(o.kappa) + ',' + f(o.rel_dr) + ',' + f(o.rel_dl) + ',' +
         fmt_e12(r.wc) + ',' + r.status;
}

std::string summary_csv_header() {
  return "N,W,mean_delta,std_delta,mean_one_minus_nu2,std_one_minus_nu2,mean_wc,std_wc,count,"
         "failures";
}

std::string summary_csv_row(const SummaryRow& r) {
  return std::to_string(r.n) + ',' + fmt_e12(r.w) + ',' + fmt_e12(r.mean_gap) + ',' +
         fmt_e12(r.std_gap) + ',' + fmt_e12(r.mean_one_minus_nu2) + ',' +
         fmt_e12(r.std_one_minus_nu2) + ',' + fmt_e12(r.mean_wc) + ',' + fmt_e12(r.std_wc) + ',' +
         std::to_string(r.count) + ',' + std::to_string(r.failures);
}

void write_instance_csv(std::ostream& out, const RunConfig& cfg, const EnsembleSummary& s) {
  out << "# config: " << run_config_to_json(cfg).dump() << '\n';
  out << instance_csv_header() << '\n';
  for (const auto& r : s.instances) out << instance_csv_row(r, cfg.model) << '\n';
}

void write_summary_csv(std::ostream& out, const RunConfig& cfg, const EnsembleSummary& s) {
  out << "# config: " << run_config_to_json(cfg).dump() << '\n';
  out << summary_csv_header() << '\n';
  for (const auto& r : s.rows) out << summary_csv_row(r) << '\n';
}

FitResult fit_summary(const std::vector<SummaryRow>& rows, const std::string& column, FitKind kind,
                      double w) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.w != w || r.count == 0) continue;
    double v;
    if (column == "gap") {
      v = r.mean_gap;
    } else if (column == "one_minus_nu2") {
      v = r.mean_one_minus_nu2;
    } else if (column == "wc") {
      v = r.mean_wc;
    } else {
      throw InvalidParams("unknown summary column '" + column + "'");
    }
    x.push_back(r.n);
    y.push_back(v);
  }
  return fit_scaling(x, y, kind);
}

}  // namespace aess
