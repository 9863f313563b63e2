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

// Batch runs over random instances and sizes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aess/fit.hpp"
#include "aess/sat.hpp"
#include "aess/spectral.hpp"

namespace aess {

struct RunConfig {
  std::string model = "sat3-classical";
  std::vector<int> n_list;
  int instances = 100;
  int target_solutions = 1;  // 1 or 2 filters by solution count; 0 keeps any
  std::vector<double> w_list{1.0};
  double p0 = kDefaultP0;
  double ratio = kSatThreshold;
  std::uint64_t seed_base = 1;
  double h = 1.0;
  std::string fit = "exponential";
  bool find_wc = false;
  double wc_lo = 1.0, wc_hi = 1.5, wc_tol = 1e-6;
  std::string rows_path;     // per-instance CSV; empty to skip
  std::string summary_path;  // per-(N, W) CSV; empty to skip
  int threads = 0;           // 0: AESS_THREADS or hardware concurrency
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json run_config_to_json(const RunConfig& c);
RunConfig load_run_config(const std::string& path);

/// seed of instance k at size n: base XOR mix(n, k).
std::uint64_t instance_seed(std::uint64_t base, int n, int k);

struct InstanceRow {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;  // seed that produced the instance
  OverlapReport report;
  double wc = 0.0;  // NaN unless requested
  std::string status = "ok";
};

struct SummaryRow {
  int n = 0;
  double w = 0.0;
  double mean_gap = 0.0, std_gap = 0.0;
  double mean_one_minus_nu2 = 0.0, std_one_minus_nu2 = 0.0;
  double mean_wc = 0.0, std_wc = 0.0;
  int count = 0;
  int failures = 0;
};

struct EnsembleSummary {
  std::vector<SummaryRow> rows;  // ascending (N, W)
  std::vector<InstanceRow> instances;  // ascending (N, k, W)
};

/// Runs every (N, k) task on a thread pool; rows come out in a fixed order
/// regardless of scheduling. Per-instance failures are recorded and the run
/// continues; throws Exhausted if more than half fail at some N.
EnsembleSummary run_ensemble(const RunConfig& cfg);

/// Aggregates rows (all W values of one N kept separate).
std::vector<SummaryRow> summarize(const std::vector<InstanceRow>& rows);

std::string instance_csv_header();
std::string instance_csv_row(const InstanceRow& r, const std::string& model);
std::string summary_csv_header();
std::string summary_csv_row(const SummaryRow& r);
/// Writes "# config: {...}" followed by header and rows.
void write_instance_csv(std::ostream& out, const RunConfig& cfg, const EnsembleSummary& s);
void write_summary_csv(std::ostream& out, const RunConfig& cfg, const EnsembleSummary& s);

/// Column of the summary for fitting: "gap", "one_minus_nu2" or "wc"; one W.
FitResult fit_summary(const std::vector<SummaryRow>& rows, const std::string& column, FitKind kind,
                      double w);

/// Worker count: cfg value if positive, else AESS_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace aess
