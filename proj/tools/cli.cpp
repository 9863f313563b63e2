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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aess/dynamics.hpp"
#include "aess/ensemble.hpp"
#include "aess/ep.hpp"
#include "aess/errors.hpp"
#include "aess/fit.hpp"
#include "aess/models.hpp"
#include "aess/sat.hpp"
#include "aess/spectral.hpp"

namespace aess::cli {

namespace {

struct ModelArgs {
  std::string model = "sat3-classical";
  std::string instance;
  int n = 0;
  double h = 1.0;
};

struct SolverArgs {
  std::string mode = "auto";
  int k = 6;
  double shift = 0.05;
};

struct OutputArgs {
  std::string path;
};

void add_model_options(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--model", m.model,
                  "sat3-classical, sat3-quantum, sat3-hx, aklt, xx-dephasing or ferro-chain")
      ->capture_default_str();
  sub->add_option("-i,--instance", m.instance, "DIMACS file (3SAT models)");
  sub->add_option("--n", m.n, "number of sites (chain models)");
  sub->add_option("--field", m.h, "transverse field strength (sat3-hx)")->capture_default_str();
}

void add_solver_options(CLI::App* sub, SolverArgs& s) {
  sub->add_option("--mode", s.mode, "auto, dense, shift-invert or direct")->capture_default_str();
  sub->add_option("--k", s.k, "eigenpairs requested from iterative solvers")->capture_default_str();
  sub->add_option("--shift", s.shift, "shift-invert pole")->capture_default_str();
}

SpectralOptions spectral_options(const SolverArgs& s) {
  SpectralOptions o;
  if (s.mode == "auto") {
    o.mode = SolveMode::kAuto;
  } else if (s.mode == "dense") {
    o.mode = SolveMode::kDense;
  } else if (s.mode == "shift-invert") {
    o.mode = SolveMode::kShiftInvert;
  } else if (s.mode == "direct") {
    o.mode = SolveMode::kDirect;
  } else {
    throw InvalidParams("unknown solver mode '" + s.mode + "'");
  }
  if (s.k < 1) throw InvalidParams("--k must be positive");
  o.k = s.k;
  o.shift = s.shift;
  return o;
}

ModelSpec load_spec(const ModelArgs& m) {
  const ModelKind kind = parse_model(m.model);
  if (is_sat_model(kind)) {
    if (m.instance.empty()) throw InvalidParams("model " + m.model + " needs --instance");
    return make_sat_model(kind, read_dimacs_file(m.instance), m.h);
  }
  if (m.n <= 0) throw InvalidParams("model " + m.model + " needs --n");
  return make_chain_model(kind, m.n);
}

// Copies values from a JSON object into options not given on the command
// line. Keys are long option names; underscores stand for dashes.
void apply_json_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw SyntaxError("config " + path + " is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + name);
    if (opt == nullptr || name == "config") {
      throw InvalidParams("config key '" + key + "' is not an option of " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    std::vector<std::string> inputs;
    auto scalar = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) inputs.push_back(scalar(v));
    } else {
      inputs.push_back(scalar(value));
    }
    for (const auto& s : inputs) opt->add_result(s);
    opt->run_callback();
  }
}

// Writes data to `path`, or to `out` when the path is empty. Returns the
// stream the one-line summary belongs on.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, std::ostream& err) : out_(&out), err_(&err) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidParams("cannot write " + path);
    }
  }
  std::ostream& data() { return file_ ? *file_ : *out_; }
  std::ostream& summary() { return file_ ? *out_ : *err_; }

 private:
  std::ostream* out_;
  std::ostream* err_;
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  int n = 10;
  std::uint64_t seed = 1;
  double ratio = kSatThreshold;
  double p0 = kDefaultP0;
  bool unique = false;
  int solutions = 0;
  std::string out;
};

int run_gen(const GenArgs& a, std::ostream& out) {
  int target = a.solutions;
  if (a.unique) {
    if (target != 0 && target != 1) throw InvalidParams("--unique conflicts with --solutions");
    target = 1;
  }
  if (target < 0 || target > 2) throw InvalidParams("--solutions must be 0, 1 or 2");
  const PlantedParams params{a.n, a.ratio, a.p0};
  std::optional<SatInstance> inst;
  std::uint64_t seed = a.seed;
  if (target > 0) {
    FilteredInstance fi = filter_by_solution_count(a.seed, target, params);
    seed = fi.seed;
    inst = std::move(fi.instance);
  } else {
    inst = generate_planted_instance(params, a.seed);
  }
  write_dimacs_file(*inst, a.out);
  out << "gen: wrote " << a.out << " (N=" << inst->num_vars() << ", M=" << inst->num_clauses()
      << ", seed=" << seed;
  if (inst->num_vars() <= 24) out << ", solutions=" << count_solutions(*inst).count;
  out << ")\n";
  return kExitOk;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  ModelArgs model;
  SolverArgs solver;
  double w = 1.0;
  std::string out;
  std::string eigenvalues;
  std::string matrix_market;
};

int run_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = load_spec(a.model);
  const ModelPoint p = build_model(spec, a.w);
  if (!a.matrix_market.empty()) write_matrix_market(a.matrix_market, p.generator);
  const SpectralDecomposition dec = full_spectrum(p.generator, spectral_options(a.solver), p.targets);
  OverlapReport rep = overlap_report(dec, &p.generator);
  rep.n = spec.n;
  if (!a.eigenvalues.empty()) {
    std::ofstream ev(a.eigenvalues);
    if (!ev) throw InvalidParams("cannot write " + a.eigenvalues);
    ev << "index,re,im,target,has_left\n";
    for (Index i = 0; i < dec.size(); ++i) {
      const bool target =
          std::find(dec.target_modes.begin(), dec.target_modes.end(), i) != dec.target_modes.end();
      ev << i << ',' << fmt_e12(dec.values[i].real()) << ',' << fmt_e12(dec.values[i].imag())
         << ',' << target << ',' << static_cast<int>(dec.has_left[i]) << '\n';
    }
  }
  Sink sink(a.out, out, err);
  sink.data() << overlap_csv_header() << '\n' << overlap_csv_row(rep) << '\n';
  sink.summary() << "spectrum: " << rep.model << " W=" << fmt(rep.w) << " d=" << rep.d
                 << " gap=" << fmt(rep.gap, 8) << " |nu|^2=" << fmt(rep.nu2, 8) << " ("
                 << dec.size() << " modes, " << dec.method << ")\n";
  return kExitOk;
}

// ---- scanw -----------------------------------------------------------------

struct ScanArgs {
  ModelArgs model;
  SolverArgs solver;
  std::vector<double> w;
  double w_min = 0.0, w_max = 1.0, w_step = 0.1;
  std::string out;
};

int run_scanw(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<double> grid = a.w;
  if (grid.empty()) {
    if (!(a.w_step > 0.0) || a.w_max < a.w_min) throw InvalidParams("bad W range");
    const auto steps = static_cast<int>(std::floor((a.w_max - a.w_min) / a.w_step + 1e-9));
    for (int i = 0; i <= steps; ++i) grid.push_back(a.w_min + i * a.w_step);
  }
  const ModelSpec spec = load_spec(a.model);
  const auto reports = scan_w(builder_for(spec), grid, spectral_options(a.solver));
  Sink sink(a.out, out, err);
  sink.data() << scan_csv_header() << '\n';
  for (const auto& r : reports) sink.data() << scan_csv_row(r) << '\n';
  sink.summary() << "scanw: " << reports.size() << " points on W in [" << fmt(grid.front())
                 << ", " << fmt(grid.back()) << "]\n";
  return kExitOk;
}

// ---- wc --------------------------------------------------------------------

struct WcArgs {
  ModelArgs model;
  SolverArgs solver;
  double lo = 1.0, hi = 1.5, tol = 1e-6;
  double probe_offset = 1.0;
  std::string out;
};

EpOptions ep_options(const WcArgs& a) {
  EpOptions o;
  o.w_lo = a.lo;
  o.w_hi = a.hi;
  o.tol = a.tol;
  o.probe_offset = a.probe_offset;
  o.spectral = spectral_options(a.solver);
  return o;
}

int run_wc(const WcArgs& a, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = load_spec(a.model);
  const EpReport rep = find_wc(builder_for(spec), ep_options(a));
  Sink sink(a.out, out, err);
  sink.data() << ep_report_json(rep) << '\n';
  sink.summary() << "wc: W_c = " << fmt(rep.wc, 9) << " (bracket [" << fmt(rep.lo, 9) << ", "
                 << fmt(rep.hi, 9) << "], " << rep.samples.size() << " evaluations)\n";
  return kExitOk;
}

// ---- ptscan ----------------------------------------------------------------

struct PtArgs {
  WcArgs wc;
  std::optional<double> w;
  std::string perturbation = "lowering";
  int per_side = 9;
};

int run_ptscan(const PtArgs& a, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = load_spec(a.wc.model);
  const double w = a.w ? *a.w : find_wc(builder_for(spec), ep_options(a.wc)).wc;
  const PerturbationKind kind = parse_perturbation(a.perturbation);
  PtOptions po;
  po.spectral = spectral_options(a.wc.solver);
  const PtScanResult r =
      pt_scan(build_model(spec, w),
              [&](double d) { return build_perturbation(kind, d, w, spec); },
              default_delta_grid(a.per_side), po);
  Sink sink(a.wc.out, out, err);
  sink.data() << "# W = " << fmt_e12(w) << '\n' << pt_csv_header() << '\n';
  double max_im_pos = 0.0;
  for (const auto& p : r.points) {
    sink.data() << pt_csv_row(p) << '\n';
    if (p.delta > 0.0) {
      max_im_pos = std::max({max_im_pos, std::abs(p.a.imag()), std::abs(p.b.imag())});
    }
  }
  sink.summary() << "ptscan: W=" << fmt(w, 9) << " exponent(delta<0)="
                 << fmt(splitting_exponent(r, true), 4)
                 << " exponent(delta>0)=" << fmt(splitting_exponent(r, false), 4)
                 << " max|Im|(delta>0)=" << fmt(max_im_pos, 3) << '\n';
  return kExitOk;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveArgs {
  ModelArgs model;
  SolverArgs solver;
  double w = 1.0;
  std::string method = "spectral";
  double t_max = 20.0;
  double dt = 0.0;
  int samples = 201;
  int record_every = 10;
  std::string out;
};

int run_evolve(const EvolveArgs& a, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = load_spec(a.model);
  const ModelPoint p = build_model(spec, a.w);
  const GeneratorInfo& info = info_of(p.generator);
  const CVec rho0 = maximally_mixed(info);
  const CVec target = p.targets.cols() ? CVec(p.targets.col(0)) : CVec();
  Trajectory traj;
  if (a.method == "spectral") {
    if (a.samples < 2) throw InvalidParams("--samples must be at least 2");
    SpectralOptions so = spectral_options(a.solver);
    so.mode = SolveMode::kDense;
    const SpectralDecomposition dec = full_spectrum(p.generator, so, p.targets);
    std::vector<double> times;
    for (int i = 0; i < a.samples; ++i) times.push_back(a.t_max * i / (a.samples - 1));
    traj = evolve_spectral(dec, rho0, times, target);
  } else if (a.method == "rk4") {
    const double dt = a.dt > 0.0 ? a.dt : 0.05 / max_row_norm(p.generator);
    traj = evolve_rk4(p.generator, rho0, dt, a.t_max, a.record_every, target);
  } else {
    throw InvalidParams("unknown method '" + a.method + "' (spectral or rk4)");
  }
  Sink sink(a.out, out, err);
  sink.data() << trajectory_csv_header() << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    sink.data() << trajectory_csv_row(traj, i) << '\n';
  }
  sink.summary() << "evolve: " << a.method << ' ' << traj.times.size() << " samples to t="
                 << fmt(a.t_max) << ", final fidelity " << fmt(traj.fidelity.back(), 8) << '\n';
  return kExitOk;
}

// ---- ensemble --------------------------------------------------------------

struct EnsembleArgs {
  std::string config;
  std::optional<int> threads;
  std::optional<std::string> rows;
  std::optional<std::string> summary;
};

int run_ensemble_cmd(const EnsembleArgs& a, std::ostream& out) {
  RunConfig cfg = load_run_config(a.config);
  if (a.threads) cfg.threads = *a.threads;
  if (a.rows) cfg.rows_path = *a.rows;
  if (a.summary) cfg.summary_path = *a.summary;
  const EnsembleSummary s = run_ensemble(cfg);
  auto write = [&](const std::string& path, auto&& writer) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw InvalidParams("cannot write " + path);
    writer(f, cfg, s);
  };
  write(cfg.rows_path, write_instance_csv);
  write(cfg.summary_path, write_summary_csv);
  int failures = 0;
  for (const auto& r : s.rows) failures += r.failures;
  out << "ensemble: " << cfg.model << ", " << s.instances.size() << " rows, " << s.rows.size()
      << " (N, W) groups, " << failures << " failures\n";
  return kExitOk;
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
  std::string input;
  std::string x = "N";
  std::string y = "mean_delta";
  std::string kind = "exponential";
  std::optional<double> w;
  std::string out;
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

int run_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.input);
  if (!in) throw InvalidParams("cannot open " + a.input);
  std::string line;
  std::vector<std::string> header;
  std::vector<double> xs, ys;
  Index xi = -1, yi = -1, wi = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      auto find = [&](const std::string& name) -> Index {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<Index>(it - header.begin());
      };
      xi = find(a.x);
      yi = find(a.y);
      wi = find("W");
      if (xi < 0 || yi < 0) throw InvalidParams("columns '" + a.x + "' or '" + a.y + "' missing");
      if (a.w && wi < 0) throw InvalidParams("--w given but the table has no W column");
      continue;
    }
    if (static_cast<Index>(cells.size()) != static_cast<Index>(header.size())) {
      throw SyntaxError("ragged row in " + a.input);
    }
    if (a.w && std::abs(std::stod(cells[wi]) - *a.w) > 1e-12) continue;
    const double x = std::stod(cells[xi]);
    const double y = std::stod(cells[yi]);
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    xs.push_back(x);
    ys.push_back(y);
  }
  const FitResult f = fit_scaling(xs, ys, parse_fit_kind(a.kind));
  Sink sink(a.out, out, err);
  sink.data() << fit_result_json(f) << '\n';
  sink.summary() << "fit: " << fit_kind_tag(f.kind) << " a=" << fmt(f.a) << " b=" << fmt(f.b)
                 << " c=" << fmt(f.c) << " R^2=" << fmt(f.r2) << " over " << xs.size()
                 << " points\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state and exceptional-point analysis of dissipative generators", "aess"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::map<CLI::App*, std::string> configs;
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", configs[sub], "JSON object of option values");
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted 3SAT instance");
  gen_cmd->add_option("--n", gen.n, "variables")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "first seed")->capture_default_str();
  gen_cmd->add_option("--ratio", gen.ratio, "clauses per variable")->capture_default_str();
  gen_cmd->add_option("--p0", gen.p0, "sign pattern weight")->capture_default_str();
  gen_cmd->add_flag("--unique", gen.unique, "retry seeds until the solution is unique");
  gen_cmd->add_option("--solutions", gen.solutions, "retry until exactly 1 or 2 solutions");
  gen_cmd->add_option("-o,--out", gen.out, "DIMACS output")->required();
  with_config(gen_cmd);

  SpectrumArgs spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "eigen-analysis at one W");
  add_model_options(spec_cmd, spec.model);
  add_solver_options(spec_cmd, spec.solver);
  spec_cmd->add_option("--w", spec.w, "jump strength")->capture_default_str();
  spec_cmd->add_option("-o,--out", spec.out, "CSV output (stdout if absent)");
  spec_cmd->add_option("--eigenvalues", spec.eigenvalues, "CSV of every computed eigenvalue");
  spec_cmd->add_option("--matrix-market", spec.matrix_market, "export of the generator");
  with_config(spec_cmd);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scanw", "gap and overlap along a W grid");
  add_model_options(scan_cmd, scan.model);
  add_solver_options(scan_cmd, scan.solver);
  scan_cmd->add_option("--w", scan.w, "explicit W values");
  scan_cmd->add_option("--w-min", scan.w_min)->capture_default_str();
  scan_cmd->add_option("--w-max", scan.w_max)->capture_default_str();
  scan_cmd->add_option("--w-step", scan.w_step)->capture_default_str();
  scan_cmd->add_option("-o,--out", scan.out, "CSV output (stdout if absent)");
  with_config(scan_cmd);

  auto add_wc_options = [&](CLI::App* sub, WcArgs& a) {
    add_model_options(sub, a.model);
    add_solver_options(sub, a.solver);
    sub->add_option("--lo", a.lo, "bracket start")->capture_default_str();
    sub->add_option("--hi", a.hi, "bracket end")->capture_default_str();
    sub->add_option("--tol", a.tol, "bracket width")->capture_default_str();
    sub->add_option("--probe-offset", a.probe_offset)->capture_default_str();
  };
  WcArgs wc;
  auto* wc_cmd = app.add_subcommand("wc", "locate the exceptional point W_c");
  add_wc_options(wc_cmd, wc);
  wc_cmd->add_option("-o,--out", wc.out, "JSON output (stdout if absent)");
  with_config(wc_cmd);

  PtArgs pt;
  auto* pt_cmd = app.add_subcommand("ptscan", "eigenvalue pair under a weak perturbation");
  add_wc_options(pt_cmd, pt.wc);
  pt_cmd->add_option("--w", pt.w, "jump strength (W_c is searched if absent)");
  pt_cmd->add_option("--perturbation", pt.perturbation, "lowering, flip or sz")
      ->capture_default_str();
  pt_cmd->add_option("--per-side", pt.per_side, "magnitudes per sign in 1e-4..1e-2")
      ->capture_default_str();
  pt_cmd->add_option("-o,--out", pt.wc.out, "CSV output (stdout if absent)");
  with_config(pt_cmd);

  EvolveArgs ev;
  auto* ev_cmd = app.add_subcommand("evolve", "time evolution from the maximally mixed state");
  add_model_options(ev_cmd, ev.model);
  add_solver_options(ev_cmd, ev.solver);
  ev_cmd->add_option("--w", ev.w)->capture_default_str();
  ev_cmd->add_option("--method", ev.method, "spectral or rk4")->capture_default_str();
  ev_cmd->add_option("--t-max", ev.t_max)->capture_default_str();
  ev_cmd->add_option("--dt", ev.dt, "RK4 step (0 picks 0.05 / ||L||)")->capture_default_str();
  ev_cmd->add_option("--samples", ev.samples, "spectral sample count")->capture_default_str();
  ev_cmd->add_option("--record-every", ev.record_every, "RK4 steps per sample")
      ->capture_default_str();
  ev_cmd->add_option("-o,--out", ev.out, "CSV output (stdout if absent)");
  with_config(ev_cmd);

  EnsembleArgs ens;
  auto* ens_cmd = app.add_subcommand("ensemble", "batch run over random instances");
  ens_cmd->add_option("--config", ens.config, "run configuration (JSON)")->required();
  ens_cmd->add_option("--threads", ens.threads, "worker count");
  ens_cmd->add_option("--rows", ens.rows, "per-instance CSV");
  ens_cmd->add_option("--summary", ens.summary, "per-(N, W) CSV");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "finite-size fit of a CSV column");
  fit_cmd->add_option("-i,--input", fit.input, "CSV table")->required();
  fit_cmd->add_option("--x", fit.x, "abscissa column")->capture_default_str();
  fit_cmd->add_option("--y", fit.y, "ordinate column")->capture_default_str();
  fit_cmd->add_option("--kind", fit.kind, "exponential, power or shifted-power")
      ->capture_default_str();
  fit_cmd->add_option("--w", fit.w, "keep rows with this W");
  fit_cmd->add_option("-o,--out", fit.out, "JSON output (stdout if absent)");
  with_config(fit_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (auto it = configs.find(sub); it != configs.end() && !it->second.empty()) {
      apply_json_config(sub, it->second);
    }
    if (sub == gen_cmd) return run_gen(gen, out);
    if (sub == spec_cmd) return run_spectrum(spec, out, err);
    if (sub == scan_cmd) return run_scanw(scan, out, err);
    if (sub == wc_cmd) return run_wc(wc, out, err);
    if (sub == pt_cmd) return run_ptscan(pt, out, err);
    if (sub == ev_cmd) return run_evolve(ev, out, err);
    if (sub == ens_cmd) return run_ensemble_cmd(ens, out);
    if (sub == fit_cmd) return run_fit(fit, out, err);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Exhausted& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace aess::cli
