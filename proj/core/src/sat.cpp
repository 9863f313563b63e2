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

#include "aess/sat.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "aess/errors.hpp"

namespace aess {

std::uint64_t Clause::variable_mask() const {
  std::uint64_t mask = 0;
  for (const auto& lit : literals) mask |= std::uint64_t{1} << (lit.variable - 1);
  return mask;
}

std::uint64_t Clause::violating_bits() const {
  // x_v is false when its bit is 0; (not x_v) is false when its bit is 1.
  std::uint64_t bits = 0;
  for (const auto& lit : literals) {
    if (lit.negated) bits |= std::uint64_t{1} << (lit.variable - 1);
  }
  return bits;
}

std::string Assignment::to_bitstring() const {
  std::string out(static_cast<std::size_t>(num_vars), '0');
  for (int v = 1; v <= num_vars; ++v) {
    if (value(v)) out[static_cast<std::size_t>(v - 1)] = '1';
  }
  return out;
}

Assignment Assignment::from_bitstring(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxSatVars)) {
    throw SyntaxError("assignment bitstring must hold 1.." + std::to_string(kMaxSatVars) + " bits");
  }
  Assignment a{static_cast<int>(text.size()), 0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      a.bits |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw SyntaxError("assignment bitstring contains '" + std::string(1, text[i]) + "'");
    }
  }
  return a;
}

SatInstance::SatInstance(int num_vars, std::vector<Clause> clauses,
                         std::optional<Assignment> planted)
    : num_vars_(num_vars), clauses_(std::move(clauses)), planted_(std::move(planted)) {
  if (num_vars_ < 1) throw InvalidParams("instance needs at least one variable");
  if (num_vars_ > kMaxSatVars) {
    throw TooLarge("instances are limited to " + std::to_string(kMaxSatVars) + " variables");
  }
  for (const auto& clause : clauses_) {
    for (const auto& lit : clause.literals) {
      if (lit.variable < 1 || lit.variable > num_vars_) {
        throw InvalidParams("literal variable " + std::to_string(lit.variable) +
                            " outside [1, " + std::to_string(num_vars_) + "]");
      }
    }
    const auto& l = clause.literals;
    if (l[0].variable == l[1].variable || l[0].variable == l[2].variable ||
        l[1].variable == l[2].variable) {
      throw NotThreeSat("clause repeats a variable");
    }
  }
  if (planted_) {
    if (planted_->num_vars != num_vars_) {
      throw InvalidParams("planted assignment length differs from variable count");
    }
    for (const auto& clause : clauses_) {
      if (clause.violated_by(planted_->bits)) {
        throw InvalidParams("planted assignment violates a clause");
      }
    }
  }
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == 'c';
}

}  // namespace

SatInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Assignment> planted;
  int n = -1;
  long m = -1;
  std::vector<Clause> clauses;
  std::vector<int> pending;
  int line_no = 0;

  auto fail = [&](const std::string& what) {
    throw SyntaxError("line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_comment_or_blank(line)) {
      std::istringstream ls(line);
      std::string c, key, bits;
      if (ls >> c >> key >> bits && c == "c" && key == "planted") {
        planted = Assignment::from_bitstring(bits);
      }
      continue;
    }
    if (line[line.find_first_not_of(" \t")] == '%') break;  // SATLIB trailer
    std::istringstream ls(line);
    if (n < 0) {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> n >> m) || p != "p" || fmt != "cnf" || n < 1 || m < 0) {
        fail("expected header 'p cnf <vars> <clauses>'");
      }
      std::string extra;
      if (ls >> extra) fail("trailing tokens after header");
      continue;
    }
    std::string tok;
    while (ls >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) fail("bad literal '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad literal '" + tok + "'");
      }
      if (lit == 0) {
        if (pending.size() != 3) {
          throw NotThreeSat("line " + std::to_string(line_no) + ": clause has " +
                            std::to_string(pending.size()) + " literals");
        }
        Clause clause;
        for (std::size_t k = 0; k < 3; ++k) {
          if (std::abs(pending[k]) > n) fail("literal exceeds declared variable count");
          clause.literals[k] = Literal{std::abs(pending[k]), pending[k] < 0};
        }
        const auto& l = clause.literals;
        if (l[0].variable == l[1].variable || l[0].variable == l[2].variable ||
            l[1].variable == l[2].variable) {
          throw NotThreeSat("line " + std::to_string(line_no) + ": clause repeats a variable");
        }
        clauses.push_back(clause);
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (n < 0) throw SyntaxError("missing 'p cnf' header");
  if (!pending.empty()) throw SyntaxError("last clause is not zero-terminated");
  if (static_cast<long>(clauses.size()) != m) {
    throw SyntaxError("header declares " + std::to_string(m) + " clauses, found " +
                      std::to_string(clauses.size()));
  }
  if (planted && planted->num_vars != n) {
    throw SyntaxError("planted bitstring length differs from variable count");
  }
  try {
    return SatInstance(n, std::move(clauses), planted);
  } catch (const InvalidParams& e) {
    throw SyntaxError(e.what());
  }
}

std::string serialize_dimacs(const SatInstance& inst) {
  std::ostringstream out;
  if (inst.planted()) out << "c planted " << inst.planted()->to_bitstring() << '\n';
  out << "p cnf " << inst.num_vars() << ' ' << inst.num_clauses() << '\n';
  for (const auto& clause : inst.clauses()) {
    for (const auto& lit : clause.literals) out << lit.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

SatInstance read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

void write_dimacs_file(const SatInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize_dimacs(inst);
}

SatInstance generate_planted_instance(int n_vars, double ratio, double p0, std::uint64_t seed) {
  if (n_vars < 3) throw InvalidParams("need at least 3 variables");
  if (n_vars > kMaxSatVars) throw InvalidParams("too many variables");
  if (!(ratio > 0.0)) throw InvalidParams("clause ratio must be positive");
  if (!(p0 >= 0.0) || p0 > 1.0 / 6.0) {
    throw InvalidParams("p0 must lie in [0, 1/6] so that 1 - 6 p0 >= 0");
  }

  std::mt19937_64 rng(seed);
  Assignment plant{n_vars, 0};
  std::uniform_int_distribution<std::uint64_t> bit(0, 1);
  for (int v = 0; v < n_vars; ++v) plant.bits |= bit(rng) << v;

  const auto m = static_cast<std::size_t>(std::llround(ratio * n_vars));
  std::uniform_int_distribution<int> pick(1, n_vars);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> which(0, 2);

  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::array<int, 3> vars{};
    for (int k = 0; k < 3;) {
      const int v = pick(rng);
      if (std::find(vars.begin(), vars.begin() + k, v) == vars.begin() + k) vars[k++] = v;
    }
    std::sort(vars.begin(), vars.end());

    // satisfied[k]: literal k agrees with the plant.
    std::array<bool, 3> satisfied{true, true, true};
    const double u = unit(rng);
    if (u < 3.0 * p0) {
      satisfied = {false, false, false};
      satisfied[static_cast<std::size_t>(which(rng))] = true;  // k = 1
    } else if (u < 6.0 * p0) {
      satisfied[static_cast<std::size_t>(which(rng))] = false;  // k = 2
    }

    Clause clause;
    for (std::size_t k = 0; k < 3; ++k) {
      const bool value = plant.value(vars[k]);
      // A literal is true iff negated != value.
      clause.literals[k] = Literal{vars[k], satisfied[k] ? !value : value};
    }
    clauses.push_back(clause);
  }
  return SatInstance(n_vars, std::move(clauses), plant);
}

int satisfied_literals(const Clause& clause, const Assignment& a) {
  int k = 0;
  for (const auto& lit : clause.literals) k += (a.value(lit.variable) != lit.negated) ? 1 : 0;
  return k;
}

int violations(std::uint64_t bits, const SatInstance& inst) {
  int count = 0;
  for (const auto& clause : inst.clauses()) count += clause.violated_by(bits) ? 1 : 0;
  return count;
}

int violations(const Assignment& a, const SatInstance& inst) {
  if (a.num_vars != inst.num_vars()) throw ShapeMismatch("assignment length differs from instance");
  return violations(a.bits, inst);
}

SolutionCount count_solutions(const SatInstance& inst, std::uint64_t cap) {
  const int n = inst.num_vars();
  if (n > kMaxEnumerationVars) {
    throw TooLarge("enumeration limited to " + std::to_string(kMaxEnumerationVars) + " variables");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  masks.reserve(inst.num_clauses());
  for (const auto& c : inst.clauses()) masks.emplace_back(c.variable_mask(), c.violating_bits());

  SolutionCount out;
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < states; ++s) {
    bool ok = true;
    for (const auto& [mask, bad] : masks) {
      if ((s & mask) == bad) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++out.count;
    out.solutions.push_back(Assignment{n, s});
    if (cap != 0 && out.count >= cap) break;
  }
  return out;
}

FilteredInstance filter_by_solution_count(std::uint64_t first_seed, int target,
                                          const PlantedParams& params,
                                          std::uint64_t attempt_cap) {
  if (target != 1 && target != 2) throw InvalidParams("target solution count must be 1 or 2");
  for (std::uint64_t attempt = 0; attempt < attempt_cap; ++attempt) {
    const std::uint64_t seed = first_seed + attempt;
    SatInstance inst = generate_planted_instance(params, seed);
    auto sols = count_solutions(inst, static_cast<std::uint64_t>(target) + 1);
    if (sols.count == static_cast<std::uint64_t>(target)) {
      return FilteredInstance{std::move(inst), std::move(sols.solutions), seed, attempt + 1};
    }
  }
  throw Exhausted("no instance with " + std::to_string(target) + " solution(s) after " +
                  std::to_string(attempt_cap) + " attempts");
}

}  // namespace aess
