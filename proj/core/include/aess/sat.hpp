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

// Random 3SAT instances with a planted (hidden) solution, DIMACS CNF I/O and
// exhaustive solution counting.
//
// Bit convention used everywhere downstream: bit n-1 of an assignment mask
// holds variable x_n, 1 = TRUE. The same mask indexes classical basis states
// and qubit computational-basis states.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aess {

inline constexpr double kSatThreshold = 4.267;
inline constexpr double kDefaultP0 = 0.08;
inline constexpr int kMaxSatVars = 64;
inline constexpr int kMaxEnumerationVars = 30;

struct Literal {
  int variable = 1;  // 1-based
  bool negated = false;

  /// DIMACS integer form: +v or -v.
  int to_dimacs() const { return negated ? -variable : variable; }
  bool operator==(const Literal&) const = default;
};

struct Clause {
  std::array<Literal, 3> literals;

  bool operator==(const Clause&) const = default;

  /// Mask of the three participating variables.
  std::uint64_t variable_mask() const;
  /// Values of the participating bits that falsify every literal.
  std::uint64_t violating_bits() const;
  bool violated_by(std::uint64_t bits) const {
    return (bits & variable_mask()) == violating_bits();
  }
};

struct Assignment {
  int num_vars = 0;
  std::uint64_t bits = 0;

  bool value(int variable) const { return (bits >> (variable - 1)) & 1U; }
  bool operator==(const Assignment&) const = default;

  /// Characters x_1 .. x_N, e.g. "101" means x1=1, x2=0, x3=1.
  std::string to_bitstring() const;
  static Assignment from_bitstring(std::string_view text);
};

/// An immutable 3SAT instance. Construction validates every invariant:
/// literal indices within [1, N], distinct variables per clause and, when a
/// planted assignment is attached, that it satisfies all clauses.
class SatInstance {
 public:
  SatInstance(int num_vars, std::vector<Clause> clauses,
              std::optional<Assignment> planted = std::nullopt);

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::optional<Assignment>& planted() const { return planted_; }

  bool operator==(const SatInstance&) const = default;

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
  std::optional<Assignment> planted_;
};

// DIMACS CNF.
SatInstance parse_dimacs(std::string_view text);
std::string serialize_dimacs(const SatInstance& inst);
SatInstance read_dimacs_file(const std::string& path);
void write_dimacs_file(const SatInstance& inst, const std::string& path);

struct PlantedParams {
  int n_vars = 10;
  double ratio = kSatThreshold;
  double p0 = kDefaultP0;
};

/// Samples M = round(ratio * n_vars) clauses consistent with a uniformly
/// drawn planted assignment. Each clause takes 3 distinct variables; its sign
/// pattern is chosen by the number k of literals satisfied by the plant:
/// every k=1 or k=2 pattern has probability p0, the single k=3 pattern has
/// 1 - 6 p0, and k=0 never occurs.
SatInstance generate_planted_instance(int n_vars, double ratio, double p0,
                                      std::uint64_t seed);
inline SatInstance generate_planted_instance(const PlantedParams& p, std::uint64_t seed) {
  return generate_planted_instance(p.n_vars, p.ratio, p.p0, seed);
}

/// Number of literals of `clause` made true by `a` (0..3).
int satisfied_literals(const Clause& clause, const Assignment& a);

/// Number of clauses violated by `a`; the diagonal of H_3SAT.
int violations(const Assignment& a, const SatInstance& inst);
int violations(std::uint64_t bits, const SatInstance& inst);

struct SolutionCount {
  std::uint64_t count = 0;
  std::vector<Assignment> solutions;  // ascending bitmask order
};

/// Exhaustive enumeration. Stops once `cap` solutions are found (cap == 0
/// means no cap). Throws TooLarge above kMaxEnumerationVars variables.
SolutionCount count_solutions(const SatInstance& inst, std::uint64_t cap = 0);

struct FilteredInstance {
  SatInstance instance;
  std::vector<Assignment> solutions;
  std::uint64_t seed = 0;      // seed that produced `instance`
  std::uint64_t attempts = 0;  // instances generated, including the accepted one
};

/// Draws planted instances with seeds first_seed, first_seed+1, ... until one
/// has exactly `target` satisfying assignments (target in {1, 2}).
FilteredInstance filter_by_solution_count(std::uint64_t first_seed, int target,
                                          const PlantedParams& params,
                                          std::uint64_t attempt_cap = 100000);

}  // namespace aess
