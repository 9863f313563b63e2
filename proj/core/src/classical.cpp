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

#include "aess/classical.hpp"

#include <vector>

#include "aess/errors.hpp"

namespace aess {

namespace {

void check_bits(int n, int max_bits) {
  if (n > max_bits) {
    throw DimensionOverflow(std::to_string(n) + " bits exceed the configured cap of " +
                            std::to_string(max_bits));
  }
}

RealSparse from_triplets(Index dim, const std::vector<RealTriplet>& t) {
  RealSparse m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  m.makeCompressed();
  return m;
}

}  // namespace

SparseGenerator build_classical_generator(const SatInstance& inst, double w, int max_bits) {
  const int n = inst.num_vars();
  check_bits(n, max_bits);
  const Index dim = Index{1} << n;

  struct Term {
    std::uint64_t mask, bad;
    std::array<std::uint64_t, 3> flips;
  };
  std::vector<Term> terms;
  for (const auto& c : inst.clauses()) {
    Term t{c.variable_mask(), c.violating_bits(), {}};
    for (std::size_t a = 0; a < 3; ++a) t.flips[a] = std::uint64_t{1} << (c.literals[a].variable - 1);
    terms.push_back(t);
  }

  std::vector<RealTriplet> trip;
  for (Index i = 0; i < dim; ++i) {
    const auto s = static_cast<std::uint64_t>(i);
    int violated = 0;
    for (const auto& t : terms) {
      if ((s & t.mask) != t.bad) continue;
      ++violated;
      if (w != 0.0) {
        for (auto f : t.flips) trip.emplace_back(static_cast<int>(s ^ f), static_cast<int>(i), w);
      }
    }
    if (violated) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), -3.0 * violated);
  }

  SparseGenerator g;
  g.matrix = from_triplets(dim, trip);
  g.info.model = "sat3-classical";
  g.info.w = w;
  g.info.basis = BasisKind::kClassical;
  g.info.hilbert_dim = dim;
  g.info.basis_doc = "populations of bit strings; bit n-1 = x_n";
  return g;
}

SparseGenerator build_ferro_chain_generator(int n_spins, double w, int max_bits) {
  if (n_spins < 3) throw InvalidParams("ferro chain needs at least 3 spins");
  check_bits(n_spins, max_bits);
  const Index dim = Index{1} << n_spins;

  std::vector<RealTriplet> trip;
  for (Index i = 0; i < dim; ++i) {
    const auto s = static_cast<std::uint64_t>(i);
    double diag = 0.0;
    for (int site = 0; site < n_spins; ++site) {
      const int next = (site + 1) % n_spins;
      const std::uint64_t a = std::uint64_t{1} << site, b = std::uint64_t{1} << next;
      if ((s & (a | b)) == 0) continue;  // down-down bond is dark
      diag -= 2.0;
      if (w != 0.0) {
        trip.emplace_back(static_cast<int>(s ^ a), static_cast<int>(i), w);
        trip.emplace_back(static_cast<int>(s ^ b), static_cast<int>(i), w);
      }
    }
    if (diag != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  }

  SparseGenerator g;
  g.matrix = from_triplets(dim, trip);
  g.info.model = "ferro-chain";
  g.info.w = w;
  g.info.basis = BasisKind::kClassical;
  g.info.hilbert_dim = dim;
  g.info.basis_doc = "populations of spin configurations; bit n-1 = spin n up";
  return g;
}

RealSparse classical_single_site_dissipator(int n_bits, bool lowering, double delta, double w) {
  check_bits(n_bits, kMaxClassicalBits);
  const Index dim = Index{1} << n_bits;
  std::vector<RealTriplet> trip;
  if (delta != 0.0) {
    for (Index i = 0; i < dim; ++i) {
      const auto s = static_cast<std::uint64_t>(i);
      double diag = 0.0;
      for (int site = 0; site < n_bits; ++site) {
        const std::uint64_t b = std::uint64_t{1} << site;
        if (lowering && !(s & b)) continue;  // sigma^- annihilates |0>
        diag -= delta;
        if (w != 0.0) trip.emplace_back(static_cast<int>(s ^ b), static_cast<int>(i), delta * w);
      }
      if (diag != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
    }
  }
  return from_triplets(dim, trip);
}

Vec apply_generator(const SparseGenerator& g, const Vec& v) {
  if (v.size() != g.dim()) throw ShapeMismatch("vector length differs from generator dimension");
  return g.matrix * v;
}

double stochasticity_check(const SparseGenerator& g) {
  double worst = 0.0;
  for (int c = 0; c < g.matrix.outerSize(); ++c) {
    double s = 0.0;
    for (RealSparse::InnerIterator it(g.matrix, c); it; ++it) s += it.value();
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace aess
