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

#include "aess/models.hpp"

#include "aess/classical.hpp"
#include "aess/errors.hpp"
#include "aess/quantum.hpp"

namespace aess {

namespace {

struct TagEntry {
  ModelKind kind;
  const char* tag;
};
constexpr TagEntry kTags[] = {
    {ModelKind::kSat3Classical, "sat3-classical"}, {ModelKind::kSat3Quantum, "sat3-quantum"},
    {ModelKind::kSat3Hx, "sat3-hx"},               {ModelKind::kAklt, "aklt"},
    {ModelKind::kXxDephasing, "xx-dephasing"},     {ModelKind::kFerroChain, "ferro-chain"},
};

AnyGenerator quantum_generator(const OperatorMatrix& h, const JumpSet& jumps, double w,
                               Index assemble_max, const std::string& tag) {
  const Index d = h.rows();
  if (d * d <= assemble_max) {
    LiouvillianMatrix l = build_liouvillian(h, jumps, w);
    l.info.model = tag;
    return l;
  }
  MatrixFreeGenerator g = make_matrix_free(LindbladForm(h, jumps, w));
  g.info.model = tag;
  return g;
}

}  // namespace

ModelKind parse_model(std::string_view tag) {
  for (const auto& e : kTags) {
    if (tag == e.tag) return e.kind;
  }
  throw InvalidParams("unknown model '" + std::string(tag) +
                      "' (expected sat3-classical, sat3-quantum, sat3-hx, aklt, xx-dephasing, "
                      "ferro-chain)");
}

std::string model_tag(ModelKind kind) {
  for (const auto& e : kTags) {
    if (e.kind == kind) return e.tag;
  }
  return "unknown";
}

bool is_sat_model(ModelKind kind) {
  return kind == ModelKind::kSat3Classical || kind == ModelKind::kSat3Quantum ||
         kind == ModelKind::kSat3Hx;
}

ModelSpec make_sat_model(ModelKind kind, SatInstance inst, double h) {
  if (!is_sat_model(kind)) throw InvalidParams(model_tag(kind) + " is not a 3SAT model");
  const int n = inst.num_vars();
  if (kind == ModelKind::kSat3Classical && n > kMaxClassicalBits) {
    throw DimensionOverflow("classical model limited to " + std::to_string(kMaxClassicalBits) +
                            " variables");
  }
  if (kind != ModelKind::kSat3Classical && n > kMaxQuantumQubits) {
    throw DimensionOverflow("quantum model limited to " + std::to_string(kMaxQuantumQubits) +
                            " qubits");
  }
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.h = h;
  spec.solutions = count_solutions(inst).solutions;
  spec.instance = std::move(inst);
  return spec;
}

ModelSpec make_chain_model(ModelKind kind, int n) {
  if (is_sat_model(kind)) throw InvalidParams("3SAT models need an instance");
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  return spec;
}

ModelPoint build_model(const ModelSpec& spec, double w) {
  ModelPoint p;
  const std::string tag = model_tag(spec.kind);
  switch (spec.kind) {
    case ModelKind::kSat3Classical: {
      SparseGenerator g = build_classical_generator(*spec.instance, w);
      const Index dim = g.dim();
      p.targets = CMat::Zero(dim, static_cast<Index>(spec.solutions.size()));
      for (std::size_t k = 0; k < spec.solutions.size(); ++k) {
        p.targets(static_cast<Index>(spec.solutions[k].bits), static_cast<Index>(k)) = 1.0;
      }
      p.generator = std::move(g);
      break;
    }
    case ModelKind::kSat3Quantum:
    case ModelKind::kSat3Hx: {
      const SatInstance& inst = *spec.instance;
      OperatorMatrix h = build_h3sat(inst);
      if (spec.kind == ModelKind::kSat3Hx) h += build_hx(inst, spec.h);
      const JumpSet jumps = build_3sat_jumps(inst);
      const Index d = h.rows();
      p.generator = quantum_generator(h, jumps, w, spec.assemble_max, tag);
      // Every |a><b| over solutions a, b is dark.
      const auto k = static_cast<Index>(spec.solutions.size());
      p.targets = CMat::Zero(d * d, k * k);
      for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) {
          const auto ia = static_cast<Index>(spec.solutions[a].bits);
          const auto ib = static_cast<Index>(spec.solutions[b].bits);
          p.targets(ib * d + ia, a * k + b) = 1.0;
        }
      }
      break;
    }
    case ModelKind::kAklt: {
      if (spec.n > kMaxAkltSpins) {
        throw DimensionOverflow("AKLT chain limited to " + std::to_string(kMaxAkltSpins) + " spins");
      }
      const JumpSet jumps = build_aklt_model(spec.n);
      const Index d = jumps.front().rows();
      const OperatorMatrix h(d, d);
      p.generator = quantum_generator(h, jumps, w, spec.assemble_max, tag);
      p.targets = pure_state_operator(aklt_state(spec.n));
      break;
    }
    case ModelKind::kXxDephasing: {
      const XxModel m = build_xx_dephasing(spec.n);
      const OperatorMatrix h = sector_restrict(m.h, m.sector);
      JumpSet jumps;
      for (const auto& l : m.jumps) jumps.push_back(sector_restrict(l, m.sector));
      const Index d = h.rows();
      p.generator = quantum_generator(h, jumps, w, spec.assemble_max, tag);
      p.targets = vectorize(CMat::Identity(d, d)) / std::sqrt(static_cast<double>(d));
      break;
    }
    case ModelKind::kFerroChain: {
      SparseGenerator g = build_ferro_chain_generator(spec.n, w);
      p.targets = CMat::Zero(g.dim(), 1);
      p.targets(0, 0) = 1.0;
      p.generator = std::move(g);
      break;
    }
  }
  return p;
}

PerturbationKind parse_perturbation(std::string_view tag) {
  if (tag == "lowering") return PerturbationKind::kLowering;
  if (tag == "flip") return PerturbationKind::kFlip;
  if (tag == "sz") return PerturbationKind::kSz;
  throw InvalidParams("unknown perturbation '" + std::string(tag) +
                      "' (expected lowering, flip, sz)");
}

std::string perturbation_tag(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kLowering:
      return "lowering";
    case PerturbationKind::kFlip:
      return "flip";
    case PerturbationKind::kSz:
      return "sz";
  }
  return "unknown";
}

AnyGenerator build_perturbation(PerturbationKind kind, double delta, double w, int n_sites,
                                LocalSpace space) {
  switch (space) {
    case LocalSpace::kClassicalBits: {
      if (kind == PerturbationKind::kSz) {
        throw KindMismatch("sz perturbation has no classical counterpart");
      }
      SparseGenerator g;
      g.matrix = classical_single_site_dissipator(n_sites, kind == PerturbationKind::kLowering,
                                                  delta, w);
      g.info.model = "perturbation-" + perturbation_tag(kind);
      g.info.w = w;
      g.info.basis = BasisKind::kClassical;
      g.info.hilbert_dim = g.matrix.rows();
      return g;
    }
    case LocalSpace::kQubits: {
      if (n_sites > kMaxQuantumQubits) throw DimensionOverflow("too many qubits for a superoperator");
      const Pauli p = kind == PerturbationKind::kLowering ? Pauli::kMinus
                      : kind == PerturbationKind::kFlip   ? Pauli::kX
                                                          : Pauli::kZ;
      JumpSet jumps;
      for (int s = 0; s < n_sites; ++s) jumps.push_back(qubit_operator(n_sites, s, p));
      LiouvillianMatrix l;
      l.matrix = dissipator_superoperator(jumps, w, delta);
      l.info.model = "perturbation-" + perturbation_tag(kind);
      l.info.w = w;
      l.info.basis = BasisKind::kVectorized;
      l.info.hilbert_dim = jumps.front().rows();
      return l;
    }
    case LocalSpace::kSpinOne: {
      if (kind != PerturbationKind::kSz) {
        throw KindMismatch("spin-1 chains only take the sz perturbation");
      }
      if (n_sites > kMaxAkltSpins) throw DimensionOverflow("too many spins for a superoperator");
      const CMat sz = spin_one_operators().sz;
      JumpSet jumps;
      for (int s = 0; s < n_sites; ++s) jumps.push_back(embed_local(sz, n_sites, s));
      LiouvillianMatrix l;
      l.matrix = dissipator_superoperator(jumps, w, delta);
      l.info.model = "perturbation-sz";
      l.info.w = w;
      l.info.basis = BasisKind::kVectorized;
      l.info.hilbert_dim = jumps.front().rows();
      return l;
    }
  }
  throw KindMismatch("unsupported local space");
}

AnyGenerator build_perturbation(PerturbationKind kind, double delta, double w,
                                const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::kSat3Classical:
    case ModelKind::kFerroChain:
      return build_perturbation(kind, delta, w, spec.n, LocalSpace::kClassicalBits);
    case ModelKind::kSat3Quantum:
    case ModelKind::kSat3Hx:
      return build_perturbation(kind, delta, w, spec.n, LocalSpace::kQubits);
    case ModelKind::kAklt:
      return build_perturbation(kind, delta, w, spec.n, LocalSpace::kSpinOne);
    case ModelKind::kXxDephasing:
      break;
  }
  throw KindMismatch("the sector-restricted XX chain takes no site perturbation");
}

}  // namespace aess
