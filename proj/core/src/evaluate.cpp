// Copyright 2026 The Procflow Authors
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

#include "procflow/evaluate.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "procflow/errors.hpp"

namespace procflow {
namespace {

// Advances a row-major multi-index; returns false after the last position.
bool advance(std::vector<std::int64_t>& idx,
             const std::vector<std::int64_t>& shape) {
  for (std::size_t k = shape.size(); k-- > 0;) {
    if (++idx[k] < shape[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// A tensor together with the wire index carried by each axis. After
// normalize(), the wire indices are pairwise distinct.
template <class Ops>
struct Factor {
  std::vector<int> idx;
  Tensor<Ops> t;
};

// Sums out any axis pair carrying the same wire (a wire from a box back to
// itself). Runs until all carried indices are distinct.
template <class Ops>
void normalize_factor(Factor<Ops>& f) {
  for (;;) {
    std::size_t i = 0, j = 0;
    bool found = false;
    for (std::size_t a = 0; a < f.idx.size() && !found; ++a) {
      for (std::size_t b = a + 1; b < f.idx.size() && !found; ++b) {
        if (f.idx[a] == f.idx[b]) {
          i = a;
          j = b;
          found = true;
        }
      }
    }
    if (!found) return;

    std::vector<int> new_idx;
    std::vector<std::int64_t> new_shape;
    for (std::size_t a = 0; a < f.idx.size(); ++a) {
      if (a == i || a == j) continue;
      new_idx.push_back(f.idx[a]);
      new_shape.push_back(f.t.shape[a]);
    }
    Tensor<Ops> out = Tensor<Ops>::zeros(new_shape, 0);
    const std::int64_t diag = f.t.shape[i];
    std::vector<std::int64_t> oc(new_shape.size(), 0);
    std::vector<std::int64_t> fc(f.idx.size(), 0);
    if (out.size() > 0) {
      do {
        typename Ops::Scalar acc = Ops::zero();
        for (std::int64_t v = 0; v < diag; ++v) {
          std::size_t p = 0;
          for (std::size_t a = 0; a < f.idx.size(); ++a) {
            fc[a] = (a == i || a == j) ? v : oc[p++];
          }
          acc = Ops::add(acc, f.t.at(fc));
        }
        out.at(oc) = acc;
      } while (advance(oc, new_shape));
    }
    f.idx = std::move(new_idx);
    f.t = std::move(out);
  }
}

// Contracts two factors over every wire they share.
template <class Ops>
Factor<Ops> contract(const Factor<Ops>& a, const Factor<Ops>& b) {
  std::vector<std::size_t> a_keep, b_keep, a_sum, b_sum;
  for (std::size_t k = 0; k < a.idx.size(); ++k) {
    auto it = std::find(b.idx.begin(), b.idx.end(), a.idx[k]);
    if (it == b.idx.end()) {
      a_keep.push_back(k);
    } else {
      a_sum.push_back(k);
      b_sum.push_back(static_cast<std::size_t>(it - b.idx.begin()));
    }
  }
  for (std::size_t k = 0; k < b.idx.size(); ++k) {
    if (std::find(a.idx.begin(), a.idx.end(), b.idx[k]) == a.idx.end()) {
      b_keep.push_back(k);
    }
  }

  Factor<Ops> out;
  std::vector<std::int64_t> out_shape;
  for (std::size_t k : a_keep) {
    out.idx.push_back(a.idx[k]);
    out_shape.push_back(a.t.shape[k]);
  }
  for (std::size_t k : b_keep) {
    out.idx.push_back(b.idx[k]);
    out_shape.push_back(b.t.shape[k]);
  }
  std::vector<std::int64_t> sum_shape;
  for (std::size_t k : a_sum) sum_shape.push_back(a.t.shape[k]);

  out.t = Tensor<Ops>::zeros(out_shape, 0);
  if (out.t.size() == 0) return out;

  std::vector<std::int64_t> oc(out_shape.size(), 0);
  std::vector<std::int64_t> sc(sum_shape.size(), 0);
  std::vector<std::int64_t> ac(a.idx.size(), 0);
  std::vector<std::int64_t> bc(b.idx.size(), 0);
  do {
    typename Ops::Scalar acc = Ops::zero();
    std::fill(sc.begin(), sc.end(), 0);
    do {
      for (std::size_t k = 0; k < a_keep.size(); ++k) ac[a_keep[k]] = oc[k];
      for (std::size_t k = 0; k < a_sum.size(); ++k) ac[a_sum[k]] = sc[k];
      for (std::size_t k = 0; k < b_keep.size(); ++k) {
        bc[b_keep[k]] = oc[a_keep.size() + k];
      }
      for (std::size_t k = 0; k < b_sum.size(); ++k) bc[b_sum[k]] = sc[k];
      acc = Ops::add(acc, Ops::mul(a.t.at(ac), b.t.at(bc)));
    } while (advance(sc, sum_shape));
    out.t.at(oc) = acc;
  } while (advance(oc, out_shape));
  return out;
}

// Result volume of contracting factors i and j: the greedy cost measure.
template <class Ops>
std::int64_t pair_volume(const Factor<Ops>& a, const Factor<Ops>& b) {
  std::int64_t v = 1;
  for (std::size_t k = 0; k < a.idx.size(); ++k) {
    if (std::find(b.idx.begin(), b.idx.end(), a.idx[k]) == b.idx.end()) {
      v *= a.t.shape[k];
    }
  }
  for (std::size_t k = 0; k < b.idx.size(); ++k) {
    if (std::find(a.idx.begin(), a.idx.end(), b.idx[k]) == a.idx.end()) {
      v *= b.t.shape[k];
    }
  }
  return v;
}

}  // namespace

template <class Ops>
Tensor<Ops> evaluate(const Diagram& d, const Model<Ops>& m,
                     ContractionOrder order) {
  if (!same_theory(d.theory(), m.theory)) {
    throw TheoryMismatchError("evaluate: diagram and model theories differ");
  }
  m.validate();

  const auto& wires = d.wires();
  const int n_wires = static_cast<int>(wires.size());
  std::vector<std::int64_t> wire_dim(n_wires);
  std::map<std::uint64_t, int> port_wire;
  for (int w = 0; w < n_wires; ++w) {
    wire_dim[w] = m.dim(d.port_type(wires[w].a));
    port_wire[wires[w].a.key()] = w;
    port_wire[wires[w].b.key()] = w;
  }

  // Output axes in boundary order: cod wires first, then dom wires. A wire
  // touching the boundary twice, or one boundary port and one box port,
  // repeats here and is emitted as a diagonal.
  std::vector<int> out_idx;
  for (std::uint32_t j = 0; j < d.cod().size(); ++j) {
    out_idx.push_back(port_wire.at(Port{PortKind::BoundaryOut, 0, j}.key()));
  }
  for (std::uint32_t i = 0; i < d.dom().size(); ++i) {
    out_idx.push_back(port_wire.at(Port{PortKind::BoundaryIn, 0, i}.key()));
  }

  std::vector<Factor<Ops>> factors;
  for (std::uint32_t b = 0; b < d.box_count(); ++b) {
    const BoxInstance& box = d.boxes()[b];
    const GeneratorSig& sig = d.theory()->generator(box.gen);
    Factor<Ops> f;
    f.t = m.gens[box.gen];
    if (box.variant.conjugated_tensor()) {
      for (auto& x : f.t.data) x = Ops::conj(x);
    }
    // Axis a is the generator's own slot a (cod slots first, dom after),
    // independent of the variant; the variant only decides which effective
    // port feeds that slot.
    const std::size_t n_cod = sig.cod.size();
    f.idx.assign(n_cod + sig.dom.size(), -1);
    const TypeList& eff_out = effective_cod(sig, box.variant);
    const TypeList& eff_in = effective_dom(sig, box.variant);
    for (std::uint32_t k = 0; k < eff_out.size(); ++k) {
      GenSlot s = generator_slot(sig, box.variant, true, k);
      std::size_t axis = s.cod ? s.slot : n_cod + s.slot;
      f.idx[axis] = port_wire.at(Port{PortKind::BoxOut, b, k}.key());
    }
    for (std::uint32_t k = 0; k < eff_in.size(); ++k) {
      GenSlot s = generator_slot(sig, box.variant, false, k);
      std::size_t axis = s.cod ? s.slot : n_cod + s.slot;
      f.idx[axis] = port_wire.at(Port{PortKind::BoxIn, b, k}.key());
    }
    normalize_factor(f);
    factors.push_back(std::move(f));
  }

  while (factors.size() > 1) {
    std::size_t pi = 0, pj = 1;
    if (order == ContractionOrder::Greedy) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
          std::int64_t v = pair_volume(factors[i], factors[j]);
          if (v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
    }
    Factor<Ops> merged = contract(factors[pi], factors[pj]);
    factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(pj));
    factors[pi] = std::move(merged);
  }

  Factor<Ops> net;
  if (!factors.empty()) net = std::move(factors[0]);

  // Every wire index left free must reach the boundary; anything else means
  // the wire bookkeeping above is broken.
  for (int w : net.idx) {
    if (std::find(out_idx.begin(), out_idx.end(), w) == out_idx.end()) {
      throw std::logic_error("evaluate: contraction left an internal index");
    }
  }

  typename Ops::Scalar loop_scalar = Ops::one();
  for (TypeId t : d.loops()) {
    typename Ops::Scalar s = Ops::zero();
    for (std::int64_t i = 0; i < m.dim(t); ++i) s = Ops::add(s, Ops::one());
    loop_scalar = Ops::mul(loop_scalar, s);
  }

  std::vector<std::int64_t> out_shape;
  for (int w : out_idx) out_shape.push_back(wire_dim[w]);
  Tensor<Ops> result =
      Tensor<Ops>::zeros(out_shape, static_cast<int>(d.cod().size()));
  if (result.size() == 0) return result;

  // Distinct free indices; the output embeds them diagonally wherever a wire
  // owns more than one boundary port.
  std::vector<int> free_idx;
  std::vector<std::int64_t> free_shape;
  for (int w : out_idx) {
    if (std::find(free_idx.begin(), free_idx.end(), w) == free_idx.end()) {
      free_idx.push_back(w);
      free_shape.push_back(wire_dim[w]);
    }
  }
  std::vector<std::size_t> net_pos(net.idx.size());
  for (std::size_t k = 0; k < net.idx.size(); ++k) {
    net_pos[k] = static_cast<std::size_t>(
        std::find(free_idx.begin(), free_idx.end(), net.idx[k]) -
        free_idx.begin());
  }
  std::vector<std::int64_t> fc(free_idx.size(), 0);
  std::vector<std::int64_t> nc(net.idx.size(), 0);
  std::vector<std::int64_t> oc(out_idx.size(), 0);
  do {
    for (std::size_t k = 0; k < net.idx.size(); ++k) nc[k] = fc[net_pos[k]];
    typename Ops::Scalar v =
        net.t.size() == 0 ? Ops::one() : net.t.at(nc);
    v = Ops::mul(v, loop_scalar);
    for (std::size_t k = 0; k < out_idx.size(); ++k) {
      std::size_t p = static_cast<std::size_t>(
          std::find(free_idx.begin(), free_idx.end(), out_idx[k]) -
          free_idx.begin());
      oc[k] = fc[p];
    }
    result.at(oc) = v;
  } while (advance(fc, free_shape));
  return result;
}

template Tensor<ComplexOps> evaluate<ComplexOps>(const Diagram&,
                                                 const Model<ComplexOps>&,
                                                 ContractionOrder);
template Tensor<BoolOps> evaluate<BoolOps>(const Diagram&,
                                           const Model<BoolOps>&,
                                           ContractionOrder);

EquivResult prob_equiv(const Diagram& a, const Diagram& b, int trials,
                       std::uint64_t seed, double tol, std::int64_t dim_lo,
                       std::int64_t dim_hi) {
  if (!same_theory(a.theory(), b.theory())) {
    throw TheoryMismatchError("prob_equiv: diagrams use different theories");
  }
  if (a.dom() != b.dom() || a.cod() != b.cod()) {
    throw TypeMismatchError("prob_equiv boundary", 0,
                            a.theory()->type_list_name(a.dom()) + " -> " +
                                a.theory()->type_list_name(a.cod()),
                            b.theory()->type_list_name(b.dom()) + " -> " +
                                b.theory()->type_list_name(b.cod()));
  }
  EquivResult r;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    CModel m = random_model(a.theory(), dim_lo, dim_hi, s);
    CTensor ta = evaluate(a, m);
    CTensor tb = evaluate(b, m);
    double dev = max_deviation(ta, tb);
    r.trials_run = t + 1;
    r.max_dev = std::max(r.max_dev, dev);
    if (dev > tol) {
      r.equivalent = false;
      r.witness_seed = s;
      return r;
    }
  }
  r.equivalent = true;
  return r;
}

}  // namespace procflow
