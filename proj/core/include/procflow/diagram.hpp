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

#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "procflow/theory.hpp"

namespace procflow {

// Which of the four variants of a generator a box instance carries.
// adjoint swaps dom and cod keeping port order; conjugate keeps dom and cod
// but reverses the order inside each; both together is the transpose.
struct BoxVariant {
  bool adjoint = false;
  bool conjugate = false;

  // True when the variant's tensor is the entrywise conjugate of the
  // generator's tensor. Transposes re-wire but do not conjugate.
  bool conjugated_tensor() const { return adjoint != conjugate; }

  friend bool operator==(BoxVariant a, BoxVariant b) {
    return a.adjoint == b.adjoint && a.conjugate == b.conjugate;
  }
  friend bool operator!=(BoxVariant a, BoxVariant b) { return !(a == b); }
};

inline constexpr BoxVariant kOriginal{false, false};
inline constexpr BoxVariant kAdjoint{true, false};
inline constexpr BoxVariant kConjugate{false, true};
inline constexpr BoxVariant kTranspose{true, true};

const char* variant_name(BoxVariant v);

// One occurrence of a generator inside a diagram. The box id is its index
// in Diagram::boxes(); ids are renumbered densely on every construction.
struct BoxInstance {
  GenId gen = 0;
  BoxVariant variant{};
};

// A wire endpoint. Boundary ports are indexed along dom (BoundaryIn) or cod
// (BoundaryOut); box ports are indexed along the box's *effective* dom/cod,
// i.e. after the variant's reordering.
enum class PortKind : std::uint8_t {
  BoundaryIn = 0,
  BoundaryOut = 1,
  BoxIn = 2,
  BoxOut = 3,
};

struct Port {
  PortKind kind = PortKind::BoundaryIn;
  BoxId box = 0;  // meaningful for BoxIn / BoxOut only
  std::uint32_t index = 0;

  // Producers are the ends a wire flows out of: diagram inputs and box
  // outputs. Consumers are diagram outputs and box inputs.
  bool is_producer() const {
    return kind == PortKind::BoundaryIn || kind == PortKind::BoxOut;
  }

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(kind) << 62) |
           (static_cast<std::uint64_t>(box) << 31) |
           static_cast<std::uint64_t>(index);
  }
  friend bool operator==(const Port& a, const Port& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const Port& a, const Port& b) {
    return a.key() < b.key();
  }
};

// Derived from endpoint polarity: a plain wire has one producer and one
// consumer, a cup joins two consumers (it is a state), a cap joins two
// producers (an effect).
enum class WireKind : std::uint8_t { Plain, Cup, Cap };

struct Wire {
  Port a, b;  // stored with a <= b

  friend bool operator==(const Wire& x, const Wire& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const Wire& x, const Wire& y) {
    return std::tuple(x.a.key(), x.b.key()) < std::tuple(y.a.key(), y.b.key());
  }
};

inline Wire make_wire(Port p, Port q) { return q < p ? Wire{q, p} : Wire{p, q}; }

inline WireKind wire_kind(const Wire& w) {
  int producers = (w.a.is_producer() ? 1 : 0) + (w.b.is_producer() ? 1 : 0);
  if (producers == 1) return WireKind::Plain;
  return producers == 2 ? WireKind::Cap : WireKind::Cup;
}

// Effective boundary of a generator under a variant.
TypeList effective_dom(const GeneratorSig& sig, BoxVariant v);
TypeList effective_cod(const GeneratorSig& sig, BoxVariant v);

// Identifies a slot of the underlying generator: its own dom or cod list,
// before any variant reordering. Connectivity between generator slots (plus
// boundary anchors) is the deformation-invariant content of a diagram;
// canonicalization and evaluation both work on it.
struct GenSlot {
  bool cod = false;
  std::uint32_t slot = 0;

  friend bool operator==(GenSlot a, GenSlot b) {
    return a.cod == b.cod && a.slot == b.slot;
  }
};

// Maps an effective box port (out?, index) to the generator slot it reads.
GenSlot generator_slot(const GeneratorSig& sig, BoxVariant v, bool out,
                       std::uint32_t index);

// A string diagram over a theory: boxes, a perfect pairing of all ports into
// wires, and a multiset of closed loops. Immutable; every operation returns
// a fresh diagram. Invariants (checked by validate() on construction):
//   - each boundary port and each effective box port lies on exactly one wire
//   - both endpoints of a wire carry the same atomic type
//   - wires are normalized (a <= b) and sorted; loops are sorted
class Diagram {
 public:
  Diagram(TheoryPtr theory, std::vector<BoxInstance> boxes,
          std::vector<Wire> wires, TypeList dom, TypeList cod,
          std::vector<TypeId> loops);

  const TheoryPtr& theory() const { return theory_; }
  const TypeList& dom() const { return dom_; }
  const TypeList& cod() const { return cod_; }
  const std::vector<BoxInstance>& boxes() const { return boxes_; }
  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<TypeId>& loops() const { return loops_; }
  std::size_t box_count() const { return boxes_.size(); }

  TypeList box_dom(BoxId b) const;  // effective
  TypeList box_cod(BoxId b) const;
  const GeneratorSig& box_sig(BoxId b) const;

  TypeId port_type(const Port& p) const;
  // Index into wires() of the wire holding p; -1 if absent (never happens on
  // a valid diagram).
  int wire_index(const Port& p) const;

  void validate() const;  // throws std::logic_error on broken invariants

 private:
  TheoryPtr theory_;
  std::vector<BoxInstance> boxes_;
  std::vector<Wire> wires_;
  TypeList dom_, cod_;
  std::vector<TypeId> loops_;
};

// --- constructors ---------------------------------------------------------

Diagram box(TheoryPtr th, GenId g, BoxVariant v = {});
Diagram box(TheoryPtr th, const std::string& name, BoxVariant v = {});
Diagram identity(TheoryPtr th, TypeList types);
Diagram swap_wires(TheoryPtr th, TypeId a, TypeId b);
// Wires input i to output perm[i]; perm must be a permutation.
Diagram permutation(TheoryPtr th, const TypeList& types,
                    const std::vector<std::uint32_t>& perm);
Diagram cup(TheoryPtr th, TypeId t);  // state on t*t
Diagram cap(TheoryPtr th, TypeId t);  // effect on t*t

// --- combinators ----------------------------------------------------------

// g after f; f.cod must equal g.dom. Wires are fused through the glued
// boundary, so composing with identities or snakes changes nothing.
Diagram compose_seq(const Diagram& g, const Diagram& f);
Diagram compose_par(const Diagram& f, const Diagram& g);
Diagram dagger(const Diagram& d);
Diagram transpose(const Diagram& d);
Diagram conjugate(const Diagram& d);
// Feedback: connects cod[out_index] back to dom[in_index].
Diagram partial_trace(const Diagram& d, std::uint32_t out_index,
                      std::uint32_t in_index);

// --- circuits -------------------------------------------------------------

// A circuit has no cups, caps, or loops, and its box dependency graph is
// acyclic.
bool is_circuit(const Diagram& d);
// Witness cycles in the box dependency graph (one per back edge found).
std::vector<std::vector<BoxId>> directed_cycles(const Diagram& d);

struct LayerCell {
  enum class Kind : std::uint8_t { Identity, Swap, Box } kind = Kind::Identity;
  TypeId a = 0, b = 0;      // Identity uses a; Swap uses a, b
  BoxId source_box = 0;     // Box: id in the decomposed diagram
  GenId gen = 0;
  BoxVariant variant{};
};
using Layer = std::vector<LayerCell>;

// Splits a circuit into layers of (identity | swap | box) cells, one box per
// box layer, scheduling boxes in topological order with smallest-id
// tie-break. Recomposing the layers yields a diagram equal to the input.
std::vector<Layer> layer_decompose(const Diagram& d);

Diagram cell_diagram(const TheoryPtr& th, const LayerCell& cell);
Diagram recompose(const TheoryPtr& th, const TypeList& dom,
                  const std::vector<Layer>& layers);

}  // namespace procflow
