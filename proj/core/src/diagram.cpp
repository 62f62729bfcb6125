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

#include "procflow/diagram.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace procflow {

const char* variant_name(BoxVariant v) {
  if (!v.adjoint && !v.conjugate) return "original";
  if (v.adjoint && !v.conjugate) return "adjoint";
  if (!v.adjoint && v.conjugate) return "conjugate";
  return "transpose";
}

TypeList effective_dom(const GeneratorSig& sig, BoxVariant v) {
  TypeList out = v.adjoint ? sig.cod : sig.dom;
  if (v.conjugate) std::reverse(out.begin(), out.end());
  return out;
}

TypeList effective_cod(const GeneratorSig& sig, BoxVariant v) {
  TypeList out = v.adjoint ? sig.dom : sig.cod;
  if (v.conjugate) std::reverse(out.begin(), out.end());
  return out;
}

GenSlot generator_slot(const GeneratorSig& sig, BoxVariant v, bool out,
                       std::uint32_t index) {
  bool cod_role = (out != v.adjoint);
  std::size_t n = cod_role ? sig.cod.size() : sig.dom.size();
  if (index >= n) throw std::logic_error("generator_slot: index out of range");
  std::uint32_t slot =
      v.conjugate ? static_cast<std::uint32_t>(n - 1 - index) : index;
  return GenSlot{cod_role, slot};
}

// --- Diagram ----------------------------------------------------------------

Diagram::Diagram(TheoryPtr theory, std::vector<BoxInstance> boxes,
                 std::vector<Wire> wires, TypeList dom, TypeList cod,
                 std::vector<TypeId> loops)
    : theory_(std::move(theory)),
      boxes_(std::move(boxes)),
      wires_(std::move(wires)),
      dom_(std::move(dom)),
      cod_(std::move(cod)),
      loops_(std::move(loops)) {
  if (!theory_) throw std::logic_error("Diagram: null theory");
  for (Wire& w : wires_)
    if (w.b < w.a) std::swap(w.a, w.b);
  std::sort(wires_.begin(), wires_.end());
  std::sort(loops_.begin(), loops_.end());
  validate();
}

const GeneratorSig& Diagram::box_sig(BoxId b) const {
  return theory_->generator(boxes_.at(b).gen);
}

TypeList Diagram::box_dom(BoxId b) const {
  return effective_dom(box_sig(b), boxes_.at(b).variant);
}

TypeList Diagram::box_cod(BoxId b) const {
  return effective_cod(box_sig(b), boxes_.at(b).variant);
}

TypeId Diagram::port_type(const Port& p) const {
  switch (p.kind) {
    case PortKind::BoundaryIn:
      return dom_.at(p.index);
    case PortKind::BoundaryOut:
      return cod_.at(p.index);
    case PortKind::BoxIn: {
      const BoxInstance& bi = boxes_.at(p.box);
      GenSlot s = generator_slot(box_sig(p.box), bi.variant, false, p.index);
      return s.cod ? box_sig(p.box).cod.at(s.slot) : box_sig(p.box).dom.at(s.slot);
    }
    case PortKind::BoxOut: {
      const BoxInstance& bi = boxes_.at(p.box);
      GenSlot s = generator_slot(box_sig(p.box), bi.variant, true, p.index);
      return s.cod ? box_sig(p.box).cod.at(s.slot) : box_sig(p.box).dom.at(s.slot);
    }
  }
  throw std::logic_error("port_type: bad port kind");
}

int Diagram::wire_index(const Port& p) const {
  for (std::size_t i = 0; i < wires_.size(); ++i)
    if (wires_[i].a == p || wires_[i].b == p) return static_cast<int>(i);
  return -1;
}

void Diagram::validate() const {
  for (TypeId t : dom_)
    if (t >= theory_->type_count()) throw std::logic_error("bad dom type id");
  for (TypeId t : cod_)
    if (t >= theory_->type_count()) throw std::logic_error("bad cod type id");
  for (TypeId t : loops_)
    if (t >= theory_->type_count()) throw std::logic_error("bad loop type id");
  for (const BoxInstance& b : boxes_)
    if (b.gen >= theory_->generator_count())
      throw std::logic_error("bad generator id");

  // Expected port population: the full boundary plus every effective box port.
  std::map<std::uint64_t, int> seen;
  auto bump = [&](const Port& p) { seen[p.key()] += 1; };
  std::size_t expected = dom_.size() + cod_.size();
  for (BoxId b = 0; b < boxes_.size(); ++b)
    expected += box_dom(b).size() + box_cod(b).size();
  if (2 * wires_.size() != expected)
    throw std::logic_error("wire count does not cover all ports");

  for (const Wire& w : wires_) {
    if (w.b < w.a) throw std::logic_error("wire not normalized");
    bump(w.a);
    bump(w.b);
    if (port_type(w.a) != port_type(w.b))
      throw std::logic_error("wire joins ports of different types");
  }
  for (const auto& [key, count] : seen) {
    (void)key;
    if (count != 1) throw std::logic_error("port used by multiple wires");
  }
  // Every counted port must be a real port of this diagram; ranges are
  // enforced by port_type() above (it throws on out-of-range access).
  if (!std::is_sorted(wires_.begin(), wires_.end()))
    throw std::logic_error("wires not sorted");
  if (!std::is_sorted(loops_.begin(), loops_.end()))
    throw std::logic_error("loops not sorted");
}

// --- basic constructors -----------------------------------------------------

Diagram box(TheoryPtr th, GenId g, BoxVariant v) {
  if (!th) throw Error("box: null theory");
  if (g >= th->generator_count()) throw Error("box: bad generator id");
  const GeneratorSig& sig = th->generator(g);
  TypeList d = effective_dom(sig, v);
  TypeList c = effective_cod(sig, v);
  std::vector<Wire> wires;
  for (std::uint32_t i = 0; i < d.size(); ++i)
    wires.push_back(make_wire(Port{PortKind::BoundaryIn, 0, i},
                              Port{PortKind::BoxIn, 0, i}));
  for (std::uint32_t j = 0; j < c.size(); ++j)
    wires.push_back(make_wire(Port{PortKind::BoxOut, 0, j},
                              Port{PortKind::BoundaryOut, 0, j}));
  return Diagram(std::move(th), {BoxInstance{g, v}}, std::move(wires),
                 std::move(d), std::move(c), {});
}

Diagram box(TheoryPtr th, const std::string& name, BoxVariant v) {
  if (!th) throw Error("box: null theory");
  GenId g = th->gen(name);
  return box(std::move(th), g, v);
}

Diagram identity(TheoryPtr th, TypeList types) {
  std::vector<Wire> wires;
  for (std::uint32_t i = 0; i < types.size(); ++i)
    wires.push_back(make_wire(Port{PortKind::BoundaryIn, 0, i},
                              Port{PortKind::BoundaryOut, 0, i}));
  TypeList cod = types;
  return Diagram(std::move(th), {}, std::move(wires), std::move(types),
                 std::move(cod), {});
}

Diagram permutation(TheoryPtr th, const TypeList& types,
                    const std::vector<std::uint32_t>& perm) {
  if (perm.size() != types.size())
    throw Error("permutation: size mismatch");
  std::vector<bool> hit(perm.size(), false);
  TypeList cod(types.size());
  std::vector<Wire> wires;
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    std::uint32_t j = perm[i];
    if (j >= perm.size() || hit[j]) throw Error("permutation: not a bijection");
    hit[j] = true;
    cod[j] = types[i];
    wires.push_back(make_wire(Port{PortKind::BoundaryIn, 0, i},
                              Port{PortKind::BoundaryOut, 0, j}));
  }
  return Diagram(std::move(th), {}, std::move(wires), types, std::move(cod),
                 {});
}

Diagram swap_wires(TheoryPtr th, TypeId a, TypeId b) {
  return permutation(std::move(th), TypeList{a, b}, {1, 0});
}

Diagram cup(TheoryPtr th, TypeId t) {
  std::vector<Wire> wires{make_wire(Port{PortKind::BoundaryOut, 0, 0},
                                    Port{PortKind::BoundaryOut, 0, 1})};
  return Diagram(std::move(th), {}, std::move(wires), {}, TypeList{t, t}, {});
}

Diagram cap(TheoryPtr th, TypeId t) {
  std::vector<Wire> wires{make_wire(Port{PortKind::BoundaryIn, 0, 0},
                                    Port{PortKind::BoundaryIn, 0, 1})};
  return Diagram(std::move(th), {}, std::move(wires), TypeList{t, t}, {}, {});
}

// --- wire fusion ------------------------------------------------------------

namespace {

// Endpoint of a pre-fusion edge: a surviving port or a glue junction.
struct End {
  bool junction = false;
  Port port{};
  std::uint32_t j = 0;
};

struct FEdge {
  End e[2];
  TypeId type = 0;
};

struct FusionResult {
  std::vector<Wire> wires;
  std::vector<TypeId> new_loops;
};

// Every junction must be incident to exactly two edge ends. Chains between
// surviving ports become single wires; junction-only cycles become loops.
FusionResult fuse(const std::vector<FEdge>& edges, std::uint32_t n_junctions) {
  std::vector<std::array<int, 2>> inc(n_junctions, std::array<int, 2>{-1, -1});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      if (!edges[i].e[s].junction) continue;
      auto& slots = inc[edges[i].e[s].j];
      if (slots[0] < 0)
        slots[0] = static_cast<int>(i) * 2 + s;
      else if (slots[1] < 0)
        slots[1] = static_cast<int>(i) * 2 + s;
      else
        throw std::logic_error("fuse: junction with more than two ends");
    }
  }
  for (const auto& slots : inc)
    if (slots[0] < 0 || slots[1] < 0)
      throw std::logic_error("fuse: junction with fewer than two ends");

  std::vector<bool> visited(edges.size(), false);
  FusionResult out;

  auto other_incidence = [&](std::uint32_t j, int edge, int slot) {
    int code = edge * 2 + slot;
    int other = (inc[j][0] == code) ? inc[j][1] : inc[j][0];
    return std::pair<int, int>(other / 2, other % 2);
  };

  // Open chains, started from each surviving end.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      if (edges[i].e[s].junction || visited[i]) continue;
      Port start = edges[i].e[s].port;
      int cur = static_cast<int>(i);
      int entry = s;
      while (true) {
        visited[cur] = true;
        int exit_slot = 1 - entry;
        const End& nxt = edges[cur].e[exit_slot];
        if (!nxt.junction) {
          out.wires.push_back(make_wire(start, nxt.port));
          break;
        }
        std::tie(cur, entry) = other_incidence(nxt.j, cur, exit_slot);
      }
    }
  }

  // What remains are cycles through junctions only.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (visited[i]) continue;
    out.new_loops.push_back(edges[i].type);
    int cur = static_cast<int>(i);
    int entry = 0;
    while (true) {
      visited[cur] = true;
      int exit_slot = 1 - entry;
      const End& nxt = edges[cur].e[exit_slot];
      if (!nxt.junction)
        throw std::logic_error("fuse: open end in residual cycle");
      auto [ne, ns] = other_incidence(nxt.j, cur, exit_slot);
      if (ne == static_cast<int>(i) && ns == 0) break;
      cur = ne;
      entry = ns;
    }
  }
  return out;
}

End real_end(Port p) { return End{false, p, 0}; }
End junction_end(std::uint32_t j) { return End{true, Port{}, j}; }

}  // namespace

Diagram compose_seq(const Diagram& g, const Diagram& f) {
  if (!same_theory(f.theory(), g.theory())) throw TheoryMismatchError();
  const TypeList& mid = f.cod();
  if (mid.size() != g.dom().size())
    throw TypeMismatchError(
        "compose_seq", std::min(mid.size(), g.dom().size()),
        f.theory()->type_list_name(mid), f.theory()->type_list_name(g.dom()));
  for (std::size_t i = 0; i < mid.size(); ++i)
    if (mid[i] != g.dom()[i])
      throw TypeMismatchError("compose_seq", i,
                              f.theory()->type_name(mid[i]),
                              f.theory()->type_name(g.dom()[i]));

  const BoxId nf = static_cast<BoxId>(f.box_count());
  std::vector<BoxInstance> boxes = f.boxes();
  boxes.insert(boxes.end(), g.boxes().begin(), g.boxes().end());

  std::vector<FEdge> edges;
  auto f_end = [&](const Port& p) {
    if (p.kind == PortKind::BoundaryOut) return junction_end(p.index);
    return real_end(p);
  };
  auto g_end = [&](const Port& p) {
    if (p.kind == PortKind::BoundaryIn) return junction_end(p.index);
    Port q = p;
    if (q.kind == PortKind::BoxIn || q.kind == PortKind::BoxOut) q.box += nf;
    return real_end(q);
  };
  for (const Wire& w : f.wires())
    edges.push_back(FEdge{{f_end(w.a), f_end(w.b)}, f.port_type(w.a)});
  for (const Wire& w : g.wires())
    edges.push_back(FEdge{{g_end(w.a), g_end(w.b)}, g.port_type(w.a)});

  FusionResult r = fuse(edges, static_cast<std::uint32_t>(mid.size()));
  std::vector<TypeId> loops = f.loops();
  loops.insert(loops.end(), g.loops().begin(), g.loops().end());
  loops.insert(loops.end(), r.new_loops.begin(), r.new_loops.end());

  return Diagram(f.theory(), std::move(boxes), std::move(r.wires), f.dom(),
                 g.cod(), std::move(loops));
}

Diagram compose_par(const Diagram& f, const Diagram& g) {
  if (!same_theory(f.theory(), g.theory())) throw TheoryMismatchError();
  const BoxId nf = static_cast<BoxId>(f.box_count());
  const std::uint32_t din = static_cast<std::uint32_t>(f.dom().size());
  const std::uint32_t dout = static_cast<std::uint32_t>(f.cod().size());

  std::vector<BoxInstance> boxes = f.boxes();
  boxes.insert(boxes.end(), g.boxes().begin(), g.boxes().end());

  auto shift = [&](Port p) {
    switch (p.kind) {
      case PortKind::BoundaryIn:
        p.index += din;
        break;
      case PortKind::BoundaryOut:
        p.index += dout;
        break;
      default:
        p.box += nf;
        break;
    }
    return p;
  };

  std::vector<Wire> wires = f.wires();
  for (const Wire& w : g.wires())
    wires.push_back(make_wire(shift(w.a), shift(w.b)));

  TypeList dom = f.dom();
  dom.insert(dom.end(), g.dom().begin(), g.dom().end());
  TypeList cod = f.cod();
  cod.insert(cod.end(), g.cod().begin(), g.cod().end());
  std::vector<TypeId> loops = f.loops();
  loops.insert(loops.end(), g.loops().begin(), g.loops().end());

  return Diagram(f.theory(), std::move(boxes), std::move(wires),
                 std::move(dom), std::move(cod), std::move(loops));
}

Diagram dagger(const Diagram& d) {
  std::vector<BoxInstance> boxes = d.boxes();
  for (BoxInstance& b : boxes) b.variant.adjoint = !b.variant.adjoint;

  auto flip = [](Port p) {
    switch (p.kind) {
      case PortKind::BoundaryIn:
        p.kind = PortKind::BoundaryOut;
        break;
      case PortKind::BoundaryOut:
        p.kind = PortKind::BoundaryIn;
        break;
      case PortKind::BoxIn:
        p.kind = PortKind::BoxOut;
        break;
      case PortKind::BoxOut:
        p.kind = PortKind::BoxIn;
        break;
    }
    return p;
  };

  std::vector<Wire> wires;
  wires.reserve(d.wires().size());
  for (const Wire& w : d.wires())
    wires.push_back(make_wire(flip(w.a), flip(w.b)));

  return Diagram(d.theory(), std::move(boxes), std::move(wires), d.cod(),
                 d.dom(), d.loops());
}

Diagram transpose(const Diagram& d) {
  std::vector<BoxInstance> boxes = d.boxes();
  std::vector<std::uint32_t> in_size(boxes.size()), out_size(boxes.size());
  for (BoxId b = 0; b < boxes.size(); ++b) {
    in_size[b] = static_cast<std::uint32_t>(d.box_dom(b).size());
    out_size[b] = static_cast<std::uint32_t>(d.box_cod(b).size());
    boxes[b].variant.adjoint = !boxes[b].variant.adjoint;
    boxes[b].variant.conjugate = !boxes[b].variant.conjugate;
  }
  const std::uint32_t nin = static_cast<std::uint32_t>(d.dom().size());
  const std::uint32_t nout = static_cast<std::uint32_t>(d.cod().size());

  auto rot = [&](Port p) {
    switch (p.kind) {
      case PortKind::BoundaryIn:
        p.kind = PortKind::BoundaryOut;
        p.index = nin - 1 - p.index;
        break;
      case PortKind::BoundaryOut:
        p.kind = PortKind::BoundaryIn;
        p.index = nout - 1 - p.index;
        break;
      case PortKind::BoxIn:
        p.kind = PortKind::BoxOut;
        p.index = in_size[p.box] - 1 - p.index;
        break;
      case PortKind::BoxOut:
        p.kind = PortKind::BoxIn;
        p.index = out_size[p.box] - 1 - p.index;
        break;
    }
    return p;
  };

  std::vector<Wire> wires;
  wires.reserve(d.wires().size());
  for (const Wire& w : d.wires())
    wires.push_back(make_wire(rot(w.a), rot(w.b)));

  TypeList dom = d.cod();
  std::reverse(dom.begin(), dom.end());
  TypeList cod = d.dom();
  std::reverse(cod.begin(), cod.end());

  return Diagram(d.theory(), std::move(boxes), std::move(wires),
                 std::move(dom), std::move(cod), d.loops());
}

Diagram conjugate(const Diagram& d) { return transpose(dagger(d)); }

Diagram partial_trace(const Diagram& d, std::uint32_t out_index,
                      std::uint32_t in_index) {
  if (out_index >= d.cod().size() || in_index >= d.dom().size())
    throw Error("partial_trace: boundary index out of range");
  if (d.cod()[out_index] != d.dom()[in_index])
    throw TypeMismatchError("partial_trace", in_index,
                            d.theory()->type_name(d.cod()[out_index]),
                            d.theory()->type_name(d.dom()[in_index]));

  std::vector<FEdge> edges;
  auto end_of = [&](const Port& p) {
    if (p.kind == PortKind::BoundaryOut && p.index == out_index)
      return junction_end(0);
    if (p.kind == PortKind::BoundaryIn && p.index == in_index)
      return junction_end(0);
    return real_end(p);
  };
  for (const Wire& w : d.wires())
    edges.push_back(FEdge{{end_of(w.a), end_of(w.b)}, d.port_type(w.a)});

  FusionResult r = fuse(edges, 1);

  // Surviving boundary ports shift down past the removed index.
  auto remap = [&](Port p) {
    if (p.kind == PortKind::BoundaryIn && p.index > in_index) p.index -= 1;
    if (p.kind == PortKind::BoundaryOut && p.index > out_index) p.index -= 1;
    return p;
  };
  for (Wire& w : r.wires) w = make_wire(remap(w.a), remap(w.b));

  TypeList dom = d.dom();
  dom.erase(dom.begin() + in_index);
  TypeList cod = d.cod();
  cod.erase(cod.begin() + out_index);
  std::vector<TypeId> loops = d.loops();
  loops.insert(loops.end(), r.new_loops.begin(), r.new_loops.end());

  return Diagram(d.theory(), d.boxes(), std::move(r.wires), std::move(dom),
                 std::move(cod), std::move(loops));
}

// --- circuits ---------------------------------------------------------------

std::vector<std::vector<BoxId>> directed_cycles(const Diagram& d) {
  const std::size_t n = d.box_count();
  std::vector<std::vector<BoxId>> adj(n);
  for (const Wire& w : d.wires()) {
    const Port *from = nullptr, *to = nullptr;
    if (w.a.kind == PortKind::BoxOut && w.b.kind == PortKind::BoxIn) {
      from = &w.a;
      to = &w.b;
    } else if (w.b.kind == PortKind::BoxOut && w.a.kind == PortKind::BoxIn) {
      from = &w.b;
      to = &w.a;
    }
    if (from) adj[from->box].push_back(to->box);
  }

  std::vector<std::vector<BoxId>> cycles;
  std::vector<int> color(n, 0);  // 0 white, 1 on path, 2 done
  std::vector<BoxId> path;

  std::function<void(BoxId)> dfs = [&](BoxId u) {
    color[u] = 1;
    path.push_back(u);
    for (BoxId v : adj[u]) {
      if (color[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        cycles.emplace_back(it, path.end());
      } else if (color[v] == 0) {
        dfs(v);
      }
    }
    path.pop_back();
    color[u] = 2;
  };
  for (BoxId u = 0; u < n; ++u)
    if (color[u] == 0) dfs(u);
  return cycles;
}

bool is_circuit(const Diagram& d) {
  if (!d.loops().empty()) return false;
  for (const Wire& w : d.wires())
    if (wire_kind(w) != WireKind::Plain) return false;
  return directed_cycles(d).empty();
}

// --- layer decomposition ----------------------------------------------------

std::vector<Layer> layer_decompose(const Diagram& d) {
  if (!is_circuit(d))
    throw NotACircuitError(
        "layer_decompose: diagram has feedback, cups, caps, or loops");

  const std::size_t n = d.box_count();
  const std::size_t nw = d.wires().size();

  // Per wire: producing and consuming end.
  std::vector<Port> producer(nw), consumer(nw);
  for (std::size_t i = 0; i < nw; ++i) {
    const Wire& w = d.wires()[i];
    producer[i] = w.a.is_producer() ? w.a : w.b;
    consumer[i] = w.a.is_producer() ? w.b : w.a;
  }
  auto wire_type = [&](int w) { return d.port_type(producer[w]); };

  std::vector<std::vector<int>> in_wires(n), out_wires(n);
  for (BoxId b = 0; b < n; ++b) {
    in_wires[b].resize(d.box_dom(b).size());
    out_wires[b].resize(d.box_cod(b).size());
  }
  for (std::size_t i = 0; i < nw; ++i) {
    if (producer[i].kind == PortKind::BoxOut)
      out_wires[producer[i].box][producer[i].index] = static_cast<int>(i);
    if (consumer[i].kind == PortKind::BoxIn)
      in_wires[consumer[i].box][consumer[i].index] = static_cast<int>(i);
  }

  // Boxes become ready once every input wire's producer has been placed.
  std::vector<int> pending(n, 0);
  for (BoxId b = 0; b < n; ++b)
    for (int w : in_wires[b])
      if (producer[w].kind == PortKind::BoxOut) pending[b] += 1;

  std::priority_queue<BoxId, std::vector<BoxId>, std::greater<BoxId>> ready;
  for (BoxId b = 0; b < n; ++b)
    if (pending[b] == 0) ready.push(b);

  std::vector<int> frontier;
  for (std::uint32_t i = 0; i < d.dom().size(); ++i)
    frontier.push_back(d.wire_index(Port{PortKind::BoundaryIn, 0, i}));

  std::vector<Layer> layers;

  auto swap_step = [&](std::size_t pos) {
    // Exchanges frontier[pos] and frontier[pos + 1] with a dedicated layer.
    Layer layer;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (i == pos) {
        LayerCell c;
        c.kind = LayerCell::Kind::Swap;
        c.a = wire_type(frontier[pos]);
        c.b = wire_type(frontier[pos + 1]);
        layer.push_back(c);
      } else if (i != pos + 1) {
        LayerCell c;
        c.a = wire_type(frontier[i]);
        layer.push_back(c);
      }
    }
    layers.push_back(std::move(layer));
    std::swap(frontier[pos], frontier[pos + 1]);
  };

  auto position_of = [&](int w) {
    return static_cast<std::size_t>(
        std::find(frontier.begin(), frontier.end(), w) - frontier.begin());
  };

  std::size_t placed = 0;
  while (!ready.empty()) {
    BoxId b = ready.top();
    ready.pop();
    const auto& ins = in_wires[b];
    std::size_t target = frontier.size();
    if (!ins.empty()) {
      for (int w : ins) target = std::min(target, position_of(w));
      // Bubble each input leftwards into the slot it must occupy; inputs are
      // never left of their slot (see target choice), so only left moves.
      for (std::size_t k = 0; k < ins.size(); ++k) {
        std::size_t pos = position_of(ins[k]);
        std::size_t want = target + k;
        while (pos > want) {
          swap_step(pos - 1);
          --pos;
        }
      }
    }

    Layer layer;
    for (std::size_t i = 0; i < target; ++i) {
      LayerCell c;
      c.a = wire_type(frontier[i]);
      layer.push_back(c);
    }
    LayerCell bc;
    bc.kind = LayerCell::Kind::Box;
    bc.source_box = b;
    bc.gen = d.boxes()[b].gen;
    bc.variant = d.boxes()[b].variant;
    layer.push_back(bc);
    for (std::size_t i = target + ins.size(); i < frontier.size(); ++i) {
      LayerCell c;
      c.a = wire_type(frontier[i]);
      layer.push_back(c);
    }
    layers.push_back(std::move(layer));

    frontier.erase(frontier.begin() + target,
                   frontier.begin() + target + ins.size());
    frontier.insert(frontier.begin() + target, out_wires[b].begin(),
                    out_wires[b].end());
    placed += 1;

    for (int w : out_wires[b]) {
      if (consumer[w].kind == PortKind::BoxIn) {
        BoxId c = consumer[w].box;
        if (--pending[c] == 0) ready.push(c);
      }
    }
  }
  if (placed != n)
    throw std::logic_error("layer_decompose: scheduling failed on a circuit");

  // Route the frontier into boundary order.
  for (std::uint32_t j = 0; j < d.cod().size(); ++j) {
    int w = d.wire_index(Port{PortKind::BoundaryOut, 0, j});
    std::size_t pos = position_of(w);
    while (pos > j) {
      swap_step(pos - 1);
      --pos;
    }
  }
  return layers;
}

Diagram cell_diagram(const TheoryPtr& th, const LayerCell& cell) {
  switch (cell.kind) {
    case LayerCell::Kind::Identity:
      return identity(th, {cell.a});
    case LayerCell::Kind::Swap:
      return swap_wires(th, cell.a, cell.b);
    case LayerCell::Kind::Box:
      return box(th, cell.gen, cell.variant);
  }
  throw std::logic_error("cell_diagram: bad cell kind");
}

Diagram recompose(const TheoryPtr& th, const TypeList& dom,
                  const std::vector<Layer>& layers) {
  Diagram acc = identity(th, dom);
  for (const Layer& layer : layers) {
    Diagram row = identity(th, {});
    for (const LayerCell& cell : layer)
      row = compose_par(row, cell_diagram(th, cell));
    acc = compose_seq(row, acc);
  }
  return acc;
}

}  // namespace procflow
