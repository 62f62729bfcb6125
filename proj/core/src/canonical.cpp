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

#include "procflow/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace procflow {

namespace {

// Abstract endpoint: boundary anchor or generator slot of a box.
// kind: 0 boundary-in, 1 boundary-out, 2 generator dom slot, 3 cod slot.
struct AEnd {
  int kind = 0;
  int box = -1;
  int slot = 0;
};

struct AWire {
  AEnd a, b;
};

AEnd abstract_end(const Diagram& d, const Port& p) {
  switch (p.kind) {
    case PortKind::BoundaryIn:
      return AEnd{0, -1, static_cast<int>(p.index)};
    case PortKind::BoundaryOut:
      return AEnd{1, -1, static_cast<int>(p.index)};
    default: {
      const BoxInstance& bi = d.boxes()[p.box];
      GenSlot s = generator_slot(d.theory()->generator(bi.gen), bi.variant,
                                 p.kind == PortKind::BoxOut, p.index);
      return AEnd{s.cod ? 3 : 2, static_cast<int>(p.box),
                  static_cast<int>(s.slot)};
    }
  }
}

struct AbstractGraph {
  std::vector<AWire> wires;
  // Per box, indexed by slot ordinal (dom slots, then cod slots): the other
  // end of the incident wire.
  std::vector<std::vector<AEnd>> adj;
  std::vector<std::uint64_t> label;  // rank of (generator, conj bit)
};

AbstractGraph build_graph(const Diagram& d) {
  AbstractGraph g;
  const std::size_t n = d.box_count();
  g.adj.resize(n);
  for (BoxId b = 0; b < n; ++b) {
    const GeneratorSig& sig = d.box_sig(b);
    g.adj[b].resize(sig.dom.size() + sig.cod.size());
  }

  auto ordinal = [&](const AEnd& e) {
    const GeneratorSig& sig = d.theory()->generator(d.boxes()[e.box].gen);
    return e.kind == 2 ? e.slot : static_cast<int>(sig.dom.size()) + e.slot;
  };

  for (const Wire& w : d.wires()) {
    AEnd ea = abstract_end(d, w.a);
    AEnd eb = abstract_end(d, w.b);
    if (ea.box >= 0) g.adj[ea.box][ordinal(ea)] = eb;
    if (eb.box >= 0) g.adj[eb.box][ordinal(eb)] = ea;
    g.wires.push_back(AWire{ea, eb});
  }

  std::map<std::pair<GenId, bool>, std::uint64_t> label_rank;
  for (const BoxInstance& b : d.boxes())
    label_rank.emplace(std::pair(b.gen, b.variant.conjugated_tensor()), 0);
  std::uint64_t next = 0;
  for (auto& [key, rank] : label_rank) {
    (void)key;
    rank = next++;
  }
  for (const BoxInstance& b : d.boxes())
    g.label.push_back(
        label_rank.at(std::pair(b.gen, b.variant.conjugated_tensor())));
  return g;
}

using Coloring = std::vector<std::uint64_t>;

bool same_partition(const Coloring& x, const Coloring& y) {
  std::map<std::uint64_t, std::uint64_t> fwd, bwd;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto f = fwd.emplace(x[i], y[i]);
    if (!f.second && f.first->second != y[i]) return false;
    auto b = bwd.emplace(y[i], x[i]);
    if (!b.second && b.first->second != x[i]) return false;
  }
  return true;
}

// One refinement pass: re-colors boxes by their label, current color, and the
// colors/anchors seen across each generator slot, in slot order. Signatures
// contain no raw box ids, so the result is independent of box numbering.
Coloring refine_once(const AbstractGraph& g, const Coloring& col) {
  const std::size_t n = col.size();
  std::vector<std::vector<std::uint64_t>> sig(n);
  for (std::size_t b = 0; b < n; ++b) {
    auto& s = sig[b];
    s.push_back(g.label[b]);
    s.push_back(col[b]);
    for (const AEnd& e : g.adj[b]) {
      if (e.box < 0) {
        s.push_back(1);
        s.push_back(static_cast<std::uint64_t>(e.kind));
        s.push_back(static_cast<std::uint64_t>(e.slot));
      } else {
        s.push_back(2);
        s.push_back(col[e.box]);
        s.push_back(static_cast<std::uint64_t>(e.kind));
        s.push_back(static_cast<std::uint64_t>(e.slot));
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> sorted = sig;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(n);
  for (std::size_t b = 0; b < n; ++b)
    out[b] = static_cast<std::uint64_t>(
        std::lower_bound(sorted.begin(), sorted.end(), sig[b]) -
        sorted.begin());
  return out;
}

Coloring refine(const AbstractGraph& g, Coloring col) {
  while (true) {
    Coloring next = refine_once(g, col);
    if (same_partition(col, next)) return next;
    col = std::move(next);
  }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t port_code(const AEnd& e, const std::vector<int>& canon_index) {
  std::uint32_t box = e.box < 0 ? 0u : static_cast<std::uint32_t>(
                                           canon_index[e.box]);
  if (box > 0xFFFF || e.slot > 0x3FFF)
    throw std::logic_error("canonical_form: diagram too large to encode");
  return (static_cast<std::uint32_t>(e.kind) << 30) | (box << 14) |
         static_cast<std::uint32_t>(e.slot);
}

std::vector<std::uint8_t> encode(const Diagram& d, const AbstractGraph& g,
                                 const std::vector<int>& canon_index) {
  std::vector<std::uint8_t> out{'P', 'F', 'C', '1'};
  put_u32(out, static_cast<std::uint32_t>(d.dom().size()));
  for (TypeId t : d.dom()) put_u32(out, t);
  put_u32(out, static_cast<std::uint32_t>(d.cod().size()));
  for (TypeId t : d.cod()) put_u32(out, t);
  put_u32(out, static_cast<std::uint32_t>(d.loops().size()));
  for (TypeId t : d.loops()) put_u32(out, t);

  const std::size_t n = d.box_count();
  std::vector<int> order(n);  // canonical position -> box id
  for (std::size_t b = 0; b < n; ++b) order[canon_index[b]] = static_cast<int>(b);

  put_u32(out, static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const BoxInstance& bi = d.boxes()[order[i]];
    put_u32(out, bi.gen);
    out.push_back(bi.variant.conjugated_tensor() ? 1 : 0);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> wires;
  for (const AWire& w : g.wires) {
    std::uint32_t pa = port_code(w.a, canon_index);
    std::uint32_t pb = port_code(w.b, canon_index);
    if (pb < pa) std::swap(pa, pb);
    wires.emplace_back(pa, pb);
  }
  std::sort(wires.begin(), wires.end());
  put_u32(out, static_cast<std::uint32_t>(wires.size()));
  for (auto& [pa, pb] : wires) {
    put_u32(out, pa);
    put_u32(out, pb);
  }
  return out;
}

// Individualization-refinement search for the lexicographically least
// encoding. Ties after refinement are broken by promoting each member of the
// first non-singleton color class in turn.
void search(const Diagram& d, const AbstractGraph& g, Coloring col,
            std::optional<std::vector<std::uint8_t>>& best) {
  col = refine(g, col);
  const std::size_t n = col.size();

  std::vector<std::vector<int>> classes;
  {
    std::map<std::uint64_t, std::vector<int>> by_color;
    for (std::size_t b = 0; b < n; ++b)
      by_color[col[b]].push_back(static_cast<int>(b));
    for (auto& [c, members] : by_color) {
      (void)c;
      classes.push_back(std::move(members));
    }
  }

  const std::vector<int>* tie = nullptr;
  for (const auto& cls : classes)
    if (cls.size() > 1) {
      tie = &cls;
      break;
    }

  if (!tie) {
    std::vector<int> canon_index(n);
    int pos = 0;
    for (const auto& cls : classes) canon_index[cls[0]] = pos++;
    std::vector<std::uint8_t> bytes = encode(d, g, canon_index);
    if (!best || bytes < *best) best = std::move(bytes);
    return;
  }

  for (int b : *tie) {
    Coloring next = col;
    for (auto& c : next) c = c * 2 + 1;
    next[b] -= 1;  // sorts first within its former class
    search(d, g, next, best);
  }
}

}  // namespace

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

CanonicalForm canonical_form(const Diagram& d) {
  AbstractGraph g = build_graph(d);
  Coloring col(d.box_count());
  for (std::size_t b = 0; b < col.size(); ++b) col[b] = g.label[b];
  std::optional<std::vector<std::uint8_t>> best;
  search(d, g, std::move(col), best);
  return CanonicalForm{std::move(*best)};
}

bool equal(const Diagram& a, const Diagram& b) {
  if (!same_theory(a.theory(), b.theory())) throw TheoryMismatchError();
  if (a.dom() != b.dom() || a.cod() != b.cod()) return false;
  if (a.loops() != b.loops()) return false;
  if (a.box_count() != b.box_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace procflow
