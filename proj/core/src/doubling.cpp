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

#include "procflow/doubling.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "procflow/canonical.hpp"
#include "procflow/errors.hpp"

namespace procflow {

Diagram double_diagram(const Diagram& d) {
  const TheoryPtr& th = d.theory();
  std::vector<BoxInstance> boxes;
  boxes.reserve(2 * d.box_count());
  for (const BoxInstance& b : d.boxes()) {
    BoxVariant conj = b.variant;
    conj.conjugate = !conj.conjugate;
    boxes.push_back(BoxInstance{b.gen, conj});
    boxes.push_back(b);
  }

  // Conjugate variants list their ports in reverse, so the mirrored index
  // keeps the copy attached to the same generator slot as the original.
  auto map_port = [&](const Port& p, bool conj_copy) -> Port {
    std::uint32_t layer = conj_copy ? 0 : 1;
    switch (p.kind) {
      case PortKind::BoundaryIn:
      case PortKind::BoundaryOut:
        return Port{p.kind, 0, 2 * p.index + layer};
      case PortKind::BoxIn:
      case PortKind::BoxOut: {
        std::uint32_t k = p.index;
        if (conj_copy) {
          const GeneratorSig& sig = d.box_sig(p.box);
          const BoxVariant& v = d.boxes()[p.box].variant;
          std::uint32_t n = p.kind == PortKind::BoxIn
                                ? static_cast<std::uint32_t>(
                                      effective_dom(sig, v).size())
                                : static_cast<std::uint32_t>(
                                      effective_cod(sig, v).size());
          k = n - 1 - k;
        }
        return Port{p.kind, 2 * p.box + layer, k};
      }
    }
    return p;
  };

  std::vector<Wire> wires;
  wires.reserve(2 * d.wires().size());
  for (const Wire& w : d.wires()) {
    wires.push_back(make_wire(map_port(w.a, true), map_port(w.b, true)));
    wires.push_back(make_wire(map_port(w.a, false), map_port(w.b, false)));
  }

  TypeList dom, cod, loops;
  for (TypeId t : d.dom()) {
    dom.push_back(t);
    dom.push_back(t);
  }
  for (TypeId t : d.cod()) {
    cod.push_back(t);
    cod.push_back(t);
  }
  for (TypeId t : d.loops()) {
    loops.push_back(t);
    loops.push_back(t);
  }
  return Diagram(th, std::move(boxes), std::move(wires), std::move(dom),
                 std::move(cod), std::move(loops));
}

QDiagram::QDiagram(Diagram pure, TypeList env, TypeList qcod)
    : pure_(std::move(pure)),
      env_(std::move(env)),
      qdom_(pure_.dom()),
      qcod_(std::move(qcod)) {}

QDiagram QDiagram::doubled(const Diagram& pure) {
  return QDiagram(pure, {}, pure.cod());
}

QDiagram QDiagram::purification(const Diagram& pure, std::size_t env_count) {
  if (env_count > pure.cod().size()) {
    throw ShapeError("purification: env_count exceeds the output arity");
  }
  TypeList env(pure.cod().begin(),
               pure.cod().begin() + static_cast<std::ptrdiff_t>(env_count));
  TypeList qcod(pure.cod().begin() + static_cast<std::ptrdiff_t>(env_count),
                pure.cod().end());
  return QDiagram(pure, std::move(env), std::move(qcod));
}

QDiagram QDiagram::q_identity(const TheoryPtr& th, const TypeList& types) {
  return doubled(identity(th, types));
}

QDiagram QDiagram::discard(const TheoryPtr& th, TypeId t) {
  return discard_all(th, TypeList{t});
}

QDiagram QDiagram::discard_all(const TheoryPtr& th, const TypeList& types) {
  return QDiagram(identity(th, types), types, {});
}

Diagram QDiagram::base() const {
  Diagram dd = double_diagram(pure_);
  Diagram caps = identity(theory(), {});
  for (TypeId t : env_) {
    caps = compose_par(caps, cap(theory(), t));
  }
  TypeList qcod_pairs;
  for (TypeId t : qcod_) {
    qcod_pairs.push_back(t);
    qcod_pairs.push_back(t);
  }
  Diagram close =
      compose_par(caps, identity(theory(), qcod_pairs));
  return compose_seq(close, dd);
}

QDiagram q_compose_seq(const QDiagram& g, const QDiagram& f) {
  if (!same_theory(f.theory(), g.theory())) {
    throw TheoryMismatchError("q_compose_seq: theories differ");
  }
  const TypeList& mid_out = f.qcod();
  const TypeList& mid_in = g.qdom();
  if (mid_out != mid_in) {
    std::uint32_t at = 0;
    while (at < mid_out.size() && at < mid_in.size() &&
           mid_out[at] == mid_in[at]) {
      ++at;
    }
    const TheoryPtr& th = f.theory();
    throw TypeMismatchError("q_compose_seq", at,
                            th->type_list_name(mid_out),
                            th->type_list_name(mid_in));
  }
  Diagram step = compose_par(identity(f.theory(), f.env()),
                             g.purify());
  Diagram pure = compose_seq(step, f.purify());
  TypeList env = f.env();
  env.insert(env.end(), g.env().begin(), g.env().end());
  return QDiagram::purification(pure, env.size());
}

QDiagram q_compose_par(const QDiagram& f, const QDiagram& g) {
  if (!same_theory(f.theory(), g.theory())) {
    throw TheoryMismatchError("q_compose_par: theories differ");
  }
  const TheoryPtr& th = f.theory();
  Diagram side = compose_par(f.purify(), g.purify());

  // side outputs [E1, Y1, E2, Y2]; standard form wants [E1, E2, Y1, Y2].
  const std::size_t e1 = f.env().size(), y1 = f.qcod().size();
  const std::size_t e2 = g.env().size(), y2 = g.qcod().size();
  std::vector<std::uint32_t> perm(e1 + y1 + e2 + y2);
  for (std::size_t p = 0; p < e1; ++p) {
    perm[p] = static_cast<std::uint32_t>(p);
  }
  for (std::size_t p = 0; p < y1; ++p) {
    perm[e1 + p] = static_cast<std::uint32_t>(e1 + e2 + p);
  }
  for (std::size_t p = 0; p < e2; ++p) {
    perm[e1 + y1 + p] = static_cast<std::uint32_t>(e1 + p);
  }
  for (std::size_t p = 0; p < y2; ++p) {
    perm[e1 + y1 + e2 + p] = static_cast<std::uint32_t>(e1 + e2 + y1 + p);
  }
  Diagram pure = compose_seq(
      permutation(th, side.cod(), perm), side);
  return QDiagram::purification(pure, e1 + e2);
}

QDiagram q_dagger(const QDiagram& f) {
  const TheoryPtr& th = f.theory();
  const TypeList& env = f.env();
  const std::size_t m = env.size();

  // Pair cups [e0,e0,e1,e1,...] then route them to [env, env].
  Diagram cups = identity(th, {});
  TypeList paired;
  for (TypeId t : env) {
    cups = compose_par(cups, cup(th, t));
    paired.push_back(t);
    paired.push_back(t);
  }
  std::vector<std::uint32_t> route(2 * m);
  for (std::size_t t = 0; t < m; ++t) {
    route[2 * t] = static_cast<std::uint32_t>(t);
    route[2 * t + 1] = static_cast<std::uint32_t>(m + t);
  }
  Diagram big_cup =
      compose_seq(permutation(th, paired, route), cups);

  Diagram pre =
      compose_par(big_cup, identity(th, f.qcod()));
  Diagram post = compose_par(identity(th, env),
                             dagger(f.purify()));
  Diagram pure = compose_seq(post, pre);
  return QDiagram::purification(pure, m);
}

bool q_equal(const QDiagram& a, const QDiagram& b) {
  return equal(a.base(), b.base());
}

}  // namespace procflow
