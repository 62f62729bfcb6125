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

#include "procflow/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>

#include "procflow/errors.hpp"

namespace procflow {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& origin,
                               const std::string& msg) {
  throw ParseError(origin, 0, 0, msg);
}

const json& require(const json& obj, const char* field,
                    const std::string& origin, const std::string& ctx) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    schema_error(origin, ctx + ": missing field '" + field + "'");
  }
  return *it;
}

const json& require_array(const json& obj, const char* field,
                          const std::string& origin, const std::string& ctx) {
  const json& v = require(obj, field, origin, ctx);
  if (!v.is_array()) {
    schema_error(origin, ctx + ": field '" + field + "' must be a list");
  }
  return v;
}

std::string want_string(const json& v, const std::string& origin,
                        const std::string& ctx) {
  if (!v.is_string()) schema_error(origin, ctx + ": expected a string");
  return v.get<std::string>();
}

std::int64_t want_int(const json& v, const std::string& origin,
                      const std::string& ctx) {
  if (!v.is_number_integer()) schema_error(origin, ctx + ": expected an integer");
  return v.get<std::int64_t>();
}

TypeList want_type_list(const json& v, const TheoryPtr& th,
                        const std::string& origin, const std::string& ctx) {
  if (!v.is_array()) schema_error(origin, ctx + ": expected a list of types");
  TypeList out;
  for (const json& e : v) out.push_back(th->type(want_string(e, origin, ctx)));
  return out;
}

BoxVariant want_variant(const json& v, const std::string& origin) {
  std::string s = want_string(v, origin, "variant");
  if (s == "original") return kOriginal;
  if (s == "adjoint") return kAdjoint;
  if (s == "conjugate") return kConjugate;
  if (s == "transpose") return kTranspose;
  schema_error(origin, "unknown variant '" + s +
                           "' (want original, adjoint, conjugate, transpose)");
}

TheoryPtr parse_theory(const json& node, const std::string& origin) {
  if (!node.is_object()) schema_error(origin, "theory: expected an object");
  Theory t;
  try {
    const json& types = require(node, "types", origin, "theory");
    if (!types.is_array()) schema_error(origin, "theory.types: expected a list");
    for (const json& e : types) {
      t.add_type(want_string(e, origin, "theory.types"));
    }
    const json& gens = require(node, "generators", origin, "theory");
    if (!gens.is_array()) {
      schema_error(origin, "theory.generators: expected a list");
    }
    for (const json& g : gens) {
      if (!g.is_object()) {
        schema_error(origin, "theory.generators: expected objects");
      }
      std::string name =
          want_string(require(g, "name", origin, "generator"), origin,
                      "generator.name");
      TypeList dom, cod;
      for (const json& e : require_array(g, "dom", origin,
                                         "generator '" + name + "'")) {
        dom.push_back(t.type(want_string(e, origin, "generator dom")));
      }
      for (const json& e : require_array(g, "cod", origin,
                                         "generator '" + name + "'")) {
        cod.push_back(t.type(want_string(e, origin, "generator cod")));
      }
      t.add_generator(std::move(name), std::move(dom), std::move(cod));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // Duplicate or unknown names while the theory is being declared are
    // file problems, not library misuse.
    schema_error(origin, std::string("theory: ") + e.what());
  }
  return freeze(std::move(t));
}

Diagram want_plain(AnyDiagram v, const std::string& origin,
                   const std::string& ctx) {
  if (std::holds_alternative<QDiagram>(v)) {
    schema_error(origin, ctx + " is not defined for doubled diagrams");
  }
  return std::get<Diagram>(std::move(v));
}

Port parse_port(const json& node, const std::string& origin) {
  if (!node.is_object()) schema_error(origin, "raw wire port: expected object");
  std::string kind =
      want_string(require(node, "kind", origin, "port"), origin, "port.kind");
  Port p;
  if (kind == "boundary_in") {
    p.kind = PortKind::BoundaryIn;
  } else if (kind == "boundary_out") {
    p.kind = PortKind::BoundaryOut;
  } else if (kind == "box_in") {
    p.kind = PortKind::BoxIn;
  } else if (kind == "box_out") {
    p.kind = PortKind::BoxOut;
  } else {
    schema_error(origin, "port.kind: unknown kind '" + kind + "'");
  }
  p.index = static_cast<std::uint32_t>(
      want_int(require(node, "index", origin, "port"), origin, "port.index"));
  if (p.kind == PortKind::BoxIn || p.kind == PortKind::BoxOut) {
    p.box = static_cast<std::uint32_t>(
        want_int(require(node, "box", origin, "port"), origin, "port.box"));
  }
  return p;
}

Diagram parse_raw(const json& e, const TheoryPtr& th,
                  const std::string& origin) {
  std::vector<BoxInstance> boxes;
  for (const json& b : require_array(e, "boxes", origin, "raw")) {
    if (!b.is_object()) schema_error(origin, "raw.boxes: expected objects");
    BoxInstance inst;
    inst.gen = th->gen(
        want_string(require(b, "gen", origin, "raw box"), origin, "box.gen"));
    if (b.contains("variant")) inst.variant = want_variant(b["variant"], origin);
    boxes.push_back(inst);
  }
  std::vector<Wire> wires;
  for (const json& w : require_array(e, "wires", origin, "raw")) {
    if (!w.is_array() || w.size() != 2) {
      schema_error(origin, "raw.wires: expected [port, port] pairs");
    }
    wires.push_back(make_wire(parse_port(w[0], origin), parse_port(w[1], origin)));
  }
  TypeList dom = want_type_list(require(e, "dom", origin, "raw"), th, origin,
                                "raw.dom");
  TypeList cod = want_type_list(require(e, "cod", origin, "raw"), th, origin,
                                "raw.cod");
  TypeList loops;
  if (e.contains("loops")) {
    loops = want_type_list(e["loops"], th, origin, "raw.loops");
  }
  try {
    return Diagram(th, std::move(boxes), std::move(wires), std::move(dom),
                   std::move(cod), std::move(loops));
  } catch (const std::logic_error& err) {
    schema_error(origin, std::string("raw diagram is malformed: ") +
                             err.what());
  }
}

AnyDiagram eval_expr(const json& e, const TheoryPtr& th,
                     const std::string& origin) {
  if (!e.is_object()) {
    schema_error(origin, "diagram expression: expected an object");
  }
  std::string op =
      want_string(require(e, "op", origin, "expression"), origin, "op");

  if (op == "box") {
    BoxVariant v = e.contains("variant") ? want_variant(e["variant"], origin)
                                         : kOriginal;
    return box(th,
               want_string(require(e, "gen", origin, "box"), origin,
                           "box.gen"),
               v);
  }
  if (op == "id") {
    TypeList ts;
    if (e.contains("types")) {
      ts = want_type_list(e["types"], th, origin, "id.types");
    }
    return identity(th, std::move(ts));
  }
  if (op == "swap") {
    return swap_wires(
        th,
        th->type(want_string(require(e, "a", origin, "swap"), origin, "swap.a")),
        th->type(
            want_string(require(e, "b", origin, "swap"), origin, "swap.b")));
  }
  if (op == "cup" || op == "cap") {
    TypeId t = th->type(want_string(require(e, "type", origin, op), origin,
                                    op + ".type"));
    return op == "cup" ? cup(th, t) : cap(th, t);
  }
  if (op == "permutation") {
    TypeList ts = want_type_list(require(e, "types", origin, "permutation"),
                                 th, origin, "permutation.types");
    std::vector<std::uint32_t> perm;
    for (const json& p : require_array(e, "perm", origin, "permutation")) {
      perm.push_back(static_cast<std::uint32_t>(
          want_int(p, origin, "permutation.perm")));
    }
    return permutation(th, ts, perm);
  }
  if (op == "compose" || op == "tensor") {
    const json& args = require(e, "args", origin, op);
    if (!args.is_array() || args.empty()) {
      schema_error(origin, op + ".args: expected a non-empty list");
    }
    AnyDiagram acc = eval_expr(args[0], th, origin);
    for (std::size_t i = 1; i < args.size(); ++i) {
      AnyDiagram next = eval_expr(args[i], th, origin);
      if (acc.index() != next.index()) {
        schema_error(origin, op + ": cannot mix plain and doubled diagrams; "
                             "wrap the plain parts in double(...)");
      }
      if (std::holds_alternative<Diagram>(acc)) {
        Diagram& a = std::get<Diagram>(acc);
        Diagram& n = std::get<Diagram>(next);
        acc = op == "compose" ? compose_seq(n, a) : compose_par(a, n);
      } else {
        QDiagram& a = std::get<QDiagram>(acc);
        QDiagram& n = std::get<QDiagram>(next);
        acc = op == "compose" ? q_compose_seq(n, a) : q_compose_par(a, n);
      }
    }
    return acc;
  }
  if (op == "dagger") {
    AnyDiagram a = eval_expr(require(e, "arg", origin, op), th, origin);
    if (std::holds_alternative<QDiagram>(a)) {
      return q_dagger(std::get<QDiagram>(a));
    }
    return dagger(std::get<Diagram>(a));
  }
  if (op == "transpose" || op == "conjugate") {
    Diagram a = want_plain(
        eval_expr(require(e, "arg", origin, op), th, origin), origin, op);
    return op == "transpose" ? transpose(a) : conjugate(a);
  }
  if (op == "trace") {
    Diagram a = want_plain(
        eval_expr(require(e, "arg", origin, op), th, origin), origin, op);
    return partial_trace(
        a,
        static_cast<std::uint32_t>(
            want_int(require(e, "out", origin, "trace"), origin, "trace.out")),
        static_cast<std::uint32_t>(
            want_int(require(e, "in", origin, "trace"), origin, "trace.in")));
  }
  if (op == "double") {
    return QDiagram::doubled(want_plain(
        eval_expr(require(e, "arg", origin, op), th, origin), origin, op));
  }
  if (op == "discard") {
    return QDiagram::discard_all(
        th, want_type_list(require(e, "types", origin, "discard"), th, origin,
                           "discard.types"));
  }
  if (op == "purification") {
    Diagram a = want_plain(
        eval_expr(require(e, "arg", origin, op), th, origin), origin, op);
    std::int64_t env =
        want_int(require(e, "env", origin, op), origin, "purification.env");
    if (env < 0 || static_cast<std::size_t>(env) > a.cod().size()) {
      schema_error(origin, "purification.env out of range");
    }
    return QDiagram::purification(a, static_cast<std::size_t>(env));
  }
  if (op == "raw") {
    return parse_raw(e, th, origin);
  }
  schema_error(origin, "unknown op '" + op + "'");
}

template <class Ops>
typename Ops::Scalar parse_leaf(const json& v, const std::string& origin);

template <>
ComplexOps::Scalar parse_leaf<ComplexOps>(const json& v,
                                          const std::string& origin) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    schema_error(origin, "model entry: expected [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <>
BoolOps::Scalar parse_leaf<BoolOps>(const json& v, const std::string& origin) {
  if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
  if (v.is_number_integer()) {
    std::int64_t n = v.get<std::int64_t>();
    if (n == 0 || n == 1) return static_cast<BoolOps::Scalar>(n);
  }
  schema_error(origin, "model entry: expected 0, 1, or a boolean");
}

template <class Ops>
void fill_axis(const json& node, Tensor<Ops>& t,
               std::vector<std::int64_t>& coord, std::size_t axis,
               const std::string& origin, const std::string& name) {
  if (axis == t.rank()) {
    t.at(coord) = parse_leaf<Ops>(node, origin);
    return;
  }
  if (!node.is_array() ||
      node.size() != static_cast<std::size_t>(t.shape[axis])) {
    schema_error(origin, "model generator '" + name + "': expected a nested " +
                             "array matching shape axis " +
                             std::to_string(axis));
  }
  for (std::int64_t i = 0; i < t.shape[axis]; ++i) {
    coord[axis] = i;
    fill_axis(node[static_cast<std::size_t>(i)], t, coord, axis + 1, origin,
              name);
  }
}

template <class Ops>
Model<Ops> parse_model(const json& node, const TheoryPtr& th,
                       const std::string& origin) {
  if (!node.is_object()) schema_error(origin, "model: expected an object");
  Model<Ops> m;
  m.theory = th;
  m.dims.assign(th->type_count(), 0);
  const json& dims = require(node, "dims", origin, "model");
  if (!dims.is_object()) schema_error(origin, "model.dims: expected an object");
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    std::int64_t d = want_int(it.value(), origin, "model.dims");
    if (d < 1) schema_error(origin, "model.dims: dimensions must be >= 1");
    m.dims[th->type(it.key())] = d;
  }
  for (TypeId t = 0; t < th->type_count(); ++t) {
    if (m.dims[t] == 0) {
      schema_error(origin,
                   "model.dims: missing dimension for type '" +
                       th->type_name(t) + "'");
    }
  }
  const json& gens = require(node, "generators", origin, "model");
  if (!gens.is_object()) {
    schema_error(origin, "model.generators: expected an object");
  }
  m.gens.resize(th->generator_count());
  std::vector<bool> seen(th->generator_count(), false);
  for (auto it = gens.begin(); it != gens.end(); ++it) {
    GenId g = th->gen(it.key());
    const GeneratorSig& sig = th->generator(g);
    Tensor<Ops> t = Tensor<Ops>::zeros(m.shape_of(sig), sig.cod.size());
    std::vector<std::int64_t> coord(t.rank(), 0);
    fill_axis(it.value(), t, coord, 0, origin, sig.name);
    m.gens[g] = std::move(t);
    seen[g] = true;
  }
  for (GenId g = 0; g < th->generator_count(); ++g) {
    if (!seen[g]) {
      schema_error(origin, "model.generators: missing tensor for '" +
                               th->generator(g).name + "'");
    }
  }
  m.validate();
  return m;
}

void locate(const std::string& text, std::size_t byte, std::size_t& line,
            std::size_t& column) {
  line = 1;
  std::size_t last_nl = 0;
  bool seen_nl = false;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      last_nl = i;
      seen_nl = true;
    }
  }
  column = byte - (seen_nl ? last_nl + 1 : 0);
  if (column == 0) column = 1;
}

json port_to_json(const Port& p) {
  json out;
  switch (p.kind) {
    case PortKind::BoundaryIn:
      out["kind"] = "boundary_in";
      break;
    case PortKind::BoundaryOut:
      out["kind"] = "boundary_out";
      break;
    case PortKind::BoxIn:
      out["kind"] = "box_in";
      break;
    case PortKind::BoxOut:
      out["kind"] = "box_out";
      break;
  }
  if (p.kind == PortKind::BoxIn || p.kind == PortKind::BoxOut) {
    out["box"] = p.box;
  }
  out["index"] = p.index;
  return out;
}

json theory_to_json(const TheoryPtr& th) {
  json types = json::array();
  for (TypeId t = 0; t < th->type_count(); ++t) {
    types.push_back(th->type_name(t));
  }
  json gens = json::array();
  for (GenId g = 0; g < th->generator_count(); ++g) {
    const GeneratorSig& sig = th->generator(g);
    json dom = json::array(), cod = json::array();
    for (TypeId t : sig.dom) dom.push_back(th->type_name(t));
    for (TypeId t : sig.cod) cod.push_back(th->type_name(t));
    gens.push_back({{"name", sig.name}, {"dom", dom}, {"cod", cod}});
  }
  return {{"types", types}, {"generators", gens}};
}

json raw_to_json(const Diagram& d) {
  const TheoryPtr& th = d.theory();
  json boxes = json::array();
  for (const BoxInstance& b : d.boxes()) {
    boxes.push_back({{"gen", th->generator(b.gen).name},
                     {"variant", variant_name(b.variant)}});
  }
  json wires = json::array();
  for (const Wire& w : d.wires()) {
    wires.push_back({port_to_json(w.a), port_to_json(w.b)});
  }
  json dom = json::array(), cod = json::array(), loops = json::array();
  for (TypeId t : d.dom()) dom.push_back(th->type_name(t));
  for (TypeId t : d.cod()) cod.push_back(th->type_name(t));
  for (TypeId t : d.loops()) loops.push_back(th->type_name(t));
  return {{"op", "raw"},   {"boxes", boxes}, {"wires", wires},
          {"dom", dom},    {"cod", cod},     {"loops", loops}};
}

}  // namespace

ParsedFile parse_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0, column = 0;
    locate(text, e.byte, line, column);
    throw ParseError(origin, line, column, e.what());
  }
  if (!doc.is_object()) schema_error(origin, "top level: expected an object");
  if (want_int(require(doc, "schema", origin, "top level"), origin,
               "schema") != 1) {
    schema_error(origin, "unsupported schema version (want 1)");
  }

  ParsedFile out;
  if (doc.contains("scalars")) {
    std::string s = want_string(doc["scalars"], origin, "scalars");
    if (s == "bool") {
      out.boolean_scalars = true;
    } else if (s != "complex") {
      schema_error(origin, "scalars: expected 'complex' or 'bool'");
    }
  }
  out.theory = parse_theory(require(doc, "theory", origin, "top level"),
                            origin);
  if (doc.contains("diagram")) {
    out.main = eval_expr(doc["diagram"], out.theory, origin);
  }
  if (doc.contains("diagrams")) {
    const json& named = doc["diagrams"];
    if (!named.is_object()) {
      schema_error(origin, "diagrams: expected an object of named expressions");
    }
    for (auto it = named.begin(); it != named.end(); ++it) {
      out.named.emplace(it.key(), eval_expr(it.value(), out.theory, origin));
    }
  }
  if (doc.contains("model")) {
    if (out.boolean_scalars) {
      out.bmodel = parse_model<BoolOps>(doc["model"], out.theory, origin);
    } else {
      out.cmodel = parse_model<ComplexOps>(doc["model"], out.theory, origin);
    }
  }
  return out;
}

ParsedFile parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

std::string serialize(const Diagram& d) {
  json doc = {{"schema", 1},
              {"scalars", "complex"},
              {"theory", theory_to_json(d.theory())},
              {"diagram", raw_to_json(d)}};
  return doc.dump(2) + "\n";
}

std::string serialize(const QDiagram& q) {
  json doc = {{"schema", 1},
              {"scalars", "complex"},
              {"theory", theory_to_json(q.theory())},
              {"diagram",
               {{"op", "purification"},
                {"env", q.env().size()},
                {"arg", raw_to_json(q.purify())}}}};
  return doc.dump(2) + "\n";
}

}  // namespace procflow
