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

#include "procflow/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "procflow/analysis.hpp"
#include "procflow/canonical.hpp"
#include "procflow/diagram.hpp"
#include "procflow/doubling.hpp"
#include "procflow/errors.hpp"
#include "procflow/evaluate.hpp"
#include "procflow/io.hpp"
#include "procflow/model.hpp"
#include "procflow/theory.hpp"

namespace procflow::cli {
namespace {

using nlohmann::json;

std::uint64_t env_seed() {
  const char* s = std::getenv("PROCFLOW_SEED");
  if (s == nullptr || *s == '\0') return 0;
  return std::strtoull(s, nullptr, 10);
}

const AnyDiagram& pick_diagram(const ParsedFile& file,
                               const std::string& name) {
  if (name == "main") {
    if (!file.main.has_value()) {
      throw UnknownNameError("diagram", "main");
    }
    return *file.main;
  }
  auto it = file.named.find(name);
  if (it == file.named.end()) throw UnknownNameError("diagram", name);
  return it->second;
}

std::string format_complex(const Complex& z) {
  std::ostringstream s;
  s.precision(12);
  s << z.real();
  if (z.imag() >= 0) {
    s << "+" << z.imag();
  } else {
    s << "-" << -z.imag();
  }
  s << "i";
  return s.str();
}

template <class Ops>
json tensor_to_json(const Tensor<Ops>& t);

template <>
json tensor_to_json(const CTensor& t) {
  json entries = json::array();
  for (const Complex& z : t.data) entries.push_back({z.real(), z.imag()});
  return {{"shape", t.shape}, {"cod_rank", t.cod_rank}, {"entries", entries}};
}

template <>
json tensor_to_json(const BTensor& t) {
  json entries = json::array();
  for (auto v : t.data) entries.push_back(static_cast<int>(v));
  return {{"shape", t.shape}, {"cod_rank", t.cod_rank}, {"entries", entries}};
}

void print_coords(std::ostream& out, const std::vector<std::int64_t>& shape,
                  std::size_t flat) {
  out << "[";
  std::int64_t rem = static_cast<std::int64_t>(flat);
  std::vector<std::int64_t> coord(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    coord[i] = rem % shape[i];
    rem /= shape[i];
  }
  for (std::size_t i = 0; i < coord.size(); ++i) {
    out << (i > 0 ? "," : "") << coord[i];
  }
  out << "]";
}

template <class Ops>
void print_tensor(std::ostream& out, const Tensor<Ops>& t) {
  out << "shape:";
  if (t.shape.empty()) out << " scalar";
  for (std::int64_t d : t.shape) out << " " << d;
  out << "  outputs: " << t.cod_rank << "\n";
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    out << "  ";
    print_coords(out, t.shape, i);
    if constexpr (std::is_same_v<Ops, ComplexOps>) {
      out << " = " << format_complex(t.data[i]) << "\n";
    } else {
      out << " = " << static_cast<int>(t.data[i]) << "\n";
    }
  }
}

Diagram base_of(const AnyDiagram& d) {
  if (std::holds_alternative<QDiagram>(d)) {
    return std::get<QDiagram>(d).base();
  }
  return std::get<Diagram>(d);
}

int cmd_eval(const std::string& path, const std::string& name,
             ContractionOrder order, bool as_json, std::ostream& out) {
  ParsedFile file = parse_file(path);
  const AnyDiagram& any = pick_diagram(file, name);
  Diagram d = base_of(any);
  bool channel = std::holds_alternative<QDiagram>(any);
  if (file.boolean_scalars) {
    if (!file.bmodel.has_value()) {
      throw TheoryMismatchError("eval: file declares no model");
    }
    auto t = evaluate(d, *file.bmodel, order);
    if (as_json) {
      json doc = tensor_to_json(t);
      doc["scalars"] = "bool";
      doc["channel"] = channel;
      out << doc.dump(2) << "\n";
    } else {
      print_tensor(out, t);
    }
    return kExitOk;
  }
  if (!file.cmodel.has_value()) {
    throw TheoryMismatchError("eval: file declares no model");
  }
  auto t = evaluate(d, *file.cmodel, order);
  if (as_json) {
    json doc = tensor_to_json(t);
    doc["scalars"] = "complex";
    doc["channel"] = channel;
    out << doc.dump(2) << "\n";
  } else {
    if (channel) out << "channel (doubled legs in conjugate pairs)\n";
    print_tensor(out, t);
  }
  return kExitOk;
}

int cmd_eq(const std::string& path, const std::string& left,
           const std::string& right, bool numeric, int trials,
           std::uint64_t seed, double tol, bool as_json, std::ostream& out) {
  ParsedFile file = parse_file(path);
  const AnyDiagram& a = pick_diagram(file, left);
  const AnyDiagram& b = pick_diagram(file, right);
  if (a.index() != b.index()) {
    throw TypeMismatchError(
        "eq: '" + left + "' and '" + right +
        "' are different kinds (one plain, one doubled)");
  }

  bool structural;
  if (std::holds_alternative<QDiagram>(a)) {
    structural = q_equal(std::get<QDiagram>(a), std::get<QDiagram>(b));
  } else {
    structural = equal(std::get<Diagram>(a), std::get<Diagram>(b));
  }

  std::optional<EquivResult> numeric_result;
  if (numeric) {
    numeric_result = prob_equiv(base_of(a), base_of(b), trials, seed, tol);
  }
  bool verdict = numeric ? numeric_result->equivalent : structural;

  if (as_json) {
    json doc = {{"structural", structural}, {"equal", verdict}};
    if (numeric_result.has_value()) {
      doc["numeric"] = {{"equivalent", numeric_result->equivalent},
                        {"trials_run", numeric_result->trials_run},
                        {"max_dev", numeric_result->max_dev},
                        {"witness_seed", numeric_result->witness_seed}};
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "structural: " << (structural ? "equal" : "distinct") << "\n";
    if (numeric_result.has_value()) {
      out << "numeric: "
          << (numeric_result->equivalent ? "equivalent" : "distinct")
          << " after " << numeric_result->trials_run
          << " models (max dev " << numeric_result->max_dev << ")\n";
      if (!numeric_result->equivalent) {
        out << "witness seed: " << numeric_result->witness_seed << "\n";
      }
    }
  }
  return verdict ? kExitOk : kExitFail;
}

json analyze_plain(const Diagram& d, const ParsedFile& file) {
  json doc;
  doc["kind"] = "plain";
  doc["boxes"] = d.box_count();
  doc["wires"] = d.wires().size();
  doc["loops"] = d.loops().size();
  doc["dom"] = d.theory()->type_list_name(d.dom());
  doc["cod"] = d.theory()->type_list_name(d.cod());
  doc["fingerprint"] = canonical_form(d).hex().substr(0, 16);
  bool circuit = is_circuit(d);
  doc["circuit"] = circuit;
  if (circuit) {
    doc["layers"] = layer_decompose(d).size();
  } else {
    doc["cycles"] = directed_cycles(d).size();
  }
  if (file.cmodel.has_value()) {
    doc["isometry"] = is_isometry(d, *file.cmodel);
    doc["unitary"] = is_unitary(d, *file.cmodel);
  }
  return doc;
}

json analyze_channel(const QDiagram& q, const ParsedFile& file) {
  if (!file.cmodel.has_value()) {
    throw TheoryMismatchError(
        "analyze: channel analysis needs a complex model");
  }
  const CModel& m = *file.cmodel;
  json doc;
  doc["kind"] = "channel";
  doc["qdom"] = q.theory()->type_list_name(q.qdom());
  doc["qcod"] = q.theory()->type_list_name(q.qcod());
  doc["env"] = q.theory()->type_list_name(q.env());
  bool causal = is_causal(q, m);
  doc["causal"] = causal;
  ChoiMatrix c = choi(q, m);
  doc["choi_dim"] = c.dim();
  KrausSet ks = kraus_from_choi(c);
  doc["kraus_rank"] = ks.ops.size();
  if (causal) {
    Stinespring st = stinespring(q, m);
    doc["stinespring_env_dim"] = st.env_dim;
  }
  return doc;
}

void print_report(std::ostream& out, const json& doc) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out << it.key() << ": ";
    if (it.value().is_string()) {
      out << it.value().get<std::string>();
    } else {
      out << it.value().dump();
    }
    out << "\n";
  }
}

int cmd_analyze(const std::string& path, const std::string& name,
                bool as_json, std::ostream& out) {
  ParsedFile file = parse_file(path);
  const AnyDiagram& any = pick_diagram(file, name);
  json doc = std::holds_alternative<QDiagram>(any)
                 ? analyze_channel(std::get<QDiagram>(any), file)
                 : analyze_plain(std::get<Diagram>(any), file);
  if (as_json) {
    out << doc.dump(2) << "\n";
  } else {
    print_report(out, doc);
  }
  return kExitOk;
}

int cmd_demo(const std::string& which, std::uint64_t seed, bool as_json,
             std::ostream& out) {
  bool ok;
  if (which == "teleport") {
    ok = demo_teleport(seed, as_json, out);
  } else if (which == "rel-counterexample") {
    ok = demo_rel_counterexample(as_json, out);
  } else if (which == "no-broadcast") {
    ok = demo_no_broadcast(as_json, out);
  } else if (which == "phases") {
    ok = demo_phases(seed, as_json, out);
  } else {
    throw UnknownNameError("demo", which);
  }
  return ok ? kExitOk : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"String-diagram engine for process theories"};
  app.require_subcommand(1);

  std::string path, name = "main";
  std::string left, right;
  std::string order_name = "greedy";
  std::string demo_name;
  bool as_json = false;
  bool numeric = false;
  int trials = 20;
  double tol = 1e-9;
  std::uint64_t seed = env_seed();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a diagram's tensor");
  eval->add_option("file", path, "Input document")->required();
  eval->add_option("diagram", name, "Diagram name ('main' or a named entry)");
  eval->add_option("--order", order_name, "Contraction order")
      ->check(CLI::IsMember({"greedy", "sequential"}));
  eval->add_flag("--json", as_json, "Machine-readable output");

  CLI::App* eq = app.add_subcommand("eq", "Compare two diagrams");
  eq->add_option("file", path, "Input document")->required();
  eq->add_option("left", left, "First diagram name")->required();
  eq->add_option("right", right, "Second diagram name")->required();
  eq->add_flag("--numeric", numeric,
               "Also compare under random models; verdict follows the "
               "numeric result");
  eq->add_option("--trials", trials, "Random models to try");
  eq->add_option("--seed", seed, "Seed (overrides PROCFLOW_SEED)");
  eq->add_option("--tol", tol, "Numeric tolerance");
  eq->add_flag("--json", as_json, "Machine-readable output");

  CLI::App* analyze =
      app.add_subcommand("analyze", "Report structure and channel checks");
  analyze->add_option("file", path, "Input document")->required();
  analyze->add_option("diagram", name,
                      "Diagram name ('main' or a named entry)");
  analyze->add_flag("--json", as_json, "Machine-readable output");

  CLI::App* demo = app.add_subcommand("demo", "Run a built-in demonstration");
  demo->add_option("name", demo_name,
                   "teleport | rel-counterexample | no-broadcast | phases")
      ->required();
  demo->add_option("--seed", seed, "Seed (overrides PROCFLOW_SEED)");
  demo->add_flag("--json", as_json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (eval->parsed()) {
      ContractionOrder order = order_name == "sequential"
                                   ? ContractionOrder::Sequential
                                   : ContractionOrder::Greedy;
      return cmd_eval(path, name, order, as_json, out);
    }
    if (eq->parsed()) {
      return cmd_eq(path, left, right, numeric, trials, seed, tol, as_json,
                    out);
    }
    if (analyze->parsed()) {
      return cmd_analyze(path, name, as_json, out);
    }
    return cmd_demo(demo_name, seed, as_json, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownNameError& e) {
    err << e.what() << "\n";
    return kExitType;
  } catch (const TypeMismatchError& e) {
    err << e.what() << "\n";
    return kExitType;
  } catch (const TheoryMismatchError& e) {
    err << e.what() << "\n";
    return kExitModel;
  } catch (const ShapeError& e) {
    err << e.what() << "\n";
    return kExitModel;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace procflow::cli
