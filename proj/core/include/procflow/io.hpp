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

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "procflow/diagram.hpp"
#include "procflow/doubling.hpp"
#include "procflow/model.hpp"

namespace procflow {

// Either a plain diagram or a doubled channel; files may define both kinds.
using AnyDiagram = std::variant<Diagram, QDiagram>;

// Contents of a diagram file (JSON, schema version 1):
//   {
//     "schema": 1,
//     "scalars": "complex" | "bool",        // default "complex"
//     "theory": { "types": [...], "generators": [{name, dom, cod}, ...] },
//     "diagram": <expr>,                    // optional main diagram
//     "diagrams": { "name": <expr>, ... },  // optional named diagrams
//     "model": { "dims": {type: n, ...},
//                "generators": {name: <nested entries>, ...} }
//   }
// An <expr> is an object with an "op" field:
//   box(gen, variant?), id(types), swap(a, b), cup(type), cap(type),
//   permutation(types, perm), compose(args...), tensor(args...),
//   dagger(arg), transpose(arg), conjugate(arg), trace(arg, out, in),
//   double(arg), discard(types), purification(arg, env), raw(...).
// compose lists its arguments in application order: the first element runs
// first. double/discard/purification produce channels; compose, tensor and
// dagger work on either kind but do not mix the two.
// Model entries are nested arrays matching the generator shape (cod axes
// then dom axes); complex leaves are [re, im] pairs, boolean leaves 0 or 1.
struct ParsedFile {
  TheoryPtr theory;
  bool boolean_scalars = false;
  std::optional<AnyDiagram> main;
  std::map<std::string, AnyDiagram> named;
  std::optional<CModel> cmodel;
  std::optional<BModel> bmodel;
};

// `origin` names the input in error messages. Malformed JSON raises
// ParseError with 1-based line/column; schema violations raise ParseError
// with line 0; type-level failures inside expressions propagate as the
// library errors they are (TypeMismatchError and friends).
ParsedFile parse_text(const std::string& text, const std::string& origin);
ParsedFile parse_file(const std::string& path);

// Serializes as a schema-1 document with the full theory and the diagram as
// a raw node (a purification raw node for channels); parse_text on the
// output reproduces a structurally equal diagram.
std::string serialize(const Diagram& d);
std::string serialize(const QDiagram& q);

}  // namespace procflow
