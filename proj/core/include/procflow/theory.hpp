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
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "procflow/errors.hpp"

namespace procflow {

using TypeId = std::uint32_t;
using GenId = std::uint32_t;
using BoxId = std::uint32_t;

// Ordered list of wire types; the empty list is the tensor unit.
using TypeList = std::vector<TypeId>;

// A typed box symbol. `dom` and `cod` are read bottom-to-top: a generator
// with empty dom is a state, empty cod an effect, both empty a scalar.
struct GeneratorSig {
  std::string name;
  TypeList dom;
  TypeList cod;
};

// A process theory: a finite alphabet of wire types and box generators.
// Diagrams hold a frozen theory by shared pointer and refuse to combine
// with diagrams over a different one.
class Theory {
 public:
  TypeId add_type(std::string name);
  GenId add_generator(std::string name, TypeList dom, TypeList cod);

  std::size_t type_count() const { return types_.size(); }
  std::size_t generator_count() const { return gens_.size(); }
  const std::string& type_name(TypeId t) const { return types_.at(t); }
  const GeneratorSig& generator(GenId g) const { return gens_.at(g); }

  std::optional<TypeId> find_type(const std::string& name) const;
  std::optional<GenId> find_generator(const std::string& name) const;

  // Lookup by name; throws UnknownNameError.
  TypeId type(const std::string& name) const;
  GenId gen(const std::string& name) const;

  std::string type_list_name(const TypeList& ts) const;

  bool operator==(const Theory& other) const;
  bool operator!=(const Theory& other) const { return !(*this == other); }

 private:
  std::vector<std::string> types_;
  std::vector<GeneratorSig> gens_;
  std::unordered_map<std::string, TypeId> type_index_;
  std::unordered_map<std::string, GenId> gen_index_;
};

using TheoryPtr = std::shared_ptr<const Theory>;

inline TheoryPtr freeze(Theory t) {
  return std::make_shared<const Theory>(std::move(t));
}

// Pointer identity first, then structural comparison, so theories parsed
// twice from the same file still count as equal.
bool same_theory(const TheoryPtr& a, const TheoryPtr& b);

}  // namespace procflow
