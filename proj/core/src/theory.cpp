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

#include "procflow/theory.hpp"

namespace procflow {

TypeId Theory::add_type(std::string name) {
  if (name.empty()) throw Error("type name must be non-empty");
  if (type_index_.count(name))
    throw Error("duplicate type name: '" + name + "'");
  TypeId id = static_cast<TypeId>(types_.size());
  type_index_.emplace(name, id);
  types_.push_back(std::move(name));
  return id;
}

GenId Theory::add_generator(std::string name, TypeList dom, TypeList cod) {
  if (name.empty()) throw Error("generator name must be non-empty");
  if (gen_index_.count(name))
    throw Error("duplicate generator name: '" + name + "'");
  for (TypeId t : dom)
    if (t >= types_.size())
      throw Error("generator '" + name + "' references unknown type id");
  for (TypeId t : cod)
    if (t >= types_.size())
      throw Error("generator '" + name + "' references unknown type id");
  GenId id = static_cast<GenId>(gens_.size());
  gen_index_.emplace(name, id);
  gens_.push_back(GeneratorSig{std::move(name), std::move(dom), std::move(cod)});
  return id;
}

std::optional<TypeId> Theory::find_type(const std::string& name) const {
  auto it = type_index_.find(name);
  if (it == type_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<GenId> Theory::find_generator(const std::string& name) const {
  auto it = gen_index_.find(name);
  if (it == gen_index_.end()) return std::nullopt;
  return it->second;
}

TypeId Theory::type(const std::string& name) const {
  auto t = find_type(name);
  if (!t) throw UnknownNameError("type", name);
  return *t;
}

GenId Theory::gen(const std::string& name) const {
  auto g = find_generator(name);
  if (!g) throw UnknownNameError("generator", name);
  return *g;
}

std::string Theory::type_list_name(const TypeList& ts) const {
  if (ts.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += "*";
    out += type_name(ts[i]);
  }
  return out;
}

bool Theory::operator==(const Theory& other) const {
  if (types_ != other.types_) return false;
  if (gens_.size() != other.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name != other.gens_[i].name) return false;
    if (gens_[i].dom != other.gens_[i].dom) return false;
    if (gens_[i].cod != other.gens_[i].cod) return false;
  }
  return true;
}

bool same_theory(const TheoryPtr& a, const TheoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace procflow
