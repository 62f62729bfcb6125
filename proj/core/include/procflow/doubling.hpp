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

#include <cstddef>

#include "procflow/diagram.hpp"

namespace procflow {

// Pairs every part of the diagram with its conjugate: box i becomes boxes
// 2i (conjugate variant) and 2i+1 (original), each boundary leg i becomes
// legs 2i and 2i+1 of the same type, wires and loops are copied to both
// layers. Conjugate-copy box ports are mirrored so each copy wires the same
// generator slot. Under any model the result evaluates to the original
// tensor times its entrywise conjugate on the paired legs.
Diagram double_diagram(const Diagram& d);

// A channel between doubled systems, stored as a purification: a plain
// diagram `pure` from qdom to env ++ qcod. The channel itself doubles `pure`
// and traces out the env pairs. Keeping the purification explicit makes
// composition, tensoring and the dagger closed-form, and purify() free.
class QDiagram {
 public:
  // Doubles a plain diagram `pure` into the channel X -> Y it implements
  // (no environment).
  static QDiagram doubled(const Diagram& pure);

  // Declares the first `env_count` output legs of `pure` as environment:
  // the channel maps dom(pure) to the remaining output legs, discarding the
  // environment pairs.
  static QDiagram purification(const Diagram& pure, std::size_t env_count);

  static QDiagram q_identity(const TheoryPtr& th, const TypeList& types);

  // The trace-out channel from one system, or a whole list, to nothing.
  static QDiagram discard(const TheoryPtr& th, TypeId t);
  static QDiagram discard_all(const TheoryPtr& th, const TypeList& types);

  const TheoryPtr& theory() const { return pure_.theory(); }
  const TypeList& qdom() const { return qdom_; }
  const TypeList& qcod() const { return qcod_; }
  const TypeList& env() const { return env_; }

  // The stored purification, a plain diagram qdom -> env ++ qcod.
  const Diagram& purify() const { return pure_; }

  // Materializes the channel as a plain diagram between interleaved pairs:
  // dom has legs 2i, 2i+1 for qdom[i], likewise cod for qcod; environment
  // pairs are closed by caps.
  Diagram base() const;

 private:
  QDiagram(Diagram pure, TypeList env, TypeList qcod);

  Diagram pure_;
  TypeList env_;
  TypeList qdom_;
  TypeList qcod_;
};

// g after f; environments concatenate (f's first).
QDiagram q_compose_seq(const QDiagram& g, const QDiagram& f);

// Side by side; environments concatenate (f's first).
QDiagram q_compose_par(const QDiagram& f, const QDiagram& g);

// The adjoint channel: on a channel with Kraus pieces K_e this yields the
// channel with pieces K_e adjoint. For a doubled diagram it is the doubling
// of the diagram's dagger.
QDiagram q_dagger(const QDiagram& f);

// Structural equality of the materialized channels. Sound but conservative:
// different purifications of one channel may compare unequal.
bool q_equal(const QDiagram& a, const QDiagram& b);

}  // namespace procflow
