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
#include <string>
#include <vector>

#include "procflow/diagram.hpp"

namespace procflow {

// Deformation-invariant fingerprint of a diagram. Two diagrams over the same
// theory are equal as string diagrams (equal under planar isotopy, yanking,
// and sliding boxes along cups and caps) iff their canonical bytes match.
//
// The bytes encode the abstract generator-port graph: each box is labelled by
// (generator id, conjugation bit) where the conjugation bit is
// adjoint XOR conjugate, and its wire attachments are recorded against the
// generator's own dom/cod slots. Transposed variants of a box are thereby the
// same label with bent wiring, which is what makes sliding hold; conjugated
// tensors stay distinct.
//
// Byte layout (all integers big-endian u32 unless noted):
//   "PFC1"
//   |dom|,  dom type ids
//   |cod|,  cod type ids
//   |loops|, loop type ids (sorted)
//   n_boxes, then per box in canonical order: generator id, u8 conj bit
//   n_wires, then per wire: two port codes, low code first; wires sorted
// A port code packs kind(2) | box(16) | slot(14), with kind 0 = boundary-in,
// 1 = boundary-out, 2 = generator dom slot, 3 = generator cod slot; box is
// the canonical box index (0 for boundary ports).
//
// The canonical box order is computed by iterated neighbourhood refinement
// seeded with the box labels and boundary attachments, with backtracking
// individualization on ties; the lexicographically least encoding wins, so
// the bytes do not depend on construction order or platform.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;

  friend bool operator==(const CanonicalForm& x, const CanonicalForm& y) {
    return x.bytes == y.bytes;
  }
  friend bool operator!=(const CanonicalForm& x, const CanonicalForm& y) {
    return !(x == y);
  }
  friend bool operator<(const CanonicalForm& x, const CanonicalForm& y) {
    return x.bytes < y.bytes;
  }
};

CanonicalForm canonical_form(const Diagram& d);

// Structural equality; throws TheoryMismatchError when the diagrams do not
// share a theory.
bool equal(const Diagram& a, const Diagram& b);

}  // namespace procflow
