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

#include <catch2/catch_amalgamated.hpp>

#include "procflow/canonical.hpp"
#include "procflow/diagram.hpp"
#include "procflow/theory.hpp"
#include "test_support.hpp"

using namespace procflow;
using testing::DiagramGen;
using testing::has_cup_or_cap;
using testing::has_cycle_oracle;
using testing::std_theory;

TEST_CASE("plain compositions are circuits", "[circuit]") {
  TheoryPtr th = std_theory();
  Diagram u = box(th, "u");
  Diagram m = box(th, "m");
  Diagram w = box(th, "w");
  CHECK(is_circuit(u));
  CHECK(is_circuit(compose_seq(m, w)));
  CHECK(is_circuit(compose_par(u, u)));
  CHECK(is_circuit(identity(th, {})));
}

TEST_CASE("cups, caps, loops, and feedback are not circuits", "[circuit]") {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  CHECK_FALSE(is_circuit(cup(th, a)));
  CHECK_FALSE(is_circuit(cap(th, a)));
  CHECK_FALSE(is_circuit(partial_trace(identity(th, {a}), 0, 0)));

  // Feedback loop around w . m: trace the second output to the second input.
  Diagram wm = compose_seq(box(th, "w"), box(th, "m"));  // A,A -> A,A
  Diagram fb = partial_trace(wm, 1, 1);
  CHECK_FALSE(is_circuit(fb));
  CHECK(has_cycle_oracle(fb));
  CHECK_FALSE(directed_cycles(fb).empty());
}

TEST_CASE("transposed boxes still form circuits when wiring is forward",
          "[circuit]") {
  TheoryPtr th = std_theory();
  // The adjoint of w has shape A,A -> A and connects forward; no cycles.
  Diagram d = compose_seq(box(th, "w", kAdjoint), box(th, "w"));
  CHECK(is_circuit(d));
}

TEST_CASE("is_circuit agrees with the oracle on random diagrams",
          "[circuit][random]") {
  TheoryPtr th = std_theory();
  int circuits = 0, non_circuits = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    DiagramGen gen(th, seed);
    Diagram d = gen.random_diagram(4, seed % 2 == 0);
    bool expect = !has_cup_or_cap(d) && !has_cycle_oracle(d);
    CHECK(is_circuit(d) == expect);
    (expect ? circuits : non_circuits) += 1;
  }
  // The generator must exercise both outcomes.
  CHECK(circuits > 20);
  CHECK(non_circuits > 20);
}

TEST_CASE("cycle reports agree with the oracle", "[circuit][random]") {
  TheoryPtr th = std_theory();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DiagramGen gen(th, seed + 5000);
    Diagram d = gen.random_diagram(5, true);
    CHECK(directed_cycles(d).empty() == !has_cycle_oracle(d));
  }
}

TEST_CASE("layer decomposition round-trips small circuits", "[circuit]") {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  Diagram u = box(th, "u");
  Diagram v = box(th, "v");
  Diagram d = compose_seq(compose_par(u, v),
                          compose_seq(swap_wires(th, a, a),
                                      compose_par(v, u)));
  auto layers = layer_decompose(d);
  Diagram again = recompose(th, d.dom(), layers);
  CHECK(equal(again, d));
  // One box per box layer.
  for (const Layer& layer : layers) {
    int boxes = 0;
    for (const LayerCell& c : layer) {
      if (c.kind == LayerCell::Kind::Box) ++boxes;
    }
    CHECK(boxes <= 1);
  }
}

TEST_CASE("layer decomposition handles states, effects, and scalars",
          "[circuit]") {
  TheoryPtr th = std_theory();
  Diagram s = box(th, "s");
  Diagram e = box(th, "e");
  Diagram k = box(th, "k");
  Diagram d = compose_par(compose_seq(e, s), k);
  auto layers = layer_decompose(d);
  CHECK(equal(recompose(th, d.dom(), layers), d));
}

TEST_CASE("layer decomposition rejects non-circuits", "[circuit]") {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  CHECK_THROWS_AS(layer_decompose(cup(th, a)), NotACircuitError);
}

TEST_CASE("layer decomposition round-trips random circuits",
          "[circuit][random]") {
  TheoryPtr th = std_theory();
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    DiagramGen gen(th, seed + 900);
    Diagram d = gen.random_circuit(5);
    REQUIRE(is_circuit(d));
    auto layers = layer_decompose(d);
    Diagram again = recompose(th, d.dom(), layers);
    CHECK(equal(again, d));
  }
}
