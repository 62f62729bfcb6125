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

#include <complex>

#include "procflow/diagram.hpp"
#include "procflow/errors.hpp"
#include "procflow/evaluate.hpp"
#include "procflow/model.hpp"
#include "procflow/theory.hpp"
#include "test_support.hpp"

using namespace procflow;
using testing::DiagramGen;
using testing::naive_evaluate;
using testing::std_theory;

namespace {

CModel model_for(std::uint64_t seed, std::int64_t lo = 2, std::int64_t hi = 3) {
  return random_model(std_theory(), lo, hi, seed);
}

}  // namespace

TEST_CASE("a single box evaluates to its model tensor", "[evaluate]") {
  TheoryPtr th = std_theory();
  CModel m = model_for(42);
  for (const char* name : {"s", "e", "u", "m", "w", "k"}) {
    GenId g = th->gen(name);
    auto t = evaluate(box(th, name), m);
    REQUIRE(t.shape == m.gens[g].shape);
    REQUIRE(t.cod_rank == m.gens[g].cod_rank);
    CHECK(max_deviation(t, m.gens[g]) == 0.0);
  }
}

TEST_CASE("adjoint evaluates to the conjugate transpose", "[evaluate]") {
  TheoryPtr th = std_theory();
  CModel m = model_for(43);
  auto tw = evaluate(box(th, "w"), m);            // axes: c0 c1 | d0
  auto twa = evaluate(box(th, "w", kAdjoint), m);  // axes: d0 | c0 c1
  std::int64_t d = m.dim(th->type("A"));
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      for (std::int64_t k = 0; k < d; ++k) {
        CHECK(std::abs(twa.at({k, i, j}) - std::conj(tw.at({i, j, k}))) <
              1e-12);
      }
    }
  }
}

TEST_CASE("conjugate and transpose variants", "[evaluate]") {
  TheoryPtr th = std_theory();
  CModel m = model_for(44);
  std::int64_t d = m.dim(th->type("A"));
  auto tw = evaluate(box(th, "w"), m);
  // Conjugate reverses leg order within dom and cod and conjugates entries.
  auto twc = evaluate(box(th, "w", kConjugate), m);
  // Transpose swaps dom and cod (reversing leg order twice cancels).
  auto twt = evaluate(box(th, "w", kTranspose), m);
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      for (std::int64_t k = 0; k < d; ++k) {
        CHECK(std::abs(twc.at({j, i, k}) - std::conj(tw.at({i, j, k}))) <
              1e-12);
        CHECK(std::abs(twt.at({k, j, i}) - tw.at({i, j, k})) < 1e-12);
      }
    }
  }
}

TEST_CASE("identity, swap, cup, and cap tensors", "[evaluate]") {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  CModel m = model_for(45);
  std::int64_t d = m.dim(a);

  auto tid = evaluate(identity(th, {a}), m);
  auto tsw = evaluate(swap_wires(th, a, a), m);
  auto tcup = evaluate(cup(th, a), m);
  auto tcap = evaluate(cap(th, a), m);
  REQUIRE(tcup.cod_rank == 2);
  REQUIRE(tcap.cod_rank == 0);
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      double delta = i == j ? 1.0 : 0.0;
      CHECK(std::abs(tid.at({i, j}) - delta) < 1e-12);
      CHECK(std::abs(tcup.at({i, j}) - delta) < 1e-12);
      CHECK(std::abs(tcap.at({i, j}) - delta) < 1e-12);
      for (std::int64_t k = 0; k < d; ++k) {
        for (std::int64_t l = 0; l < d; ++l) {
          double sd = (i == l && j == k) ? 1.0 : 0.0;
          CHECK(std::abs(tsw.at({i, j, k, l}) - sd) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("sequential composition is tensor contraction", "[evaluate]") {
  TheoryPtr th = std_theory();
  CModel m = model_for(46);
  std::int64_t d = m.dim(th->type("A"));
  auto tu = evaluate(box(th, "u"), m);
  auto tv = evaluate(box(th, "v"), m);
  auto tvu = evaluate(compose_seq(box(th, "v"), box(th, "u")), m);
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      std::complex<double> acc = 0;
      for (std::int64_t k = 0; k < d; ++k) acc += tv.at({i, k}) * tu.at({k, j});
      CHECK(std::abs(tvu.at({i, j}) - acc) < 1e-12);
    }
  }
}

TEST_CASE("closed loop scales by the dimension", "[evaluate]") {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  CModel m = model_for(47);
  std::int64_t d = m.dim(a);
  auto t = evaluate(partial_trace(identity(th, {a}), 0, 0), m);
  REQUIRE(t.rank() == 0);
  CHECK(std::abs(t.at({}) - std::complex<double>(static_cast<double>(d))) <
        1e-12);

  // Trace of u: loop closed over a box instead of a bare wire.
  auto tu = evaluate(box(th, "u"), m);
  std::complex<double> trace = 0;
  for (std::int64_t i = 0; i < d; ++i) trace += tu.at({i, i});
  auto tl = evaluate(partial_trace(box(th, "u"), 0, 0), m);
  CHECK(std::abs(tl.at({}) - trace) < 1e-12);
}

TEST_CASE("evaluation agrees with the brute-force oracle",
          "[evaluate][random]") {
  TheoryPtr th = std_theory();
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120 && checked < 60; ++seed) {
    DiagramGen gen(th, seed);
    Diagram d = gen.random_diagram(2 + static_cast<int>(seed % 3), true);
    if (d.wires().size() > 16) continue;  // keep the oracle's sum tractable
    CModel m = random_model(th, 1, 2, seed * 7 + 1);
    auto fast = evaluate(d, m);
    auto slow = naive_evaluate(d, m);
    REQUIRE(fast.shape == slow.shape);
    CHECK(max_deviation(fast, slow) < 1e-9);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("greedy and sequential contraction orders agree",
          "[evaluate][random]") {
  TheoryPtr th = std_theory();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DiagramGen gen(th, seed + 300);
    Diagram d = gen.random_diagram(4, true);
    CModel m = random_model(th, 1, 3, seed + 77);
    auto g = evaluate(d, m, ContractionOrder::Greedy);
    auto s = evaluate(d, m, ContractionOrder::Sequential);
    REQUIRE(g.shape == s.shape);
    CHECK(max_deviation(g, s) < 1e-9);
  }
}

TEST_CASE("boolean semiring composes relations", "[evaluate][bool]") {
  Theory t;
  TypeId x = t.add_type("X");
  t.add_generator("r", {x}, {x});
  t.add_generator("s", {x}, {x});
  TheoryPtr th = freeze(std::move(t));

  BModel m;
  m.theory = th;
  m.dims = {2};
  // r = {(0,0),(1,0)}: relates input 0 to both outputs. Rows are outputs.
  Tensor<BoolOps> tr = Tensor<BoolOps>::zeros({2, 2}, 1);
  tr.at({0, 0}) = 1;
  tr.at({1, 0}) = 1;
  // s = {(1,1)}.
  Tensor<BoolOps> ts = Tensor<BoolOps>::zeros({2, 2}, 1);
  ts.at({1, 1}) = 1;
  m.gens = {tr, ts};
  m.validate();

  // s . r relates 0 to 1 (via intermediate 1) and nothing else.
  auto comp = evaluate(compose_seq(box(th, "s"), box(th, "r")), m);
  CHECK(comp.at({0, 0}) == 0);
  CHECK(comp.at({1, 0}) == 1);
  CHECK(comp.at({0, 1}) == 0);
  CHECK(comp.at({1, 1}) == 0);

  // Loop on the identity: OR over the diagonal = 1.
  auto lp = evaluate(partial_trace(identity(th, {x}), 0, 0), m);
  CHECK(lp.at({}) == 1);
}

TEST_CASE("evaluate rejects a model for a different theory", "[evaluate]") {
  TheoryPtr th = std_theory();
  Theory other;
  TypeId x = other.add_type("A");
  other.add_generator("s", {}, {x});
  TheoryPtr th2 = freeze(std::move(other));
  CModel m2 = random_model(th2, 2, 2, 1);
  CHECK_THROWS_AS(evaluate(box(th, "s"), m2), TheoryMismatchError);
}

TEST_CASE("model validation catches shape errors", "[evaluate]") {
  TheoryPtr th = std_theory();
  CModel m = model_for(48);
  m.gens[th->gen("u")] = Tensor<ComplexOps>::zeros({1, 1}, 1);
  CHECK_THROWS_AS(m.validate(), ShapeError);
}

TEST_CASE("prob_equiv separates distinct diagrams and passes equal ones",
          "[evaluate][random]") {
  TheoryPtr th = std_theory();
  Diagram u = box(th, "u");
  Diagram v = box(th, "v");

  EquivResult same = prob_equiv(u, u, 10, 5, 1e-9);
  CHECK(same.equivalent);
  CHECK(same.trials_run == 10);
  CHECK(same.max_dev <= 1e-9);

  EquivResult diff = prob_equiv(u, v, 10, 5, 1e-9);
  CHECK_FALSE(diff.equivalent);
  CHECK(diff.trials_run <= 3);  // caught within the first few models
  CHECK(diff.max_dev > 1e-9);

  // Structurally different but semantically equal: slid boxes.
  Diagram id = identity(th, {th->type("A")});
  Diagram early = compose_seq(compose_par(id, v), compose_par(u, id));
  Diagram late = compose_seq(compose_par(u, id), compose_par(id, v));
  CHECK(prob_equiv(early, late, 10, 5, 1e-9).equivalent);
}

TEST_CASE("prob_equiv rejects mismatched inputs", "[evaluate]") {
  TheoryPtr th = std_theory();
  CHECK_THROWS_AS(prob_equiv(box(th, "u"), box(th, "w"), 5, 1, 1e-9),
                  TypeMismatchError);
  Theory other;
  TypeId x = other.add_type("A");
  other.add_generator("u", {x}, {x});
  TheoryPtr th2 = freeze(std::move(other));
  CHECK_THROWS_AS(prob_equiv(box(th, "u"), box(th2, "u"), 5, 1, 1e-9),
                  TheoryMismatchError);
}

TEST_CASE("tensor helpers compare shapes strictly", "[evaluate]") {
  auto a = Tensor<ComplexOps>::zeros({2, 2}, 1);
  auto b = Tensor<ComplexOps>::zeros({2, 3}, 1);
  CHECK_THROWS_AS(max_deviation(a, b), ShapeError);
  CHECK_FALSE(numeric_equal(a, b, 1e-9));
  auto c = Tensor<ComplexOps>::zeros({2, 2}, 2);
  CHECK_FALSE(numeric_equal(a, c, 1e-9));  // same shape, different split
}
