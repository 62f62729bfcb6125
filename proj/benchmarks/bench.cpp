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
//
// Desk-scale baselines for the hot paths: canonicalization, structural
// equality, contraction, and channel extraction. Sizes are chosen so a run
// finishes in seconds while still showing scaling between arguments.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "procflow/analysis.hpp"
#include "procflow/canonical.hpp"
#include "procflow/diagram.hpp"
#include "procflow/doubling.hpp"
#include "procflow/evaluate.hpp"
#include "procflow/model.hpp"
#include "procflow/theory.hpp"

namespace {

using namespace procflow;

TheoryPtr bench_theory() {
  static TheoryPtr th = [] {
    Theory t;
    TypeId a = t.add_type("A");
    t.add_generator("u", {a}, {a});
    t.add_generator("m", {a, a}, {a});
    t.add_generator("w", {a}, {a, a});
    return freeze(std::move(t));
  }();
  return th;
}

// Alternating fan-out/fan-in ladder `layers` boxes deep, width 2 or 3.
// Deterministic so timings compare across runs.
Diagram ladder(int layers) {
  TheoryPtr th = bench_theory();
  TypeId a = th->type("A");
  Diagram d = identity(th, {a, a});
  for (int i = 0; i < layers; ++i) {
    std::size_t w = d.cod().size();
    Diagram step =
        w >= 3 ? compose_par(box(th, "m"), identity(th, TypeList(w - 2, a)))
               : compose_par(box(th, "w"), identity(th, TypeList(w - 1, a)));
    d = compose_seq(step, d);
  }
  return d;
}

void bm_canonical_form(benchmark::State& state) {
  Diagram d = ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_form(d));
  }
}
BENCHMARK(bm_canonical_form)->Arg(8)->Arg(16)->Arg(32);

void bm_equal(benchmark::State& state) {
  Diagram d = ladder(static_cast<int>(state.range(0)));
  Diagram e = compose_par(d, identity(bench_theory(), {}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(equal(d, e));
  }
}
BENCHMARK(bm_equal)->Arg(8)->Arg(16)->Arg(32);

void bm_evaluate(benchmark::State& state) {
  Diagram d = ladder(static_cast<int>(state.range(0)));
  CModel m = random_model(bench_theory(), 2, 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(d, m));
  }
}
BENCHMARK(bm_evaluate)->Arg(8)->Arg(16);

void bm_double_diagram(benchmark::State& state) {
  Diagram d = ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_diagram(d));
  }
}
BENCHMARK(bm_double_diagram)->Arg(8)->Arg(16)->Arg(32);

void bm_choi(benchmark::State& state) {
  TheoryPtr th = bench_theory();
  CModel m = random_model(th, static_cast<std::int64_t>(state.range(0)),
                          static_cast<std::int64_t>(state.range(0)), 11);
  QDiagram chan = QDiagram::doubled(box(th, "u"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(choi(chan, m));
  }
}
BENCHMARK(bm_choi)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
