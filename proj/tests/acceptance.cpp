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
// Release gate: one check per guaranteed property, one line per check.
// Every tolerance and count is pinned here on purpose; loosening one is a
// visible diff. Exits nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "procflow/analysis.hpp"
#include "procflow/canonical.hpp"
#include "procflow/doubling.hpp"
#include "procflow/errors.hpp"
#include "procflow/evaluate.hpp"
#include "test_support.hpp"

using namespace procflow;
using testing::BoxFixture;
using testing::ChannelFixture;
using testing::CMatrix;
using testing::DiagramGen;
using testing::equal_oracle;
using testing::has_cup_or_cap;
using testing::has_cycle_oracle;
using testing::kraus_channel;
using testing::matrix_box;
using testing::random_gaussian_matrix;
using testing::random_isometry;
using testing::random_kraus;
using testing::signalling_scenario;
using testing::std_theory;

namespace {

struct Line {
  int number;
  std::string name;
  bool ok;
  double seconds;
  std::string detail;
};

// A single-generator layer with domain A^width; the continuation trick for
// building sequentially composable random diagrams.
Diagram random_layer(const TheoryPtr& th, std::size_t width, Rng& rng) {
  TypeId a = th->type("A");
  if (width == 0) {
    return rng.chance(0.5) ? box(th, "s") : identity(th, {});
  }
  int pick = static_cast<int>(rng.uniform_int(0, width >= 2 ? 3 : 2));
  std::size_t consumed = pick == 3 ? 2 : 1;
  std::size_t pos = rng.uniform_int(0, width - consumed);
  Diagram mid = pick == 0   ? box(th, "u")
                : pick == 1 ? box(th, "v")
                : pick == 2 ? box(th, "w")
                            : box(th, "m");
  Diagram left = identity(th, TypeList(pos, a));
  Diagram right = identity(th, TypeList(width - pos - consumed, a));
  return compose_par(compose_par(left, mid), right);
}

Diagram continuation(const TheoryPtr& th, const Diagram& f, Rng& rng,
                     int layers) {
  Diagram g = identity(th, f.cod());
  for (int i = 0; i < layers; ++i) {
    g = compose_seq(random_layer(th, g.cod().size(), rng), g);
  }
  return g;
}

// Block swap A^m * A^n -> A^n * A^m as a permutation diagram.
Diagram block_swap(const TheoryPtr& th, std::size_t m, std::size_t n) {
  TypeId a = th->type("A");
  TypeList types(m + n, a);
  std::vector<std::uint32_t> perm(m + n);
  for (std::size_t i = 0; i < m; ++i) {
    perm[i] = static_cast<std::uint32_t>(n + i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    perm[m + j] = static_cast<std::uint32_t>(j);
  }
  return permutation(th, types, perm);
}

// 1. The four wire-yanking equations: both snakes, and invariance of the
// cup state and cap effect under the swap.
bool crit_yanking(std::string& detail) {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  Diagram id1 = identity(th, {a});
  Diagram cupA = cup(th, a);
  Diagram capA = cap(th, a);
  Diagram sw = swap_wires(th, a, a);

  std::vector<std::pair<Diagram, Diagram>> eqs;
  eqs.emplace_back(compose_seq(compose_par(id1, capA), compose_par(cupA, id1)),
                   id1);
  eqs.emplace_back(compose_seq(compose_par(capA, id1), compose_par(id1, cupA)),
                   id1);
  eqs.emplace_back(compose_seq(sw, cupA), cupA);
  eqs.emplace_back(compose_seq(capA, sw), capA);

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (!equal(eqs[i].first, eqs[i].second)) {
      detail = "equation " + std::to_string(i + 1) + " failed structurally";
      return false;
    }
  }
  for (int t = 0; t < 100; ++t) {
    CModel m = random_model(th, 1, 4, 1000 + static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      double dev =
          max_deviation(evaluate(eqs[i].first, m), evaluate(eqs[i].second, m));
      if (dev > 1e-9) {
        detail = "equation " + std::to_string(i + 1) + " deviates by " +
                 std::to_string(dev) + " at model " + std::to_string(t);
        return false;
      }
    }
  }
  return true;
}

// 2. Category and symmetric monoidal laws on random diagrams: units,
// associativity (both compositions), interchange, and the four swap axioms
// (involution, naturality, hexagon, braid relation).
bool crit_smc(std::string& detail) {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  Diagram id1 = identity(th, {a});
  Diagram id2 = identity(th, {a, a});
  Diagram empty = identity(th, {});
  Diagram sw = swap_wires(th, a, a);

  // Fixed coherence equations for the swap.
  if (!equal(compose_seq(sw, sw), id2)) {
    detail = "swap involution failed";
    return false;
  }
  Diagram hex_lhs = permutation(th, {a, a, a}, {1, 2, 0});
  Diagram hex_rhs = compose_seq(compose_par(sw, id1), compose_par(id1, sw));
  if (!equal(hex_lhs, hex_rhs)) {
    detail = "hexagon failed";
    return false;
  }
  Diagram s01 = compose_par(sw, id1);
  Diagram s12 = compose_par(id1, sw);
  if (!equal(compose_seq(s01, compose_seq(s12, s01)),
             compose_seq(s12, compose_seq(s01, s12)))) {
    detail = "braid relation failed";
    return false;
  }

  for (int t = 0; t < 200; ++t) {
    DiagramGen gen(th, 2000 + static_cast<std::uint64_t>(t));
    Rng rng(7000 + static_cast<std::uint64_t>(t));
    Diagram f1 = gen.random_diagram(1 + static_cast<int>(rng.uniform_int(0, 2)),
                                    false);
    Diagram f2 = gen.random_diagram(1 + static_cast<int>(rng.uniform_int(0, 2)),
                                    false);
    Diagram g1 = continuation(th, f1, rng, 2);
    Diagram g2 = continuation(th, f2, rng, 1);
    Diagram h1 = continuation(th, g1, rng, 1);

    bool ok =
        equal(compose_seq(f1, identity(th, f1.dom())), f1) &&
        equal(compose_seq(identity(th, f1.cod()), f1), f1) &&
        equal(compose_par(f1, empty), f1) && equal(compose_par(empty, f1), f1) &&
        equal(compose_seq(h1, compose_seq(g1, f1)),
              compose_seq(compose_seq(h1, g1), f1)) &&
        equal(compose_par(compose_par(f1, f2), g1),
              compose_par(f1, compose_par(f2, g1))) &&
        equal(compose_par(compose_seq(g1, f1), compose_seq(g2, f2)),
              compose_seq(compose_par(g1, g2), compose_par(f1, f2)));
    if (!ok) {
      detail = "unit/assoc/interchange failed at iteration " +
               std::to_string(t);
      return false;
    }

    // Naturality: sliding f1 x f2 through the block swap.
    Diagram lhs = compose_seq(block_swap(th, f1.cod().size(), f2.cod().size()),
                              compose_par(f1, f2));
    Diagram rhs = compose_seq(compose_par(f2, f1),
                              block_swap(th, f1.dom().size(), f2.dom().size()));
    if (!equal(lhs, rhs)) {
      detail = "swap naturality failed at iteration " + std::to_string(t);
      return false;
    }
  }
  return true;
}

// 3. Circuit recognition agrees with a brute-force oracle on 500 random
// diagrams, and layer decomposition round-trips on every circuit.
bool crit_circuit(std::string& detail) {
  TheoryPtr th = std_theory();
  int circuits = 0;
  int non_circuits = 0;
  for (int t = 0; t < 500; ++t) {
    DiagramGen gen(th, 3000 + static_cast<std::uint64_t>(t));
    Rng rng(4000 + static_cast<std::uint64_t>(t));
    Diagram d = gen.random_diagram(
        1 + static_cast<int>(rng.uniform_int(0, 4)), true);
    bool expect = !has_cup_or_cap(d) && !has_cycle_oracle(d);
    if (is_circuit(d) != expect) {
      detail = "is_circuit disagrees with the oracle at seed " +
               std::to_string(3000 + t);
      return false;
    }
    if (expect) {
      ++circuits;
      Diagram rt = recompose(th, d.dom(), layer_decompose(d));
      if (!equal(rt, d)) {
        detail = "layer round trip failed at seed " + std::to_string(3000 + t);
        return false;
      }
    } else {
      ++non_circuits;
    }
  }
  if (circuits < 30 || non_circuits < 30) {
    detail = "sample is lopsided: " + std::to_string(circuits) +
             " circuits vs " + std::to_string(non_circuits);
    return false;
  }
  return true;
}

// 4. Structural equality implies numeric equality, and structurally distinct
// pairs with different semantics are caught by a few random models.
bool crit_completeness(std::string& detail) {
  TheoryPtr th = std_theory();
  TypeId a = th->type("A");
  for (int t = 0; t < 100; ++t) {
    DiagramGen gen(th, 5000 + static_cast<std::uint64_t>(t));
    Rng rng(6000 + static_cast<std::uint64_t>(t));
    Diagram x = gen.random_diagram(
        1 + static_cast<int>(rng.uniform_int(0, 2)), true);
    Diagram y = x;
    if (t % 5 < 3) {
      // A transformation that is the identity by theorem.
      switch (rng.uniform_int(0, 3)) {
        case 0: y = dagger(dagger(x)); break;
        case 1: y = transpose(transpose(x)); break;
        case 2: y = conjugate(conjugate(x)); break;
        default:
          y = compose_seq(identity(th, x.cod()),
                          compose_seq(x, identity(th, x.dom())));
          break;
      }
      if (!equal(x, y)) {
        detail = "identity transformation not recognized at iteration " +
                 std::to_string(t);
        return false;
      }
    } else {
      // An unrelated diagram; the implication is checked only if the pair
      // happens to be structurally equal.
      y = gen.random_diagram(1 + static_cast<int>(rng.uniform_int(0, 2)),
                             true);
    }
    if (!equal(x, y)) continue;
    for (int k = 0; k < 20; ++k) {
      CModel m = random_model(
          th, 1, 4, 8000 + static_cast<std::uint64_t>(t) * 20 + k);
      double dev = max_deviation(evaluate(x, m), evaluate(y, m));
      if (dev > 1e-9) {
        detail = "equal pair deviates by " + std::to_string(dev) +
                 " at iteration " + std::to_string(t);
        return false;
      }
    }
  }

  // Distinguishing power: swap vs identity and f vs a rescaled f must fall
  // within three random models at generic dimensions.
  Diagram sw = swap_wires(th, a, a);
  Diagram id2 = identity(th, {a, a});
  EquivResult r1 = prob_equiv(sw, id2, 3, 17, 1e-9, 2, 4);
  if (r1.equivalent || r1.trials_run > 3) {
    detail = "swap vs identity not distinguished in 3 trials";
    return false;
  }
  Diagram u = box(th, "u");
  Diagram scaled = compose_par(box(th, "k"), u);
  EquivResult r2 = prob_equiv(u, scaled, 3, 17, 1e-9, 2, 4);
  if (r2.equivalent || r2.trials_run > 3) {
    detail = "f vs scalar-dressed f not distinguished in 3 trials";
    return false;
  }
  return true;
}

// 5. Doubling is functorial, erases global phases, and sends state/effect
// pairs to Born-rule scalars.
bool crit_doubling(std::string& detail) {
  TheoryPtr th = std_theory();

  for (int t = 0; t < 50; ++t) {
    DiagramGen gen(th, 9000 + static_cast<std::uint64_t>(t));
    Rng rng(9500 + static_cast<std::uint64_t>(t));
    Diagram f = gen.random_diagram(
        1 + static_cast<int>(rng.uniform_int(0, 2)), false);
    Diagram g = continuation(th, f, rng, 2);
    Diagram h = gen.random_diagram(
        1 + static_cast<int>(rng.uniform_int(0, 2)), false);
    bool ok = equal(double_diagram(compose_seq(g, f)),
                    compose_seq(double_diagram(g), double_diagram(f))) &&
              equal(double_diagram(compose_par(f, h)),
                    compose_par(double_diagram(f), double_diagram(h))) &&
              equal(double_diagram(dagger(f)), dagger(double_diagram(f)));
    if (!ok) {
      detail = "functoriality failed at iteration " + std::to_string(t);
      return false;
    }
  }

  // Global phases: dressing a box with a unit-modulus scalar does not move
  // its double.
  GenId phase = th->gen("k");
  for (int t = 0; t < 50; ++t) {
    CModel m = random_model(th, 2, 4, 11000 + static_cast<std::uint64_t>(t));
    Diagram u = box(th, "u");
    Diagram dressed = double_diagram(compose_par(box(th, "k"), u));
    Diagram bare = double_diagram(u);
    CTensor want = evaluate(bare, m);
    for (int p = 0; p < 10; ++p) {
      double theta = 2.0 * M_PI * p / 10.0;
      m.gens[phase].data[0] = Complex(std::cos(theta), std::sin(theta));
      double dev = max_deviation(evaluate(dressed, m), want);
      if (dev > 1e-9) {
        detail = "phase " + std::to_string(p) + " shifts the double by " +
                 std::to_string(dev);
        return false;
      }
    }
  }

  // Born rule: the doubled pairing of a state with an effect is |<e|s>|^2.
  Diagram pairing = compose_seq(box(th, "e"), box(th, "s"));
  Diagram doubled = double_diagram(pairing);
  for (int t = 0; t < 200; ++t) {
    CModel m = random_model(th, 1, 4, 12000 + static_cast<std::uint64_t>(t));
    Complex b = evaluate(doubled, m).data[0];
    Complex raw = evaluate(pairing, m).data[0];
    double want = std::norm(raw);
    if (b.real() < -1e-9 || std::abs(b.imag()) > 1e-9 ||
        std::abs(b.real() - want) > 1e-9 * std::max(1.0, want)) {
      detail = "Born scalar off at iteration " + std::to_string(t);
      return false;
    }
  }
  return true;
}

// 6. Teleportation: the correction-free protocol is structurally the
// identity; a unitary error on the channel is undone numerically by its
// conjugate, at dimensions 2 and 3.
bool crit_teleport(std::string& detail) {
  for (int dim = 2; dim <= 3; ++dim) {
    Theory t;
    TypeId a = t.add_type("A");
    t.add_generator("err", {a}, {a});
    TheoryPtr th = freeze(std::move(t));
    Diagram id1 = identity(th, {a});
    Diagram cupA = cup(th, a);
    Diagram capA = cap(th, a);

    Diagram protocol =
        compose_seq(compose_par(id1, capA), compose_par(cupA, id1));
    if (!equal(protocol, id1)) {
      detail = "protocol without correction is not the identity";
      return false;
    }
    if (!q_equal(QDiagram::doubled(protocol), QDiagram::q_identity(th, {a}))) {
      detail = "doubled protocol is not the identity channel";
      return false;
    }

    CModel m = random_model(th, dim, dim, 42 + static_cast<std::uint64_t>(dim));
    Rng rng(99 + static_cast<std::uint64_t>(dim));
    CMatrix q = random_isometry(dim, dim, rng);
    const GeneratorSig& sig = th->generator(th->gen("err"));
    CTensor te = CTensor::zeros(m.shape_of(sig), sig.cod.size());
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) te.at({r, c}) = q(r, c);
    }
    m.gens[th->gen("err")] = te;
    m.validate();

    Diagram pair_err = compose_seq(compose_par(id1, box(th, "err")), cupA);
    Diagram passed =
        compose_seq(compose_par(id1, capA), compose_par(pair_err, id1));
    Diagram corrected = compose_seq(box(th, "err", kConjugate), passed);
    double dev = max_deviation(evaluate(corrected, m), evaluate(id1, m));
    if (dev > 1e-9) {
      detail = "corrected protocol deviates by " + std::to_string(dev) +
               " at dimension " + std::to_string(dim);
      return false;
    }
  }
  return true;
}

// 7. A pure box is causal exactly when it is an isometry, and a causal
// effect is the discard covector.
bool crit_causality(std::string& detail) {
  struct Shape {
    int din;
    int dout;
  };
  for (Shape s : {Shape{2, 2}, Shape{2, 3}, Shape{3, 2}}) {
    int causal_seen = 0;
    int noncausal_seen = 0;
    for (int t = 0; t < 100; ++t) {
      Rng rng(13000 + static_cast<std::uint64_t>(s.din * 10 + s.dout) * 100 +
              static_cast<std::uint64_t>(t));
      CMatrix f;
      if (t % 3 == 0 && s.dout >= s.din) {
        f = random_isometry(s.dout, s.din, rng);
      } else if (t % 3 == 1 && s.dout >= s.din) {
        f = random_isometry(s.dout, s.din, rng) * 1.25;
      } else {
        f = random_gaussian_matrix(s.dout, s.din, rng);
      }
      BoxFixture bf = matrix_box(f);
      PureCausalReport rep =
          check_theorem_pure_causal(bf.diagram, bf.model, 1e-9);
      if (!rep.consistent) {
        detail = "causal/isometry mismatch for shape " +
                 std::to_string(s.din) + "->" + std::to_string(s.dout) +
                 " at iteration " + std::to_string(t);
        return false;
      }
      (rep.causal ? causal_seen : noncausal_seen) += 1;
    }
    if (noncausal_seen == 0) {
      detail = "no non-causal sample for a shape";
      return false;
    }
    if (s.dout >= s.din && causal_seen == 0) {
      detail = "no causal sample for an isometry-admitting shape";
      return false;
    }
    if (s.dout < s.din && causal_seen != 0) {
      detail = "claimed a causal box where no isometry exists";
      return false;
    }
  }

  // Uniqueness of the causal effect: every causal discard-like channel has
  // the trace covector as its tensor.
  for (int t = 0; t < 50; ++t) {
    Rng rng(14000 + static_cast<std::uint64_t>(t));
    int da = 2 + t % 2;
    int de = da + t % 3;
    Theory th0;
    TypeId a = th0.add_type("A");
    TypeId e = th0.add_type("E");
    th0.add_generator("viso", {a}, {e});
    TheoryPtr th = freeze(std::move(th0));
    CModel m;
    m.theory = th;
    m.dims.assign(2, 0);
    m.dims[a] = da;
    m.dims[e] = de;
    CMatrix v = random_isometry(de, da, rng);
    const GeneratorSig& sig = th->generator(th->gen("viso"));
    CTensor tv = CTensor::zeros(m.shape_of(sig), sig.cod.size());
    for (int r = 0; r < de; ++r) {
      for (int c = 0; c < da; ++c) tv.at({r, c}) = v(r, c);
    }
    m.gens = {std::move(tv)};
    m.validate();

    QDiagram effect = QDiagram::purification(box(th, "viso"), 1);
    if (!is_causal(effect, m, 1e-9)) {
      detail = "isometry-dilated effect not causal at iteration " +
               std::to_string(t);
      return false;
    }
    CTensor ct = channel_tensor(effect, m);
    for (int i = 0; i < da; ++i) {
      for (int j = 0; j < da; ++j) {
        Complex want = i == j ? Complex(1, 0) : Complex(0, 0);
        if (std::abs(ct.at({i, j}) - want) > 1e-9) {
          detail = "causal effect differs from discard at iteration " +
                   std::to_string(t);
          return false;
        }
      }
    }
  }
  return true;
}

// 8. Stinespring dilation of random CPTP channels: the dilation is an
// isometry and reproduces the channel.
bool crit_stinespring(std::string& detail) {
  for (int t = 0; t < 50; ++t) {
    Rng rng(15000 + static_cast<std::uint64_t>(t));
    int din = 1 + static_cast<int>(rng.uniform_int(0, 2));
    int dout = 1 + static_cast<int>(rng.uniform_int(0, 2));
    // Trace preservation needs the stacked Kraus matrix to have full column
    // rank, so the set must hold at least ceil(din / dout) operators.
    int count = std::max((din + dout - 1) / dout,
                         1 + static_cast<int>(rng.uniform_int(0, 3)));
    std::vector<CMatrix> ks = random_kraus(din, dout, count, rng);
    ChannelFixture ch = kraus_channel(ks);
    Stinespring st = stinespring(ch.channel, ch.model);

    // Independent isometry check on the returned matrix.
    for (int a1 = 0; a1 < din; ++a1) {
      for (int a2 = 0; a2 < din; ++a2) {
        Complex acc = 0.0;
        for (std::int64_t b = 0; b < st.dim_out; ++b) {
          for (std::int64_t e = 0; e < st.env_dim; ++e) {
            acc += std::conj(st.at(b, e, a1)) * st.at(b, e, a2);
          }
        }
        Complex want = a1 == a2 ? Complex(1, 0) : Complex(0, 0);
        if (std::abs(acc - want) > 1e-9) {
          detail = "V+V is not the identity at iteration " + std::to_string(t);
          return false;
        }
      }
    }

    // Reconstruction: the dilation's Kraus slices present the same Choi
    // matrix as the original set.
    KrausSet from_v;
    from_v.dim_in = din;
    from_v.dim_out = dout;
    for (std::int64_t e = 0; e < st.env_dim; ++e) {
      std::vector<Complex> op(static_cast<std::size_t>(din) * dout);
      for (int b = 0; b < dout; ++b) {
        for (int a1 = 0; a1 < din; ++a1) {
          op[static_cast<std::size_t>(b) * din + a1] = st.at(b, e, a1);
        }
      }
      from_v.ops.push_back(std::move(op));
    }
    ChoiMatrix got = choi_from_kraus(from_v);
    ChoiMatrix want = choi(ch.channel, ch.model);
    double worst = 0;
    for (std::int64_t i = 0; i < want.dim(); ++i) {
      for (std::int64_t j = 0; j < want.dim(); ++j) {
        worst = std::max(worst, std::abs(got.at(i, j) - want.at(i, j)));
      }
    }
    if (worst > 1e-8) {
      detail = "Choi reconstruction off by " + std::to_string(worst) +
               " at iteration " + std::to_string(t);
      return false;
    }
  }
  return true;
}

// 9. No-signalling holds for random causal bipartite scenarios and is
// refused (with a failing factorization) for a trace-increasing local map.
bool crit_no_signalling(std::string& detail) {
  for (int t = 0; t < 50; ++t) {
    testing::SignallingScenario sc = signalling_scenario(
        16000 + static_cast<std::uint64_t>(t), t % 2 == 1, t % 4 >= 2);
    if (!check_no_signalling(sc.rho, sc.phiA, sc.phiB, sc.model, 1e-8)) {
      detail = "a causal scenario signals at iteration " + std::to_string(t);
      return false;
    }
  }
  for (int t = 0; t < 5; ++t) {
    testing::SignallingScenario sc =
        signalling_scenario(17000 + static_cast<std::uint64_t>(t), false,
                            false);
    bool refused = false;
    try {
      check_no_signalling(sc.rho, sc.phiA_bad, sc.phiB, sc.model, 1e-8);
    } catch (const CausalityError&) {
      refused = true;
    }
    FactorizationReport rep = check_signalling_factorization(
        sc.rho, sc.phiA_bad, sc.phiB, sc.model, 1e-8);
    if (!refused || rep.factorizes) {
      detail = "trace-increasing map passed at iteration " + std::to_string(t);
      return false;
    }
  }
  return true;
}

// 10. Basis copying is causal but is not broadcasting at dimension 2; the
// dimension-1 candidate passes both marginal equations.
bool crit_broadcast(std::string& detail) {
  auto copy_fixture = [](std::int64_t dim) {
    Theory t;
    TypeId a = t.add_type("A");
    t.add_generator("copy", {a}, {a, a});
    TheoryPtr th = freeze(std::move(t));
    CModel m;
    m.theory = th;
    m.dims.assign(1, dim);
    const GeneratorSig& sig = th->generator(th->gen("copy"));
    CTensor tc = CTensor::zeros(m.shape_of(sig), sig.cod.size());
    for (std::int64_t i = 0; i < dim; ++i) tc.at({i, i, i}) = Complex(1, 0);
    m.gens = {std::move(tc)};
    m.validate();
    return std::pair<TheoryPtr, CModel>(th, std::move(m));
  };

  auto [th2, m2] = copy_fixture(2);
  QDiagram delta2 = QDiagram::doubled(box(th2, "copy"));
  if (!is_causal(delta2, m2, 1e-9)) {
    detail = "basis copy at dimension 2 is not causal";
    return false;
  }
  BroadcastReport rep = check_broadcast(delta2, m2, 1e-9);
  if (rep.left_marginal_ok || rep.right_marginal_ok || rep.left_dev < 0.49 ||
      rep.right_dev < 0.49) {
    detail = "dimension-2 copy slipped past the marginal checks";
    return false;
  }

  // Coherence witness: copying then discarding one output dephases, so the
  // off-diagonal of a balanced superposition moves by 1/2.
  TypeId a2 = th2->type("A");
  QDiagram keep_left = q_compose_seq(
      q_compose_par(QDiagram::q_identity(th2, {a2}), QDiagram::discard(th2, a2)),
      delta2);
  CTensor plus = CTensor::zeros({2, 2}, 1);
  for (std::int64_t i = 0; i < 2; ++i) {
    for (std::int64_t j = 0; j < 2; ++j) plus.at({i, j}) = Complex(0.5, 0);
  }
  CTensor out = apply_channel(channel_tensor(keep_left, m2), plus);
  double discrepancy = std::abs(plus.at({0, 1}) - out.at({0, 1}));
  if (discrepancy < 0.49) {
    detail = "coherence discrepancy is only " + std::to_string(discrepancy);
    return false;
  }

  auto [th1, m1] = copy_fixture(1);
  BroadcastReport trivial =
      check_broadcast(QDiagram::doubled(box(th1, "copy")), m1, 1e-9);
  if (!trivial.left_marginal_ok || !trivial.right_marginal_ok) {
    detail = "dimension-1 copy should broadcast";
    return false;
  }
  return true;
}

// 11. The boolean counterexample is exact: the witness relation is not
// separable, yet composing it with its converse is.
bool crit_rel(std::string& detail) {
  RelDaggerReport rep = check_rel_dagger_axiom();
  if (rep.r_separable || !rep.composite_separable || !rep.axiom_violated) {
    detail = "verdicts are wrong";
    return false;
  }
  auto entry = [&](const BTensor& t, std::int64_t r, std::int64_t c) {
    return t.at({r, c});
  };
  bool r_right = entry(rep.r, 0, 0) && !entry(rep.r, 0, 1) &&
                 entry(rep.r, 1, 0) && entry(rep.r, 1, 1);
  bool comp_full = entry(rep.composite, 0, 0) && entry(rep.composite, 0, 1) &&
                   entry(rep.composite, 1, 0) && entry(rep.composite, 1, 1);
  if (!r_right || !comp_full) {
    detail = "counterexample tensors are wrong";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    bool (*run)(std::string&);
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "yanking: four wire equations, structural and 100 models at 1e-9",
       crit_yanking, 5.0},
      {2, "monoidal laws: units, associativity, interchange, swap axioms "
          "on 200 random diagrams",
       crit_smc, 10.0},
      {3, "circuits: recognition matches the oracle on 500 diagrams, "
          "decomposition round-trips",
       crit_circuit, 0.0},
      {4, "completeness: structural equality is numeric on 100 pairs x 20 "
          "models, distinctions in <=3 trials",
       crit_completeness, 0.0},
      {5, "doubling: functorial, phase-erasing, Born scalars positive "
          "(tol 1e-9)",
       crit_doubling, 0.0},
      {6, "teleportation: identity structurally and to 1e-9 at dimensions "
          "2 and 3",
       crit_teleport, 0.0},
      {7, "causality: pure causal boxes are exactly isometries; causal "
          "effects are discards (1e-9)",
       crit_causality, 0.0},
      {8, "stinespring: 50 random channels dilate to isometries (1e-9), "
          "reconstruct to 1e-8",
       crit_stinespring, 30.0},
      {9, "no-signalling: 50 causal scenarios factorize (1e-8); "
          "trace-increasing maps are refused",
       crit_no_signalling, 0.0},
      {10, "broadcast: basis copy fails marginals at dimension 2 "
           "(discrepancy >= 0.49), passes at 1",
       crit_broadcast, 0.0},
      {11, "relations: converse-composite counterexample holds exactly",
       crit_rel, 0.0},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    std::string det;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(det);
    } catch (const std::exception& ex) {
      det = std::string("exception: ") + ex.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      ok = false;
      std::ostringstream over;
      over << "over time budget of " << c.budget_seconds << "s";
      det = det.empty() ? over.str() : det + "; " + over.str();
    }
    all_ok = all_ok && ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.number
              << ". " << c.name << "  (" << std::fixed << std::setprecision(2)
              << secs << "s)";
    if (!ok && !det.empty()) std::cout << "  -- " << det;
    std::cout << "\n";
  }
  std::cout << (all_ok ? "acceptance: all criteria passed"
                       : "acceptance: FAILURES above")
            << "\n";
  return all_ok ? 0 : 1;
}
