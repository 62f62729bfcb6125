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

#include "procflow/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "procflow/errors.hpp"
#include "procflow/theory.hpp"

namespace procflow {
namespace {

// Multiplies the vector by a unit scalar making its largest-magnitude entry
// (first one on ties) positive real, for reproducible spectral output.
void phase_fix(Eigen::VectorXcd& v) {
  int best = -1;
  double best_mag = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    if (a > best_mag) {
      best_mag = a;
      best = i;
    }
  }
  if (best < 0) return;
  v *= std::conj(v(best)) / best_mag;
}

Eigen::MatrixXcd choi_to_eigen(const ChoiMatrix& c) {
  const std::int64_t n = c.dim();
  Eigen::MatrixXcd out(n, n);
  for (std::int64_t r = 0; r < n; ++r) {
    for (std::int64_t col = 0; col < n; ++col) out(r, col) = c.at(r, col);
  }
  return out;
}

// Flattens a square tensor (first half of the axes rows, second half
// columns) into a matrix.
Eigen::MatrixXcd square_tensor_to_matrix(const CTensor& rho) {
  if (rho.rank() % 2 != 0) {
    throw ShapeError("density tensor must have an even number of axes");
  }
  const std::size_t half = rho.rank() / 2;
  std::int64_t d = 1;
  for (std::size_t k = 0; k < half; ++k) {
    if (rho.shape[k] != rho.shape[half + k]) {
      throw ShapeError("density tensor is not square");
    }
    d *= rho.shape[k];
  }
  Eigen::MatrixXcd out(d, d);
  for (std::int64_t r = 0; r < d; ++r) {
    for (std::int64_t c = 0; c < d; ++c) {
      out(r, c) = rho.data[static_cast<std::size_t>(r * d + c)];
    }
  }
  return out;
}

void require_bipartite(const CTensor& rho) {
  if (rho.rank() != 4 || rho.shape[0] != rho.shape[2] ||
      rho.shape[1] != rho.shape[3]) {
    throw ShapeError(
        "expected a bipartite density tensor of shape [dA, dB, dA, dB]");
  }
}

// Whether a boolean matrix factors as column times row.
bool bool_separable(const BTensor& t) {
  const std::int64_t rows = t.shape[0];
  const std::int64_t cols = t.shape[1];
  for (std::uint32_t u = 0; u < (1u << rows); ++u) {
    for (std::uint32_t w = 0; w < (1u << cols); ++w) {
      bool ok = true;
      for (std::int64_t b = 0; b < rows && ok; ++b) {
        for (std::int64_t a = 0; a < cols && ok; ++a) {
          std::uint8_t want = t.data[static_cast<std::size_t>(b * cols + a)];
          std::uint8_t got = ((u >> b) & 1u) & ((w >> a) & 1u);
          ok = want == got;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

CTensor channel_tensor(const QDiagram& f, const CModel& m) {
  return evaluate(f.base(), m);
}

CTensor apply_channel(const CTensor& chan, const CTensor& rho) {
  if (chan.rank() != 4 || rho.rank() != 2) {
    throw ShapeError("apply_channel expects a rank-4 channel and a matrix");
  }
  const std::int64_t db = chan.shape[0];
  const std::int64_t da = chan.shape[2];
  if (chan.shape[1] != db || chan.shape[3] != da || rho.shape[0] != da ||
      rho.shape[1] != da) {
    throw ShapeError("apply_channel: dimensions do not line up");
  }
  CTensor out = CTensor::zeros({db, db}, 1);
  for (std::int64_t b = 0; b < db; ++b) {
    for (std::int64_t b2 = 0; b2 < db; ++b2) {
      Complex acc = 0.0;
      for (std::int64_t a = 0; a < da; ++a) {
        for (std::int64_t a2 = 0; a2 < da; ++a2) {
          acc += chan.at({b2, b, a2, a}) * rho.at({a, a2});
        }
      }
      out.at({b, b2}) = acc;
    }
  }
  return out;
}

ChoiMatrix choi(const QDiagram& f, const CModel& m) {
  CTensor t = channel_tensor(f, m);
  const std::size_t n_out = f.qcod().size();
  const std::size_t n_in = f.qdom().size();
  ChoiMatrix c;
  c.dim_in = m.dims_product(f.qdom());
  c.dim_out = m.dims_product(f.qcod());
  c.m.assign(static_cast<std::size_t>(c.dim() * c.dim()), Complex(0.0));

  std::vector<std::int64_t> coord(t.rank(), 0);
  if (t.size() == 0) return c;
  for (;;) {
    std::int64_t b2 = 0, b = 0, a2 = 0, a = 0;
    for (std::size_t j = 0; j < n_out; ++j) {
      std::int64_t d = t.shape[2 * j];
      b2 = b2 * d + coord[2 * j];
      b = b * d + coord[2 * j + 1];
    }
    for (std::size_t i = 0; i < n_in; ++i) {
      std::int64_t d = t.shape[2 * n_out + 2 * i];
      a2 = a2 * d + coord[2 * n_out + 2 * i];
      a = a * d + coord[2 * n_out + 2 * i + 1];
    }
    c.at(a * c.dim_out + b, a2 * c.dim_out + b2) = t.at(coord);

    std::size_t k = coord.size();
    while (k > 0 && ++coord[k - 1] == t.shape[k - 1]) coord[--k] = 0;
    if (k == 0) break;
  }
  return c;
}

KrausSet kraus_from_choi(const ChoiMatrix& c, double cutoff) {
  const std::int64_t n = c.dim();
  if (n <= 0 || c.m.size() != static_cast<std::size_t>(n * n)) {
    throw ShapeError("kraus_from_choi: malformed choi matrix");
  }
  Eigen::MatrixXcd mat = choi_to_eigen(c);
  double asym = 0.0;
  for (std::int64_t r = 0; r < n; ++r) {
    for (std::int64_t col = 0; col < n; ++col) {
      asym = std::max(asym, std::abs(mat(r, col) - std::conj(mat(col, r))));
    }
  }
  if (asym > 1e-9) {
    throw NotCompletelyPositiveError(
        "choi matrix is not hermitian (asymmetry " + std::to_string(asym) +
        ")");
  }
  Eigen::MatrixXcd herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) {
    throw Error("kraus_from_choi: eigendecomposition failed");
  }

  KrausSet k;
  k.dim_in = c.dim_in;
  k.dim_out = c.dim_out;
  for (std::int64_t i = n - 1; i >= 0; --i) {
    double lam = es.eigenvalues()(i);
    if (lam < -cutoff) throw NotCompletelyPositiveError(lam);
    if (lam <= cutoff) continue;
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    phase_fix(v);
    std::vector<Complex> op(
        static_cast<std::size_t>(c.dim_out * c.dim_in));
    const double s = std::sqrt(lam);
    for (std::int64_t a = 0; a < c.dim_in; ++a) {
      for (std::int64_t b = 0; b < c.dim_out; ++b) {
        op[static_cast<std::size_t>(b * c.dim_in + a)] =
            s * v(a * c.dim_out + b);
      }
    }
    k.ops.push_back(std::move(op));
  }
  if (k.ops.empty()) {
    k.ops.emplace_back(static_cast<std::size_t>(c.dim_out * c.dim_in),
                       Complex(0.0));
  }
  return k;
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  ChoiMatrix c;
  c.dim_in = k.dim_in;
  c.dim_out = k.dim_out;
  c.m.assign(static_cast<std::size_t>(c.dim() * c.dim()), Complex(0.0));
  for (const auto& op : k.ops) {
    for (std::int64_t a = 0; a < c.dim_in; ++a) {
      for (std::int64_t b = 0; b < c.dim_out; ++b) {
        for (std::int64_t a2 = 0; a2 < c.dim_in; ++a2) {
          for (std::int64_t b2 = 0; b2 < c.dim_out; ++b2) {
            c.at(a * c.dim_out + b, a2 * c.dim_out + b2) +=
                op[static_cast<std::size_t>(b * c.dim_in + a)] *
                std::conj(op[static_cast<std::size_t>(b2 * c.dim_in + a2)]);
          }
        }
      }
    }
  }
  return c;
}

Stinespring stinespring(const QDiagram& f, const CModel& m, double cutoff) {
  if (!is_causal(f, m, 1e-9)) {
    throw CausalityError("stinespring requires a causal channel");
  }
  ChoiMatrix c = choi(f, m);
  KrausSet k = kraus_from_choi(c, cutoff);

  Stinespring st;
  st.dim_in = k.dim_in;
  st.dim_out = k.dim_out;
  st.env_dim = static_cast<std::int64_t>(k.ops.size());
  st.v.assign(static_cast<std::size_t>(st.dim_out * st.env_dim * st.dim_in),
              Complex(0.0));
  for (std::int64_t e = 0; e < st.env_dim; ++e) {
    for (std::int64_t b = 0; b < st.dim_out; ++b) {
      for (std::int64_t a = 0; a < st.dim_in; ++a) {
        st.at(b, e, a) =
            k.ops[static_cast<std::size_t>(e)]
                 [static_cast<std::size_t>(b * st.dim_in + a)];
      }
    }
  }

  double iso_dev = 0.0;
  for (std::int64_t a = 0; a < st.dim_in; ++a) {
    for (std::int64_t a2 = 0; a2 < st.dim_in; ++a2) {
      Complex g = 0.0;
      for (std::int64_t b = 0; b < st.dim_out; ++b) {
        for (std::int64_t e = 0; e < st.env_dim; ++e) {
          g += std::conj(st.at(b, e, a)) * st.at(b, e, a2);
        }
      }
      iso_dev = std::max(iso_dev, std::abs(g - (a == a2 ? 1.0 : 0.0)));
    }
  }
  if (iso_dev > 1e-9) {
    throw Error("stinespring: dilation is not an isometry (deviation " +
                std::to_string(iso_dev) + ")");
  }

  ChoiMatrix back = choi_from_kraus(k);
  double rec_dev = 0.0;
  for (std::size_t i = 0; i < c.m.size(); ++i) {
    rec_dev = std::max(rec_dev, std::abs(back.m[i] - c.m[i]));
  }
  if (rec_dev > 1e-8) {
    throw Error("stinespring: reconstruction mismatch (deviation " +
                std::to_string(rec_dev) + ")");
  }
  return st;
}

bool is_causal(const QDiagram& f, const CModel& m, double tol) {
  const TheoryPtr& th = f.theory();
  QDiagram traced =
      q_compose_seq(QDiagram::discard_all(th, f.qcod()), f);
  CTensor lhs = evaluate(traced.base(), m);
  CTensor rhs = evaluate(QDiagram::discard_all(th, f.qdom()).base(), m);
  return numeric_equal(lhs, rhs, tol);
}

bool is_isometry(const Diagram& f, const CModel& m, double tol) {
  CTensor t = evaluate(f, m);
  std::int64_t rows = 1, cols = 1;
  for (std::size_t k = 0; k < t.rank(); ++k) {
    (k < t.cod_rank ? rows : cols) *= t.shape[k];
  }
  for (std::int64_t a = 0; a < cols; ++a) {
    for (std::int64_t a2 = 0; a2 < cols; ++a2) {
      Complex g = 0.0;
      for (std::int64_t r = 0; r < rows; ++r) {
        g += std::conj(t.data[static_cast<std::size_t>(r * cols + a)]) *
             t.data[static_cast<std::size_t>(r * cols + a2)];
      }
      if (std::abs(g - (a == a2 ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

bool is_unitary(const Diagram& f, const CModel& m, double tol) {
  if (!is_isometry(f, m, tol)) return false;
  CTensor t = evaluate(f, m);
  std::int64_t rows = 1, cols = 1;
  for (std::size_t k = 0; k < t.rank(); ++k) {
    (k < t.cod_rank ? rows : cols) *= t.shape[k];
  }
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t r2 = 0; r2 < rows; ++r2) {
      Complex g = 0.0;
      for (std::int64_t a = 0; a < cols; ++a) {
        g += t.data[static_cast<std::size_t>(r * cols + a)] *
             std::conj(t.data[static_cast<std::size_t>(r2 * cols + a)]);
      }
      if (std::abs(g - (r == r2 ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

PureCausalReport check_theorem_pure_causal(const Diagram& f, const CModel& m,
                                           double tol) {
  PureCausalReport rep;
  rep.causal = is_causal(QDiagram::doubled(f), m, tol);
  rep.isometry = is_isometry(f, m, tol);
  rep.consistent = rep.causal == rep.isometry;
  return rep;
}

CTensor reduced_state(const CTensor& rho, Side keep) {
  require_bipartite(rho);
  const std::int64_t da = rho.shape[0];
  const std::int64_t db = rho.shape[1];
  if (keep == Side::Left) {
    CTensor out = CTensor::zeros({da, da}, 1);
    for (std::int64_t a = 0; a < da; ++a) {
      for (std::int64_t a2 = 0; a2 < da; ++a2) {
        Complex acc = 0.0;
        for (std::int64_t b = 0; b < db; ++b) {
          acc += rho.at({a, b, a2, b});
        }
        out.at({a, a2}) = acc;
      }
    }
    return out;
  }
  CTensor out = CTensor::zeros({db, db}, 1);
  for (std::int64_t b = 0; b < db; ++b) {
    for (std::int64_t b2 = 0; b2 < db; ++b2) {
      Complex acc = 0.0;
      for (std::int64_t a = 0; a < da; ++a) {
        acc += rho.at({a, b, a, b2});
      }
      out.at({b, b2}) = acc;
    }
  }
  return out;
}

double purity_defect(const CTensor& rho) {
  Eigen::MatrixXcd mat = square_tensor_to_matrix(rho);
  if (mat.rows() == 1) return 0.0;
  Eigen::MatrixXcd herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) {
    throw Error("purity_defect: eigendecomposition failed");
  }
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    mags.push_back(std::abs(es.eigenvalues()(i)));
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  if (mags[0] <= 0.0) return 0.0;
  return mags[1] / mags[0];
}

SplitResult split_if_pure_marginal(const CTensor& rho, double tol) {
  require_bipartite(rho);
  const std::int64_t da = rho.shape[0];
  const std::int64_t db = rho.shape[1];
  SplitResult res;

  CTensor right = reduced_state(rho, Side::Right);
  if (purity_defect(right) > tol) return res;

  Eigen::MatrixXcd mat = square_tensor_to_matrix(right);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (mat + mat.adjoint()));
  Eigen::VectorXcd phi = es.eigenvectors().col(db - 1);
  phase_fix(phi);

  res.applicable = true;
  res.right.assign(phi.data(), phi.data() + db);
  res.left = CTensor::zeros({da, da}, 1);
  for (std::int64_t a = 0; a < da; ++a) {
    for (std::int64_t a2 = 0; a2 < da; ++a2) {
      Complex acc = 0.0;
      for (std::int64_t b = 0; b < db; ++b) {
        for (std::int64_t b2 = 0; b2 < db; ++b2) {
          acc += std::conj(phi(b)) * rho.at({a, b, a2, b2}) * phi(b2);
        }
      }
      res.left.at({a, a2}) = acc;
    }
  }
  for (std::int64_t a = 0; a < da; ++a) {
    for (std::int64_t b = 0; b < db; ++b) {
      for (std::int64_t a2 = 0; a2 < da; ++a2) {
        for (std::int64_t b2 = 0; b2 < db; ++b2) {
          Complex want =
              res.left.at({a, a2}) * phi(b) * std::conj(phi(b2));
          res.residual = std::max(
              res.residual, std::abs(rho.at({a, b, a2, b2}) - want));
        }
      }
    }
  }
  return res;
}

BroadcastReport check_broadcast(const QDiagram& delta, const CModel& m,
                                double tol) {
  if (delta.qdom().size() != 1 || delta.qcod().size() != 2) {
    throw ShapeError("check_broadcast: channel must map one system to two");
  }
  const TypeId a = delta.qdom()[0];
  if (delta.qcod()[0] != a || delta.qcod()[1] != a) {
    throw ShapeError(
        "check_broadcast: both outputs must match the input type");
  }
  const TheoryPtr& th = delta.theory();
  QDiagram id = QDiagram::q_identity(th, {a});
  QDiagram dis = QDiagram::discard(th, a);

  QDiagram keep_left = q_compose_seq(q_compose_par(id, dis), delta);
  QDiagram keep_right = q_compose_seq(q_compose_par(dis, id), delta);
  CTensor want = channel_tensor(id, m);

  BroadcastReport rep;
  rep.left_dev = max_deviation(channel_tensor(keep_left, m), want);
  rep.right_dev = max_deviation(channel_tensor(keep_right, m), want);
  rep.left_marginal_ok = rep.left_dev <= tol;
  rep.right_marginal_ok = rep.right_dev <= tol;
  return rep;
}

FactorizationReport check_signalling_factorization(const QDiagram& rho,
                                                   const QDiagram& phiA,
                                                   const QDiagram& phiB,
                                                   const CModel& m,
                                                   double tol) {
  if (!rho.qdom().empty() || rho.qcod().size() != 2) {
    throw ShapeError("shared state must have no inputs and two outputs");
  }
  if (phiA.qdom().empty() || phiA.qdom().back() != rho.qcod()[0]) {
    throw ShapeError("phiA must take the first shared system as its last "
                     "input");
  }
  if (phiB.qdom().empty() || phiB.qdom().front() != rho.qcod()[1]) {
    throw ShapeError("phiB must take the second shared system as its first "
                     "input");
  }
  const TheoryPtr& th = rho.theory();
  const TypeId ta = rho.qcod()[0];
  const TypeId tb = rho.qcod()[1];
  TypeList xa(phiA.qdom().begin(), phiA.qdom().end() - 1);
  TypeList xb(phiB.qdom().begin() + 1, phiB.qdom().end());

  QDiagram spread = q_compose_par(
      q_compose_par(QDiagram::q_identity(th, xa), rho),
      QDiagram::q_identity(th, xb));
  QDiagram joint = q_compose_seq(q_compose_par(phiA, phiB), spread);
  QDiagram lhs = q_compose_seq(
      q_compose_par(QDiagram::discard_all(th, phiA.qcod()),
                    QDiagram::q_identity(th, phiB.qcod())),
      joint);

  QDiagram rho_b = q_compose_seq(
      q_compose_par(QDiagram::discard(th, ta),
                    QDiagram::q_identity(th, {tb})),
      rho);
  QDiagram reduced = q_compose_seq(
      phiB, q_compose_par(rho_b, QDiagram::q_identity(th, xb)));
  QDiagram rhs = q_compose_par(QDiagram::discard_all(th, xa), reduced);

  FactorizationReport rep;
  rep.deviation =
      max_deviation(channel_tensor(lhs, m), channel_tensor(rhs, m));
  rep.factorizes = rep.deviation <= tol;
  return rep;
}

bool check_no_signalling(const QDiagram& rho, const QDiagram& phiA,
                         const QDiagram& phiB, const CModel& m, double tol) {
  if (!is_causal(phiA, m, tol)) {
    throw CausalityError("check_no_signalling: phiA is not causal");
  }
  if (!is_causal(phiB, m, tol)) {
    throw CausalityError("check_no_signalling: phiB is not causal");
  }
  return check_signalling_factorization(rho, phiA, phiB, m, tol).factorizes;
}

RelDaggerReport check_rel_dagger_axiom() {
  Theory t;
  TypeId x = t.add_type("X");
  t.add_generator("r", {x}, {x});
  TheoryPtr th = freeze(std::move(t));

  BModel bm;
  bm.theory = th;
  bm.dims = {2};
  BTensor r = BTensor::zeros({2, 2}, 1);
  r.data = {1, 0, 1, 1};  // rows are outputs: relates 0->0, 0->1, 1->1
  bm.gens = {r};

  Diagram rbox = box(th, "r", kOriginal);
  Diagram composite = compose_seq(dagger(rbox), rbox);

  RelDaggerReport rep;
  rep.r = evaluate(rbox, bm);
  rep.composite = evaluate(composite, bm);
  rep.r_separable = bool_separable(rep.r);
  rep.composite_separable = bool_separable(rep.composite);
  rep.axiom_violated = rep.composite_separable && !rep.r_separable;
  return rep;
}

}  // namespace procflow
