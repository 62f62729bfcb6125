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

#include <complex>
#include <cstdint>
#include <vector>

#include "procflow/doubling.hpp"
#include "procflow/evaluate.hpp"
#include "procflow/model.hpp"
#include "procflow/tensor.hpp"

namespace procflow {

using Complex = std::complex<double>;

// Process-state dual of a channel with total input dimension dim_in and
// total output dimension dim_out. Stored as the square matrix
// C[(a,b),(a',b')] = <b| Phi(|a><a'|) |b'> with row index a*dim_out + b,
// in the computational basis of the model.
struct ChoiMatrix {
  std::int64_t dim_in = 0;
  std::int64_t dim_out = 0;
  std::vector<Complex> m;

  std::int64_t dim() const { return dim_in * dim_out; }
  Complex& at(std::int64_t r, std::int64_t c) { return m[r * dim() + c]; }
  const Complex& at(std::int64_t r, std::int64_t c) const {
    return m[r * dim() + c];
  }
};

// Kraus presentation of a completely positive map: rho -> sum K rho K+.
// Each operator is a dim_out x dim_in matrix in row-major order.
struct KrausSet {
  std::int64_t dim_in = 0;
  std::int64_t dim_out = 0;
  std::vector<std::vector<Complex>> ops;
};

// Dilation isometry V from dim_in to dim_out * env_dim, stored row-major
// with row index b * env_dim + e. Discarding the environment of V rho V+
// reproduces the dilated channel.
struct Stinespring {
  std::int64_t dim_in = 0;
  std::int64_t dim_out = 0;
  std::int64_t env_dim = 0;
  std::vector<Complex> v;

  Complex& at(std::int64_t b, std::int64_t e, std::int64_t a) {
    return v[(b * env_dim + e) * dim_in + a];
  }
  const Complex& at(std::int64_t b, std::int64_t e, std::int64_t a) const {
    return v[(b * env_dim + e) * dim_in + a];
  }
};

// The channel as a raw tensor: evaluate(f.base(), m), axes in conjugate and
// original pairs, outputs first.
CTensor channel_tensor(const QDiagram& f, const CModel& m);

// Applies a single-system channel tensor (axes [b_conj, b, a_conj, a]) to a
// density matrix rho[a, a'], returning the output density matrix.
CTensor apply_channel(const CTensor& chan, const CTensor& rho);

// Bends all inputs of f across an entangled pair. Multiple legs are grouped
// by total dimension, row-major over the leg indices.
ChoiMatrix choi(const QDiagram& f, const CModel& m);

// Hermitian eigendecomposition of the Choi matrix; eigenvalues above the
// cutoff become Kraus operators K[b,a] = sqrt(lambda) v[a*dim_out+b], sorted
// by descending eigenvalue with each vector's largest entry made positive
// real. An eigenvalue below -cutoff (or a non-Hermitian input, tol 1e-9)
// raises NotCompletelyPositiveError.
KrausSet kraus_from_choi(const ChoiMatrix& c, double cutoff = 1e-10);

// The Choi matrix a given Kraus set presents; reconstruction oracle for
// kraus_from_choi.
ChoiMatrix choi_from_kraus(const KrausSet& k);

// Dilation of a causal channel: V stacks the Kraus operators over the
// environment index. Raises CausalityError when f is not causal; verifies
// V+V = I within 1e-9 and channel reconstruction within 1e-8 before
// returning.
Stinespring stinespring(const QDiagram& f, const CModel& m,
                        double cutoff = 1e-10);

// Trace preservation: discarding every output of f equals discarding every
// input.
bool is_causal(const QDiagram& f, const CModel& m, double tol = 1e-9);

// F+F = I, and for unitarity FF+ = I as well, on the matrix of f grouped
// rows-by-outputs, columns-by-inputs.
bool is_isometry(const Diagram& f, const CModel& m, double tol = 1e-9);
bool is_unitary(const Diagram& f, const CModel& m, double tol = 1e-9);

// Doubling a plain diagram yields a causal channel exactly when the diagram
// evaluates to an isometry; `consistent` records that the two checks agree.
struct PureCausalReport {
  bool causal = false;
  bool isometry = false;
  bool consistent = false;
};
PureCausalReport check_theorem_pure_causal(const Diagram& f, const CModel& m,
                                           double tol = 1e-9);

// Bipartite density tensors are rank 4 with shape [dA, dB, dA, dB] and
// cod_rank 2: entry (a, b, a', b') is <ab| rho |a'b'>.
enum class Side { Left, Right };

// Partial trace keeping the named side.
CTensor reduced_state(const CTensor& rho, Side keep);

// Spectral test of purity for a density matrix given as a square tensor
// (half the axes row, half column): second-largest eigenvalue magnitude
// over largest, 0 for rank one.
double purity_defect(const CTensor& rho);

// If the right marginal of rho is pure within tol, factor rho as
// left (x) |phi><phi| and return the pieces; `applicable` is false when the
// marginal is mixed. The right factor is a unit vector with deterministic
// phase.
struct SplitResult {
  bool applicable = false;
  CTensor left;
  std::vector<Complex> right;
  double residual = 0.0;
};
SplitResult split_if_pure_marginal(const CTensor& rho, double tol);

// Tests the two broadcast equations for a channel delta from one system to
// two copies of it: discarding either output must leave the identity
// channel. Deviations are reported for diagnostics.
struct BroadcastReport {
  bool left_marginal_ok = false;
  bool right_marginal_ok = false;
  double left_dev = 0.0;
  double right_dev = 0.0;
};
BroadcastReport check_broadcast(const QDiagram& delta, const CModel& m,
                                double tol);

// Shared-state scenario: rho is a state on [A, B]; phiA consumes its extra
// inputs plus A (A last), phiB consumes B plus its extra inputs (B first).
// Checks whether discarding phiA's outputs factorizes the composite into
// (discard of phiA's extra inputs) (x) (phiB applied to the B marginal).
struct FactorizationReport {
  bool factorizes = false;
  double deviation = 0.0;
};
FactorizationReport check_signalling_factorization(const QDiagram& rho,
                                                   const QDiagram& phiA,
                                                   const QDiagram& phiB,
                                                   const CModel& m,
                                                   double tol);

// The no-signalling statement: requires phiA and phiB causal (else
// CausalityError), then returns whether the factorization holds.
bool check_no_signalling(const QDiagram& rho, const QDiagram& phiA,
                         const QDiagram& phiB, const CModel& m, double tol);

// Fixed counterexample over the boolean backend: the relation
// {(0,0),(0,1),(1,1)} is not a product of a state and an effect, yet
// composing it with its own converse gives the full relation, which is.
// A theory whose states are closed under that composite therefore cannot
// demand products stay products.
struct RelDaggerReport {
  bool r_separable = false;
  bool composite_separable = false;
  bool axiom_violated = false;
  BTensor r;
  BTensor composite;
};
RelDaggerReport check_rel_dagger_axiom();

}  // namespace procflow
