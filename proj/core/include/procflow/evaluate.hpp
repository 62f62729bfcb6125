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

#include "procflow/diagram.hpp"
#include "procflow/model.hpp"
#include "procflow/tensor.hpp"

namespace procflow {

// Greedy picks the cheapest pairwise contraction (smallest intermediate,
// ties by factor position); Sequential folds factors left to right. Both
// must agree within numerical noise; Sequential exists as the reference.
enum class ContractionOrder { Greedy, Sequential };

// Contracts the diagram's tensor network: one index per wire, one factor per
// box (variants derived from the generator tensor), boundary wires as free
// axes ordered cod-then-dom, and each loop contributing a factor of
// dim summed into the semiring.
template <class Ops>
Tensor<Ops> evaluate(const Diagram& d, const Model<Ops>& m,
                     ContractionOrder order = ContractionOrder::Greedy);

extern template Tensor<ComplexOps> evaluate<ComplexOps>(
    const Diagram&, const Model<ComplexOps>&, ContractionOrder);
extern template Tensor<BoolOps> evaluate<BoolOps>(const Diagram&,
                                                  const Model<BoolOps>&,
                                                  ContractionOrder);

struct EquivResult {
  bool equivalent = true;
  std::uint64_t witness_seed = 0;  // seed of the distinguishing model
  int trials_run = 0;
  double max_dev = 0.0;
};

// Randomized numeric equality: evaluates both diagrams under `trials` random
// models (trial t uses seed + t) and reports the first model that tells them
// apart. Equal diagrams always pass; distinct ones are expected to be caught
// within a few trials at generic dimensions, but a pass is evidence, not
// proof.
EquivResult prob_equiv(const Diagram& a, const Diagram& b, int trials,
                       std::uint64_t seed, double tol,
                       std::int64_t dim_lo = 1, std::int64_t dim_hi = 4);

}  // namespace procflow
