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

#include <cmath>
#include <cstdint>
#include <random>

#include "procflow/tensor.hpp"
#include "procflow/theory.hpp"

namespace procflow {

// Deterministic random stream. mt19937_64 raw output is pinned by the
// standard, and the uniform/normal transforms below are implemented here so
// the same seed reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + next_u64() % (hi - lo + 1);
  }

  bool chance(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> normal_complex() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Assigns a dimension to every type and a tensor to every generator of a
// theory. Generator tensors are stored cod-axes-then-dom-axes; variants are
// derived at evaluation time, never stored.
template <class Ops>
struct Model {
  TheoryPtr theory;
  std::vector<std::int64_t> dims;      // per TypeId, all >= 1
  std::vector<Tensor<Ops>> gens;       // per GenId

  std::int64_t dim(TypeId t) const { return dims.at(t); }

  std::int64_t dims_product(const TypeList& ts) const {
    std::int64_t p = 1;
    for (TypeId t : ts) p *= dim(t);
    return p;
  }

  std::vector<std::int64_t> shape_of(const GeneratorSig& sig) const {
    std::vector<std::int64_t> shape;
    for (TypeId t : sig.cod) shape.push_back(dim(t));
    for (TypeId t : sig.dom) shape.push_back(dim(t));
    return shape;
  }

  void validate() const {
    if (!theory) throw ShapeError("model: missing theory");
    if (dims.size() != theory->type_count())
      throw ShapeError("model: dimension count does not match theory");
    for (std::int64_t d : dims)
      if (d < 1) throw ShapeError("model: dimensions must be positive");
    if (gens.size() != theory->generator_count())
      throw ShapeError("model: generator tensor count does not match theory");
    for (GenId g = 0; g < gens.size(); ++g) {
      const GeneratorSig& sig = theory->generator(g);
      if (gens[g].shape != shape_of(sig))
        throw ShapeError("model: tensor shape for generator '" + sig.name +
                         "' does not match its signature");
      if (gens[g].cod_rank != sig.cod.size())
        throw ShapeError("model: axis roles for generator '" + sig.name +
                         "' do not match its signature");
    }
  }
};

using CModel = Model<ComplexOps>;
using BModel = Model<BoolOps>;

// Complex model with dimensions uniform in [dim_lo, dim_hi] and independent
// standard-normal real and imaginary parts for every generator entry.
// Deterministic in the seed: same seed, same model.
CModel random_model(const TheoryPtr& th, std::int64_t dim_lo,
                    std::int64_t dim_hi, std::uint64_t seed);

}  // namespace procflow
