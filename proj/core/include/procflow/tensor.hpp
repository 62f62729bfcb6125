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

#include "procflow/errors.hpp"

namespace procflow {

// Scalar contract for evaluation backends: a commutative semiring with an
// involution and an approximate equality. Complex numbers give Hilbert-space
// semantics; booleans give relations.
struct ComplexOps {
  using Scalar = std::complex<double>;
  static Scalar zero() { return {0.0, 0.0}; }
  static Scalar one() { return {1.0, 0.0}; }
  static Scalar add(Scalar a, Scalar b) { return a + b; }
  static Scalar mul(Scalar a, Scalar b) { return a * b; }
  static Scalar conj(Scalar a) { return std::conj(a); }
  static double distance(Scalar a, Scalar b) { return std::abs(a - b); }
  static bool approx_eq(Scalar a, Scalar b, double tol) {
    return distance(a, b) <= tol;
  }
};

struct BoolOps {
  using Scalar = std::uint8_t;  // 0 or 1; avoids std::vector<bool>
  static Scalar zero() { return 0; }
  static Scalar one() { return 1; }
  static Scalar add(Scalar a, Scalar b) { return a | b; }
  static Scalar mul(Scalar a, Scalar b) { return a & b; }
  static Scalar conj(Scalar a) { return a; }
  static double distance(Scalar a, Scalar b) { return a == b ? 0.0 : 1.0; }
  static bool approx_eq(Scalar a, Scalar b, double) { return a == b; }
};

// Dense row-major tensor. The leading cod_rank axes follow the diagram's cod
// boundary in order, the remaining axes its dom boundary, so a map's matrix
// is read (output index, input index).
template <class Ops>
struct Tensor {
  using Scalar = typename Ops::Scalar;

  std::vector<std::int64_t> shape;
  std::size_t cod_rank = 0;
  std::vector<Scalar> data;

  static std::int64_t volume(const std::vector<std::int64_t>& shape) {
    std::int64_t v = 1;
    for (std::int64_t s : shape) v *= s;
    return v;
  }

  static Tensor zeros(std::vector<std::int64_t> shape, std::size_t cod_rank) {
    Tensor t;
    t.shape = std::move(shape);
    t.cod_rank = cod_rank;
    t.data.assign(static_cast<std::size_t>(volume(t.shape)), Ops::zero());
    return t;
  }

  static Tensor scalar(Scalar v) {
    Tensor t;
    t.data.push_back(v);
    return t;
  }

  std::size_t rank() const { return shape.size(); }
  std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }

  std::int64_t flat(const std::vector<std::int64_t>& idx) const {
    std::int64_t off = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) off = off * shape[k] + idx[k];
    return off;
  }

  Scalar& at(const std::vector<std::int64_t>& idx) { return data[flat(idx)]; }
  const Scalar& at(const std::vector<std::int64_t>& idx) const {
    return data[flat(idx)];
  }
};

using CTensor = Tensor<ComplexOps>;
using BTensor = Tensor<BoolOps>;

template <class Ops>
double max_deviation(const Tensor<Ops>& a, const Tensor<Ops>& b) {
  if (a.shape != b.shape)
    throw ShapeError("max_deviation: tensors have different shapes");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, Ops::distance(a.data[i], b.data[i]));
  return worst;
}

// Entrywise comparison at an absolute tolerance; shapes and axis roles must
// agree exactly.
template <class Ops>
bool numeric_equal(const Tensor<Ops>& a, const Tensor<Ops>& b, double tol) {
  if (a.shape != b.shape || a.cod_rank != b.cod_rank) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (!Ops::approx_eq(a.data[i], b.data[i], tol)) return false;
  return true;
}

}  // namespace procflow
