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

#include "procflow/model.hpp"

namespace procflow {

CModel random_model(const TheoryPtr& th, std::int64_t dim_lo,
                    std::int64_t dim_hi, std::uint64_t seed) {
  if (!th) throw Error("random_model: null theory");
  if (dim_lo < 1 || dim_hi < dim_lo)
    throw Error("random_model: bad dimension range");
  Rng rng(seed);
  CModel m;
  m.theory = th;
  // Consumption order is pinned: all dimensions first, then generator
  // entries in generator order, row-major, one complex normal per entry.
  for (TypeId t = 0; t < th->type_count(); ++t) {
    (void)t;
    m.dims.push_back(static_cast<std::int64_t>(
        rng.uniform_int(static_cast<std::uint64_t>(dim_lo),
                        static_cast<std::uint64_t>(dim_hi))));
  }
  for (GenId g = 0; g < th->generator_count(); ++g) {
    CTensor t = CTensor::zeros(m.shape_of(th->generator(g)),
                               th->generator(g).cod.size());
    for (auto& x : t.data) x = rng.normal_complex();
    m.gens.push_back(std::move(t));
  }
  m.validate();
  return m;
}

}  // namespace procflow
