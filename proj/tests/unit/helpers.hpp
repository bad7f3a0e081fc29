// Copyright 2026 The uew Authors
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

#include <random>
#include <vector>

#include "uew/linalg.hpp"

namespace uew::testing {

// Entries of the Hermitian part of a complex Gaussian matrix.
inline HermitianOperator random_hermitian(Dims dims, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const std::size_t n = dims.total();
  std::vector<Complex> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z(g(rng), g(rng));
      m[i * n + j] = z;
      m[j * n + i] = std::conj(z);
    }
  }
  return HermitianOperator::from_entries(dims, std::move(m));
}

inline HermitianOperator pauli_x() {
  return HermitianOperator::from_entries(Dims{2, 1}, {0.0, 1.0, 1.0, 0.0});
}

inline HermitianOperator pauli_y() {
  const Complex i(0.0, 1.0);
  return HermitianOperator::from_entries(Dims{2, 1}, {0.0, -i, i, 0.0});
}

inline HermitianOperator pauli_z() {
  return HermitianOperator::from_entries(Dims{2, 1}, {1.0, 0.0, 0.0, -1.0});
}

}  // namespace uew::testing
