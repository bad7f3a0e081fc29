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

// Product states, density matrices, and the two-qubit benchmark instance
// (a partially entangled pure state mixed with white noise, measured with a
// three-outcome POVM).

#pragma once

#include <cstdint>
#include <random>

#include "uew/linalg.hpp"

namespace uew {

struct ProductKet {
  Ket a;
  Ket b;

  Dims dims() const { return Dims{a.dim(), b.dim()}; }
  Ket joint() const { return tensor_product(a, b); }
  friend bool operator==(const ProductKet&, const ProductKet&) = default;
};

/// Trace one (1e-10), smallest eigenvalue >= -1e-10.
class DensityMatrix {
 public:
  static DensityMatrix from_operator(HermitianOperator op);
  static DensityMatrix pure(const Ket& k, Dims dims);
  static DensityMatrix maximally_mixed(Dims dims);

  const HermitianOperator& op() const { return op_; }
  Dims dims() const { return op_.dims(); }

 private:
  explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) {}
  HermitianOperator op_;
};

double expectation(const HermitianOperator& m, const DensityMatrix& rho);
double expectation(const HermitianOperator& m, const ProductKet& k);

/// Which form of the POVM vectors |xi+->. `Complete` uses
/// (1/sqrt2)|0> +- sqrt((1-x)/2)|1>, for which P1 + P2 + P3 = I and the
/// published noise thresholds are reproduced. `AsPrinted` swaps the basis
/// labels of the two terms, as the formula is commonly typeset.
enum class PovmConvention { Complete, AsPrinted };

struct Example31Config {
  double amp_alpha = 0.7;
  double amp_beta = 0.5;
  double x = 2.0 / 3.0;
  double c = 0.01;
  PovmConvention povm = PovmConvention::Complete;
};

struct Povm {
  HermitianOperator p1;
  HermitianOperator p2;
  HermitianOperator p3;
};

struct Example31 {
  HermitianOperator constraint;  // P1 (x) P1
  HermitianOperator test;        // P2 (x) P2
  Ket phi;
};

/// amp_alpha|00> + amp_beta(|01> + |10>) + delta|11>.
Ket build_phi(const Example31Config& cfg);
Povm build_povm(double x, PovmConvention convention = PovmConvention::Complete);
/// The unnormalized vector |xi+>.
std::vector<Complex> xi_plus(double x,
                             PovmConvention convention = PovmConvention::Complete);
Example31 build_example31(const Example31Config& cfg);

class NoisyStateFamily {
 public:
  explicit NoisyStateFamily(DensityMatrix pure);
  static NoisyStateFamily from_ket(const Ket& k, Dims dims) {
    return NoisyStateFamily(DensityMatrix::pure(k, dims));
  }

  /// (p/d) I + (1-p) rho_pure, 0 <= p <= 1.
  DensityMatrix member(double p) const;
  const DensityMatrix& pure() const { return pure_; }
  std::size_t dim() const { return pure_.op().dim(); }

 private:
  DensityMatrix pure_;
};

DensityMatrix noisy_member(const NoisyStateFamily& family, double p);

/// Haar-random single-party ket drawn from the generator.
Ket random_ket(std::size_t dim, std::mt19937_64& rng);
/// Deterministic per seed.
ProductKet random_product_ket(Dims dims, std::uint64_t seed);
ProductKet random_product_ket(Dims dims, std::mt19937_64& rng);
/// Random mixed state of the given rank from a Ginibre matrix.
DensityMatrix random_density(Dims dims, std::size_t rank, std::mt19937_64& rng);

/// Stream seed for the i-th worker of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Partial transpose on party B.
HermitianOperator partial_transpose(const HermitianOperator& m);
/// Positive under partial transpose (min eigenvalue >= -tol).
bool is_ppt(const DensityMatrix& rho, double tol = 1e-12);

/// Eigenvalues of the party-A reduced state of a pure bipartite ket.
std::vector<double> schmidt_spectrum(const Ket& k, Dims dims);

}  // namespace uew
