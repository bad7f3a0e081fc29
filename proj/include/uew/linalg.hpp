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

// Dense complex linear algebra for small bipartite Hilbert spaces.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace uew {

using Complex = std::complex<double>;

/// Largest total dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxDimension = 64;

/// Bipartite split (d_A, d_B). Single-party operators use (d, 1).
struct Dims {
  std::size_t a = 1;
  std::size_t b = 1;

  std::size_t total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Party { A, B };

/// Unit vector with canonical global phase: the first amplitude with
/// modulus above 1e-12 is real and non-negative.
class Ket {
 public:
  /// Normalizes and canonicalizes; throws on a zero or empty vector.
  static Ket normalized(std::vector<Complex> amplitudes);
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  friend bool operator==(const Ket&, const Ket&) = default;

 private:
  explicit Ket(std::vector<Complex> amps) : amps_(std::move(amps)) {}
  std::vector<Complex> amps_;
};

class HermitianOperator {
 public:
  /// Validates Hermiticity to `tol` elementwise, then stores the exactly
  /// Hermitian part (M + M^dagger) / 2.
  static HermitianOperator from_entries(Dims dims, std::vector<Complex> entries,
                                        double tol = 1e-12);
  static HermitianOperator identity(Dims dims);
  static HermitianOperator zero(Dims dims);
  static HermitianOperator diagonal(Dims dims, std::span<const double> diag);
  /// |v><v| for a vector that need not be normalized.
  static HermitianOperator outer(std::span<const Complex> v, Dims dims);
  static HermitianOperator outer(std::span<const Complex> v) {
    return outer(v, Dims{v.size(), 1});
  }
  static HermitianOperator projector(const Ket& k) {
    return outer(k.amplitudes());
  }

  Dims dims() const { return dims_; }
  std::size_t dim() const { return n_; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return m_[i * n_ + j];
  }
  const std::vector<Complex>& entries() const { return m_; }

  /// Same matrix, relabelled bipartite split.
  HermitianOperator with_dims(Dims dims) const;

  double trace() const;
  /// max_ij |M_ij - N_ij|
  double max_abs_diff(const HermitianOperator& other) const;
  double max_abs() const;

  friend HermitianOperator operator+(const HermitianOperator& x,
                                     const HermitianOperator& y);
  friend HermitianOperator operator-(const HermitianOperator& x,
                                     const HermitianOperator& y);
  friend HermitianOperator operator*(double s, const HermitianOperator& x);

 private:
  HermitianOperator(Dims dims, std::vector<Complex> m)
      : dims_(dims), n_(dims.total()), m_(std::move(m)) {}

  Dims dims_;
  std::size_t n_ = 0;
  std::vector<Complex> m_;
};

/// Affine combination s*x + t*y; dims must agree.
HermitianOperator combine(double s, const HermitianOperator& x, double t,
                          const HermitianOperator& y);

struct EigenPair {
  double value = 0.0;
  Ket vector = Ket::basis(1, 0);
};

/// Kronecker product; the result carries dims (dim(a), dim(b)).
HermitianOperator tensor_product(const HermitianOperator& a,
                                 const HermitianOperator& b);
Ket tensor_product(const Ket& a, const Ket& b);

/// <k|M|k>
double expectation(const HermitianOperator& m, const Ket& k);
/// <v|M|v> for an arbitrary (not necessarily normalized) vector.
double quadratic_form(const HermitianOperator& m, std::span<const Complex> v);

/// Contracts one party of M with the given single-party ket:
///   side A: (<a| (x) I) M (|a> (x) I), an operator on B;
///   side B: (I (x) <b|) M (I (x) |b>), an operator on A.
HermitianOperator conditional_operator(const HermitianOperator& m,
                                       const Ket& k, Party side);

/// Largest eigenvalue with its eigenvector. Closed form for 2x2, cyclic
/// Jacobi otherwise. Degenerate top eigenvalues resolve to the candidate whose
/// leading nonzero amplitude has the lowest index (I_d -> |0>).
EigenPair max_eigenpair(const HermitianOperator& m);

/// Full spectrum, ascending.
std::vector<double> eigenvalues(const HermitianOperator& m);

/// Full eigendecomposition, ascending eigenvalues; vectors are canonicalized.
std::vector<EigenPair> eigen_decomposition(const HermitianOperator& m);

/// Exchanges the roles of A and B: the result acts on H_B (x) H_A.
HermitianOperator swap_parties(const HermitianOperator& m);
Ket swap_parties(const Ket& k, Dims dims);

}  // namespace uew
