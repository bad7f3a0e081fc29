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

#include "uew/states.hpp"

#include <cmath>
#include <sstream>

#include "uew/error.hpp"

namespace uew {

DensityMatrix DensityMatrix::from_operator(HermitianOperator op) {
  const double tr = op.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace is " << tr << ", expected 1";
    fail(ErrorCode::kNotState, os.str());
  }
  const double lo = eigenvalues(op).front();
  if (lo < -1e-10) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    fail(ErrorCode::kNotState, os.str());
  }
  return DensityMatrix(std::move(op));
}

DensityMatrix DensityMatrix::pure(const Ket& k, Dims dims) {
  return DensityMatrix(HermitianOperator::outer(k.amplitudes(), dims));
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  return DensityMatrix((1.0 / static_cast<double>(dims.total())) *
                       HermitianOperator::identity(dims));
}

double expectation(const HermitianOperator& m, const DensityMatrix& rho) {
  const std::size_t n = m.dim();
  if (rho.op().dim() != n) {
    fail(ErrorCode::kDimensionMismatch, "state and operator dimensions differ");
  }
  Complex tr = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tr += m(i, j) * rho.op()(j, i);
  return tr.real();
}

double expectation(const HermitianOperator& m, const ProductKet& k) {
  if (m.dims().a != k.a.dim() || m.dims().b != k.b.dim()) {
    fail(ErrorCode::kDimensionMismatch, "product ket does not match dims");
  }
  return expectation(conditional_operator(m, k.a, Party::A), k.b);
}

Ket build_phi(const Example31Config& cfg) {
  const double rest =
      1.0 - cfg.amp_alpha * cfg.amp_alpha - 2.0 * cfg.amp_beta * cfg.amp_beta;
  if (rest < -1e-15) {
    fail(ErrorCode::kInvalidArgument,
         "amp_alpha^2 + 2 amp_beta^2 must not exceed 1");
  }
  const double delta = std::sqrt(std::max(rest, 0.0));
  return Ket::normalized({cfg.amp_alpha, cfg.amp_beta, cfg.amp_beta, delta});
}

namespace {

std::vector<Complex> xi(double x, double sign, PovmConvention convention) {
  const double r = 1.0 / std::sqrt(2.0);
  const double s = sign * std::sqrt((1.0 - x) / 2.0);
  if (convention == PovmConvention::Complete) return {r, s};
  return {s, r};
}

void check_x(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "POVM parameter x must lie in (0, 1)");
  }
}

}  // namespace

std::vector<Complex> xi_plus(double x, PovmConvention convention) {
  check_x(x);
  return xi(x, 1.0, convention);
}

Povm build_povm(double x, PovmConvention convention) {
  check_x(x);
  const double p1[] = {0.0, x};
  return Povm{HermitianOperator::diagonal(Dims{2, 1}, p1),
              HermitianOperator::outer(xi(x, 1.0, convention)),
              HermitianOperator::outer(xi(x, -1.0, convention))};
}

Example31 build_example31(const Example31Config& cfg) {
  const Povm povm = build_povm(cfg.x, cfg.povm);
  return Example31{tensor_product(povm.p1, povm.p1),
                   tensor_product(povm.p2, povm.p2), build_phi(cfg)};
}

NoisyStateFamily::NoisyStateFamily(DensityMatrix pure) : pure_(std::move(pure)) {}

DensityMatrix NoisyStateFamily::member(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "noise weight p must lie in [0, 1]");
  }
  const Dims d = pure_.dims();
  const double w = p / static_cast<double>(d.total());
  return DensityMatrix::from_operator(
      combine(w, HermitianOperator::identity(d), 1.0 - p, pure_.op()));
}

DensityMatrix noisy_member(const NoisyStateFamily& family, double p) {
  return family.member(p);
}

Ket random_ket(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(dim);
  for (Complex& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return Ket::normalized(std::move(v));
}

ProductKet random_product_ket(Dims dims, std::mt19937_64& rng) {
  Ket a = random_ket(dims.a, rng);
  Ket b = random_ket(dims.b, rng);
  return ProductKet{std::move(a), std::move(b)};
}

ProductKet random_product_ket(Dims dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_product_ket(dims, rng);
}

DensityMatrix random_density(Dims dims, std::size_t rank, std::mt19937_64& rng) {
  const std::size_t n = dims.total();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> g(n * rank);
  for (Complex& z : g) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  std::vector<Complex> m(n * n, Complex(0.0));
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k)
        s += g[i * rank + k] * std::conj(g[j * rank + k]);
      m[i * n + j] = s;
      if (i == j) tr += s.real();
    }
  for (Complex& z : m) z /= tr;
  return DensityMatrix::from_operator(
      HermitianOperator::from_entries(dims, std::move(m), 1e-9));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over a golden-ratio stride
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HermitianOperator partial_transpose(const HermitianOperator& m) {
  const Dims d = m.dims();
  const std::size_t n = m.dim();
  std::vector<Complex> r(n * n);
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.a; ++j)
      for (std::size_t k = 0; k < d.b; ++k)
        for (std::size_t l = 0; l < d.b; ++l)
          r[(i * d.b + k) * n + (j * d.b + l)] = m(i * d.b + l, j * d.b + k);
  return HermitianOperator::from_entries(d, std::move(r), 1e-12);
}

bool is_ppt(const DensityMatrix& rho, double tol) {
  return eigenvalues(partial_transpose(rho.op())).front() >= -tol;
}

std::vector<double> schmidt_spectrum(const Ket& k, Dims dims) {
  if (k.dim() != dims.total()) {
    fail(ErrorCode::kDimensionMismatch, "ket does not match dims");
  }
  std::vector<Complex> r(dims.a * dims.a, Complex(0.0));
  for (std::size_t i = 0; i < dims.a; ++i)
    for (std::size_t j = 0; j < dims.a; ++j)
      for (std::size_t x = 0; x < dims.b; ++x)
        r[i * dims.a + j] += k[i * dims.b + x] * std::conj(k[j * dims.b + x]);
  return eigenvalues(
      HermitianOperator::from_entries(Dims{dims.a, 1}, std::move(r), 1e-12));
}

}  // namespace uew
