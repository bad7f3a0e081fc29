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

#include "uew/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "uew/error.hpp"

namespace uew {
namespace {

constexpr double kPhaseCut = 1e-12;

void check_dims(Dims dims, std::size_t entries) {
  if (dims.a == 0 || dims.b == 0) {
    fail(ErrorCode::kInvalidArgument, "dimensions must be positive");
  }
  if (dims.total() > kMaxDimension) {
    std::ostringstream os;
    os << "total dimension " << dims.total() << " exceeds " << kMaxDimension;
    fail(ErrorCode::kTooLarge, os.str());
  }
  if (entries != dims.total() * dims.total()) {
    fail(ErrorCode::kDimensionMismatch,
         "matrix size does not match dims product");
  }
}

void require_same_dims(const HermitianOperator& x, const HermitianOperator& y) {
  if (x.dim() != y.dim()) {
    fail(ErrorCode::kDimensionMismatch, "operator dimensions differ");
  }
}

void canonicalize(std::vector<Complex>& v) {
  for (const Complex& z : v) {
    if (std::abs(z) > kPhaseCut) {
      const Complex phase = std::conj(z) / std::abs(z);
      for (Complex& w : v) w *= phase;
      break;
    }
  }
  // The leading amplitude is real after the rotation up to rounding.
  for (Complex& w : v) {
    if (std::abs(w) > kPhaseCut) {
      w = Complex(w.real(), 0.0);
      break;
    }
  }
}

std::size_t leading_index(const Ket& k) {
  for (std::size_t i = 0; i < k.dim(); ++i) {
    if (std::abs(k[i]) > 1e-9) return i;
  }
  return k.dim();
}

// Tie-break among degenerate top eigenvectors.
bool preferred(const Ket& x, const Ket& y) {
  const std::size_t ix = leading_index(x);
  const std::size_t iy = leading_index(y);
  if (ix != iy) return ix < iy;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (std::abs(x[i].real() - y[i].real()) > 1e-12)
      return x[i].real() > y[i].real();
    if (std::abs(x[i].imag() - y[i].imag()) > 1e-12)
      return x[i].imag() > y[i].imag();
  }
  return false;
}

EigenPair max_eigenpair_2x2(const HermitianOperator& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = m(0, 1);
  const double half = 0.5 * (a - d);
  const double radius = std::hypot(half, std::abs(b));
  const double lambda = 0.5 * (a + d) + radius;
  const double scale = std::max({std::abs(a), std::abs(d), std::abs(b), 1.0});
  if (std::abs(b) <= 1e-15 * scale) {
    return {lambda, Ket::basis(2, a >= d ? 0 : 1)};
  }
  // Two algebraically equivalent kernels; use the better conditioned one.
  std::vector<Complex> v1{b, Complex(lambda - a)};
  std::vector<Complex> v2{Complex(lambda - d), std::conj(b)};
  const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
  const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
  return {lambda, Ket::normalized(n1 >= n2 ? std::move(v1) : std::move(v2))};
}

// Cyclic Jacobi on a Hermitian matrix. Returns eigenvalues (unsorted) and the
// unitary whose columns are the eigenvectors.
void jacobi(const HermitianOperator& m, std::vector<double>& values,
            std::vector<Complex>& vecs) {
  const std::size_t n = m.dim();
  std::vector<Complex> a = m.entries();
  vecs.assign(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) vecs[i * n + i] = 1.0;

  double frob = 0.0;
  for (const Complex& z : a) frob += std::norm(z);
  frob = std::sqrt(frob);
  const double target = 1e-12 * std::max(1.0, frob);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a[i * n + j]);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = akp * gpp + akq * gqp;
          a[k * n + q] = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a[q * n + k] = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = vecs[k * n + p];
          const Complex vkq = vecs[k * n + q];
          vecs[k * n + p] = vkp * gpp + vkq * gqp;
          vecs[k * n + q] = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
  values.resize(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i].real();
}

Ket column(const std::vector<Complex>& vecs, std::size_t n, std::size_t j) {
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = vecs[k * n + j];
  return Ket::normalized(std::move(v));
}

}  // namespace

Ket Ket::normalized(std::vector<Complex> amplitudes) {
  if (amplitudes.empty()) fail(ErrorCode::kInvalidArgument, "empty ket");
  double norm = 0.0;
  for (const Complex& z : amplitudes) norm += std::norm(z);
  norm = std::sqrt(norm);
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    fail(ErrorCode::kInvalidArgument, "ket has zero or non-finite norm");
  }
  for (Complex& z : amplitudes) z /= norm;
  canonicalize(amplitudes);
  return Ket(std::move(amplitudes));
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) fail(ErrorCode::kInvalidArgument, "basis index out of range");
  std::vector<Complex> v(dim, Complex(0.0));
  v[index] = 1.0;
  return Ket(std::move(v));
}

HermitianOperator HermitianOperator::from_entries(Dims dims,
                                                  std::vector<Complex> entries,
                                                  double tol) {
  check_dims(dims, entries.size());
  const std::size_t n = dims.total();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex x = entries[i * n + j];
      const Complex y = std::conj(entries[j * n + i]);
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        fail(ErrorCode::kInvalidArgument, "non-finite matrix entry");
      }
      if (std::abs(x - y) > tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian at (" << i << "," << j
           << "): deviation " << std::abs(x - y);
        fail(ErrorCode::kNotHermitian, os.str());
      }
      const Complex h = 0.5 * (x + y);
      entries[i * n + j] = h;
      entries[j * n + i] = std::conj(h);
    }
  }
  return HermitianOperator(dims, std::move(entries));
}

HermitianOperator HermitianOperator::identity(Dims dims) {
  check_dims(dims, dims.total() * dims.total());
  const std::size_t n = dims.total();
  std::vector<Complex> m(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return HermitianOperator(dims, std::move(m));
}

HermitianOperator HermitianOperator::zero(Dims dims) {
  check_dims(dims, dims.total() * dims.total());
  const std::size_t n = dims.total();
  return HermitianOperator(dims, std::vector<Complex>(n * n, Complex(0.0)));
}

HermitianOperator HermitianOperator::diagonal(Dims dims,
                                              std::span<const double> diag) {
  check_dims(dims, diag.size() * diag.size());
  const std::size_t n = dims.total();
  std::vector<Complex> m(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = diag[i];
  return HermitianOperator(dims, std::move(m));
}

HermitianOperator HermitianOperator::outer(std::span<const Complex> v,
                                           Dims dims) {
  check_dims(dims, v.size() * v.size());
  const std::size_t n = v.size();
  std::vector<Complex> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = v[i] * std::conj(v[j]);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = m[i * n + i].real();
  return HermitianOperator(dims, std::move(m));
}

HermitianOperator HermitianOperator::with_dims(Dims dims) const {
  if (dims.total() != n_) {
    fail(ErrorCode::kDimensionMismatch, "relabelled dims must keep the size");
  }
  return HermitianOperator(dims, m_);
}

double HermitianOperator::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += m_[i * n_ + i].real();
  return t;
}

double HermitianOperator::max_abs_diff(const HermitianOperator& other) const {
  require_same_dims(*this, other);
  double d = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i)
    d = std::max(d, std::abs(m_[i] - other.m_[i]));
  return d;
}

double HermitianOperator::max_abs() const {
  double d = 0.0;
  for (const Complex& z : m_) d = std::max(d, std::abs(z));
  return d;
}

HermitianOperator operator+(const HermitianOperator& x,
                            const HermitianOperator& y) {
  return combine(1.0, x, 1.0, y);
}

HermitianOperator operator-(const HermitianOperator& x,
                            const HermitianOperator& y) {
  return combine(1.0, x, -1.0, y);
}

HermitianOperator operator*(double s, const HermitianOperator& x) {
  std::vector<Complex> m = x.m_;
  for (Complex& z : m) z *= s;
  return HermitianOperator(x.dims_, std::move(m));
}

HermitianOperator combine(double s, const HermitianOperator& x, double t,
                          const HermitianOperator& y) {
  require_same_dims(x, y);
  std::vector<Complex> m(x.entries().size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = s * x.entries()[i] + t * y.entries()[i];
  return HermitianOperator::from_entries(x.dims(), std::move(m), 1e300);
}

HermitianOperator tensor_product(const HermitianOperator& a,
                                 const HermitianOperator& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  if (n > kMaxDimension) fail(ErrorCode::kTooLarge, "tensor product too large");
  std::vector<Complex> m(n * n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          m[(i * nb + k) * n + (j * nb + l)] = a(i, j) * b(k, l);
  return HermitianOperator::from_entries(Dims{na, nb}, std::move(m), 1e300);
}

Ket tensor_product(const Ket& a, const Ket& b) {
  std::vector<Complex> v(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) v[i * b.dim() + k] = a[i] * b[k];
  return Ket::normalized(std::move(v));
}

double quadratic_form(const HermitianOperator& m, std::span<const Complex> v) {
  const std::size_t n = m.dim();
  if (v.size() != n) fail(ErrorCode::kDimensionMismatch, "vector size mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += m(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

double expectation(const HermitianOperator& m, const Ket& k) {
  return quadratic_form(m, k.amplitudes());
}

HermitianOperator conditional_operator(const HermitianOperator& m,
                                       const Ket& k, Party side) {
  const Dims d = m.dims();
  const std::size_t n = m.dim();
  const std::size_t contracted = side == Party::A ? d.a : d.b;
  if (k.dim() != contracted) {
    fail(ErrorCode::kDimensionMismatch,
         "ket dimension does not match the contracted party");
  }
  const std::size_t out = side == Party::A ? d.b : d.a;
  std::vector<Complex> r(out * out, Complex(0.0));
  for (std::size_t i = 0; i < contracted; ++i) {
    for (std::size_t j = 0; j < contracted; ++j) {
      const Complex w = std::conj(k[i]) * k[j];
      if (w == Complex(0.0)) continue;
      for (std::size_t x = 0; x < out; ++x) {
        for (std::size_t y = 0; y < out; ++y) {
          const std::size_t row = side == Party::A ? i * d.b + x : x * d.b + i;
          const std::size_t col = side == Party::A ? j * d.b + y : y * d.b + j;
          r[x * out + y] += w * m.entries()[row * n + col];
        }
      }
    }
  }
  return HermitianOperator::from_entries(Dims{out, 1}, std::move(r), 1e300);
}

EigenPair max_eigenpair(const HermitianOperator& m) {
  if (m.dim() == 1) return {m(0, 0).real(), Ket::basis(1, 0)};
  if (m.dim() == 2) return max_eigenpair_2x2(m);
  std::vector<double> values;
  std::vector<Complex> vecs;
  jacobi(m, values, vecs);
  const std::size_t n = m.dim();
  const double top = *std::max_element(values.begin(), values.end());
  const double tie = 1e-10 * std::max(1.0, std::abs(top));
  std::size_t best = n;
  Ket best_vec = Ket::basis(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (values[j] < top - tie) continue;
    Ket v = column(vecs, n, j);
    if (best == n || preferred(v, best_vec)) {
      best = j;
      best_vec = std::move(v);
    }
  }
  return {values[best], std::move(best_vec)};
}

std::vector<EigenPair> eigen_decomposition(const HermitianOperator& m) {
  const std::size_t n = m.dim();
  std::vector<double> values;
  std::vector<Complex> vecs;
  if (n == 1) {
    return {EigenPair{m(0, 0).real(), Ket::basis(1, 0)}};
  }
  jacobi(m, values, vecs);
  std::vector<EigenPair> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back({values[j], column(vecs, n, j)});
  std::stable_sort(out.begin(), out.end(),
                   [](const EigenPair& x, const EigenPair& y) {
                     return x.value < y.value;
                   });
  return out;
}

std::vector<double> eigenvalues(const HermitianOperator& m) {
  std::vector<double> values;
  if (m.dim() == 1) return {m(0, 0).real()};
  std::vector<Complex> vecs;
  jacobi(m, values, vecs);
  std::sort(values.begin(), values.end());
  return values;
}

HermitianOperator swap_parties(const HermitianOperator& m) {
  const Dims d = m.dims();
  const std::size_t n = m.dim();
  std::vector<Complex> r(n * n);
  auto idx = [&](std::size_t ab) { return (ab % d.b) * d.a + ab / d.b; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[idx(i) * n + idx(j)] = m(i, j);
  return HermitianOperator::from_entries(Dims{d.b, d.a}, std::move(r), 1e300);
}

Ket swap_parties(const Ket& k, Dims dims) {
  if (k.dim() != dims.total()) {
    fail(ErrorCode::kDimensionMismatch, "ket does not match dims");
  }
  std::vector<Complex> r(k.dim());
  for (std::size_t ab = 0; ab < k.dim(); ++ab)
    r[(ab % dims.b) * dims.a + ab / dims.b] = k[ab];
  return Ket::normalized(std::move(r));
}

}  // namespace uew
