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

#include "uew/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "parallel.hpp"
#include "uew/error.hpp"

namespace uew {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kPolishCandidates = 8;
constexpr int kRandomConstrainedStarts = 16;

bool lex_less(const Ket& x, const Ket& y) {
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i].real() != y[i].real()) return x[i].real() < y[i].real();
    if (x[i].imag() != y[i].imag()) return x[i].imag() < y[i].imag();
  }
  return false;
}

// Restart reduction: best value wins, near-ties go to the lexicographically
// smallest joint amplitudes.
bool better(const OptimizationResult& x, const OptimizationResult& y) {
  if (x.value > y.value + kTieTolerance) return true;
  if (y.value > x.value + kTieTolerance) return false;
  return lex_less(x.argmax.joint(), y.argmax.joint());
}

bool on_side(double t, double c, HalfSpaceSide side, double tol) {
  return side == HalfSpaceSide::Leq ? t <= c + tol : t >= c - tol;
}

void require_bipartite_match(const HermitianOperator& l,
                             const HermitianOperator& c) {
  if (l.dim() != c.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "constraint and test operators differ in dimension");
  }
}

// ---------------------------------------------------------------------------
// Exact constrained maximization for a single party.

struct Bloch {
  double h0 = 0.0;
  std::array<double, 3> h{};
};

Bloch to_bloch(const HermitianOperator& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  return Bloch{0.5 * (a + d), {m(0, 1).real(), -m(0, 1).imag(), 0.5 * (a - d)}};
}

double dot(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm(const std::array<double, 3>& x) { return std::sqrt(dot(x, x)); }

Ket ket_from_bloch(const std::array<double, 3>& r) {
  const double z = std::clamp(r[2], -1.0, 1.0);
  const double b0 = std::sqrt(0.5 * (1.0 + z));
  if (b0 < 1e-12) return Ket::basis(2, 1);
  return Ket::normalized({Complex(b0), Complex(r[0], r[1]) / (2.0 * b0)});
}

// Unit vector orthogonal to u (|u| = 1), chosen deterministically.
std::array<double, 3> orthogonal(const std::array<double, 3>& u) {
  const std::size_t k = std::abs(u[0]) <= std::abs(u[1])
                            ? (std::abs(u[0]) <= std::abs(u[2]) ? 0 : 2)
                            : (std::abs(u[1]) <= std::abs(u[2]) ? 1 : 2);
  std::array<double, 3> e{};
  e[k] = 1.0;
  const double p = dot(e, u);
  std::array<double, 3> v{e[0] - p * u[0], e[1] - p * u[1], e[2] - p * u[2]};
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

// Qubit case: <b|H|b> = h0 + h.r over Bloch vectors r, so the problem is a
// linear objective on the unit sphere cut by a plane.
InnerSolution constrained_top_qubit(const HermitianOperator& l,
                                    const HermitianOperator& c, double cvalue,
                                    HalfSpaceSide side) {
  const Bloch lb = to_bloch(l);
  Bloch cb = to_bloch(c);
  double limit = cvalue - cb.h0;  // constraint: k.r <= limit
  if (side == HalfSpaceSide::Geq) {
    for (double& x : cb.h) x = -x;
    limit = -limit;
  }
  const std::array<double, 3>& k = cb.h;
  const double nk = norm(k);
  const double nl = norm(lb.h);
  const double scale = std::max({1.0, std::abs(cb.h0), std::abs(cvalue), nk});

  if (nk <= 1e-14 * scale) {
    if (limit < -1e-14 * scale) return {};
    const EigenPair top = max_eigenpair(l);
    return {true, top.value, top.vector};
  }
  const double t = limit / nk;
  if (t < -1.0 - 1e-14) return {};
  if (nl > 0.0) {
    const std::array<double, 3> r{lb.h[0] / nl, lb.h[1] / nl, lb.h[2] / nl};
    if (dot(k, r) <= limit) {
      const EigenPair top = max_eigenpair(l);
      return {true, top.value, top.vector};
    }
  } else if (t >= 1.0) {
    const EigenPair top = max_eigenpair(l);
    return {true, top.value, top.vector};
  }
  const double tc = std::clamp(t, -1.0, 1.0);
  const std::array<double, 3> kh{k[0] / nk, k[1] / nk, k[2] / nk};
  const double lpar = dot(lb.h, kh);
  std::array<double, 3> perp{lb.h[0] - lpar * kh[0], lb.h[1] - lpar * kh[1],
                             lb.h[2] - lpar * kh[2]};
  const double nperp = norm(perp);
  if (nperp <= 1e-15 * std::max(1.0, nl)) {
    perp = orthogonal(kh);
  } else {
    for (double& x : perp) x /= nperp;
  }
  const double s = std::sqrt(std::max(0.0, 1.0 - tc * tc));
  const std::array<double, 3> r{tc * kh[0] + s * perp[0], tc * kh[1] + s * perp[1],
                                tc * kh[2] + s * perp[2]};
  const double value = lb.h0 + tc * lpar + s * (nperp > 0 ? nperp : 0.0);
  return {true, value, ket_from_bloch(r)};
}

// General dimension: for the side Leq, sup{<L> : <C> <= c} equals
// min_{lambda >= 0} lambda_max(L - lambda (C - c)), and <C> along the top
// eigenvector is non-increasing in lambda. Bisect lambda to the switch point,
// then solve the problem exactly on the span of the two eigenvectors that
// bracket it.
InnerSolution constrained_top_general(const HermitianOperator& l,
                                      const HermitianOperator& c_in,
                                      double cvalue_in, HalfSpaceSide side) {
  const bool flip = side == HalfSpaceSide::Geq;
  const HermitianOperator c = flip ? -1.0 * c_in : c_in;
  const double cvalue = flip ? -cvalue_in : cvalue_in;
  const std::size_t n = l.dim();
  const Dims d = l.dims();

  const EigenPair top = max_eigenpair(l);
  if (expectation(c, top.vector) <= cvalue) {
    return {true, top.value, top.vector};
  }
  const double scale = std::max({1.0, c.max_abs(), std::abs(cvalue)});
  const EigenPair cmin = max_eigenpair(-1.0 * c);  // -lambda_min(C)
  if (-cmin.value > cvalue + 1e-14 * scale) return {};

  const HermitianOperator shifted =
      combine(1.0, c, -cvalue, HermitianOperator::identity(d));
  auto top_at = [&](double lambda) {
    return max_eigenpair(combine(1.0, l, -lambda, shifted));
  };
  double lo = 0.0;
  double hi = std::max(1.0, l.max_abs() / scale);
  EigenPair at_hi = top_at(hi);
  int grow = 0;
  while (expectation(c, at_hi.vector) > cvalue && grow < 200) {
    lo = hi;
    hi *= 2.0;
    at_hi = top_at(hi);
    ++grow;
  }
  if (expectation(c, at_hi.vector) > cvalue) {
    // Feasible set reduced to the bottom eigenspace of C.
    const Ket& v = cmin.vector;
    return {true, expectation(l, v), v};
  }
  EigenPair at_lo = top;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    EigenPair e = top_at(mid);
    if (expectation(c, e.vector) > cvalue) {
      lo = mid;
      at_lo = std::move(e);
    } else {
      hi = mid;
      at_hi = std::move(e);
    }
  }
  const Ket& u = at_hi.vector;
  InnerSolution best{true, expectation(l, u), u};

  // Orthonormal partner of u inside span{u, v}.
  const Ket& v = at_lo.vector;
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < n; ++i) overlap += std::conj(u[i]) * v[i];
  std::vector<Complex> w(n);
  double wn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = v[i] - overlap * u[i];
    wn += std::norm(w[i]);
  }
  wn = std::sqrt(wn);
  if (wn < 1e-12) return best;
  for (Complex& z : w) z /= wn;

  auto restrict_op = [&](const HermitianOperator& m) {
    const std::array<const Complex*, 2> basis{u.amplitudes().data(), w.data()};
    std::vector<Complex> r(4);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          Complex row = 0.0;
          for (std::size_t j = 0; j < n; ++j) row += m(i, j) * basis[y][j];
          s += std::conj(basis[x][i]) * row;
        }
        r[x * 2 + y] = s;
      }
    return HermitianOperator::from_entries(Dims{2, 1}, std::move(r), 1e300);
  };
  const InnerSolution sub = constrained_top_qubit(
      restrict_op(l), restrict_op(c), cvalue, HalfSpaceSide::Leq);
  if (!sub.feasible) return best;
  std::vector<Complex> b(n);
  for (std::size_t i = 0; i < n; ++i)
    b[i] = sub.vector[0] * u[i] + sub.vector[1] * w[i];
  Ket bk = Ket::normalized(std::move(b));
  const double value = expectation(l, bk);
  if (expectation(c, bk) <= cvalue + 1e-12 * scale && value > best.value) {
    best = {true, value, std::move(bk)};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Angle grids.

struct AngleGrid {
  std::size_t dim = 2;
  std::size_t n_theta = 2;
  std::size_t n_phi = 1;

  std::size_t params() const { return 2 * (dim - 1); }
  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t k = 0; k + 1 < dim; ++k) s *= n_theta * n_phi;
    return s;
  }
  std::vector<double> angles(std::size_t index) const {
    std::vector<double> out(params());
    for (std::size_t k = 0; k + 1 < dim; ++k) {
      out[k] = std::numbers::pi * static_cast<double>(index % n_theta) /
               static_cast<double>(n_theta - 1);
      index /= n_theta;
    }
    for (std::size_t k = 0; k + 1 < dim; ++k) {
      out[dim - 1 + k] = 2.0 * std::numbers::pi *
                         static_cast<double>(index % n_phi) /
                         static_cast<double>(n_phi);
      index /= n_phi;
    }
    return out;
  }
  double spacing() const {
    return std::max(std::numbers::pi / static_cast<double>(n_theta - 1),
                    2.0 * std::numbers::pi / static_cast<double>(n_phi));
  }
};

// Higher-dimensional parties get a coarser per-angle grid so the total stays
// near the qubit budget n_theta * n_phi.
AngleGrid search_grid(std::size_t dim, const OptimizerConfig& cfg) {
  AngleGrid g{dim, static_cast<std::size_t>(cfg.grid_theta),
              static_cast<std::size_t>(cfg.grid_phi)};
  const std::size_t budget = g.n_theta * g.n_phi;
  while (g.size() > budget && (g.n_theta > 3 || g.n_phi > 2)) {
    if (g.n_theta > 3 && (g.n_theta >= g.n_phi || g.n_phi <= 2)) {
      g.n_theta = g.n_theta / 2 + 1;
    } else {
      g.n_phi = std::max<std::size_t>(2, g.n_phi / 2);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Constrained search over party A with party B solved exactly.

class ConstrainedSearch {
 public:
  ConstrainedSearch(const HermitianOperator& l, const HermitianOperator& c,
                    double cvalue, HalfSpaceSide side, const OptimizerConfig& cfg)
      : l_(l), c_(c), cvalue_(cvalue), side_(side), cfg_(cfg) {}

  InnerSolution best_b(const Ket& a) const {
    return constrained_top(conditional_operator(l_, a, Party::A),
                           conditional_operator(c_, a, Party::A), cvalue_, side_);
  }

  double value_at(std::span<const double> angles) const {
    const InnerSolution s = best_b(ket_from_angles(angles, l_.dims().a));
    return s.feasible ? s.value : -kInf;
  }

  OptimizationResult run() const {
    const AngleGrid grid = search_grid(l_.dims().a, cfg_);
    const std::size_t total = grid.size();
    std::vector<double> values(total);
    detail::parallel_for(total, cfg_.threads, [&](std::size_t i) {
      values[i] = value_at(grid.angles(i));
    });

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < total; ++i)
      if (values[i] > -kInf) order.push_back(i);
    if (order.empty()) {
      fail(ErrorCode::kEmptyFeasibleSet,
           "no product state satisfies the constraint on the requested side");
    }
    const std::size_t keep = std::min(kPolishCandidates, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t x, std::size_t y) {
                        if (values[x] != values[y]) return values[x] > values[y];
                        return x < y;
                      });

    std::vector<std::vector<double>> starts;
    for (std::size_t i = 0; i < keep; ++i) starts.push_back(grid.angles(order[i]));
    const int randoms = std::min(cfg_.restarts, kRandomConstrainedStarts);
    for (int r = 0; r < randoms; ++r) {
      std::mt19937_64 rng(derive_seed(cfg_.seed ^ 0x5eedc0de5eedc0deULL,
                                      static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> x(grid.params());
      for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = (k + 1 < grid.dim ? std::numbers::pi : 2.0 * std::numbers::pi) *
               unit(rng);
      }
      starts.push_back(std::move(x));
    }

    std::vector<std::optional<OptimizationResult>> results(starts.size());
    detail::parallel_for(starts.size(), cfg_.threads, [&](std::size_t i) {
      results[i] = polish(starts[i], grid.spacing());
    });
    std::optional<OptimizationResult> best;
    for (auto& r : results) {
      if (r && (!best || better(*r, *best))) best = std::move(r);
    }
    if (!best) {
      fail(ErrorCode::kEmptyFeasibleSet,
           "no feasible product state after refinement");
    }
    return *best;
  }

 private:
  // Coordinate-wise golden-section search over the angles of |a>, then
  // alternating exact updates of |b> and |a>.
  std::optional<OptimizationResult> polish(std::vector<double> x,
                                           double window) const {
    double fx = value_at(x);
    if (!(fx > -kInf)) return std::nullopt;

    if (l_.dims().b == 2) {
      constexpr double kInvPhi = 0.6180339887498949;
      double step = window;
      for (int sweep = 0; sweep < 400 && step > 1e-9; ++sweep) {
        double moved = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
          std::vector<double> y = x;
          auto f = [&](double t) {
            y[k] = t;
            return value_at(y);
          };
          double lo = x[k] - step;
          double hi = x[k] + step;
          double p = hi - kInvPhi * (hi - lo);
          double q = lo + kInvPhi * (hi - lo);
          double fp = f(p);
          double fq = f(q);
          for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
            if (fp < fq) {
              lo = p;
              p = q;
              fp = fq;
              q = lo + kInvPhi * (hi - lo);
              fq = f(q);
            } else {
              hi = q;
              q = p;
              fq = fp;
              p = hi - kInvPhi * (hi - lo);
              fp = f(p);
            }
          }
          const double t = fp >= fq ? p : q;
          const double ft = std::max(fp, fq);
          if (ft > fx) {
            moved = std::max(moved, std::abs(t - x[k]));
            x[k] = t;
            fx = ft;
          }
        }
        step = std::clamp(4.0 * moved, 0.25 * step, step);
        if (moved == 0.0) step *= 0.25;
      }
    }

    Ket a = ket_from_angles(x, l_.dims().a);
    InnerSolution sb = best_b(a);
    if (!sb.feasible) return std::nullopt;
    Ket b = sb.vector;
    double value = expectation(l_, ProductKet{a, b});
    bool converged = false;
    int it = 0;
    for (; it < cfg_.seesaw_max_iter; ++it) {
      const InnerSolution sa =
          constrained_top(conditional_operator(l_, b, Party::B),
                          conditional_operator(c_, b, Party::B), cvalue_, side_);
      if (sa.feasible && sa.value > value) a = sa.vector;
      const InnerSolution sb2 = best_b(a);
      if (!sb2.feasible) break;
      const double next = expectation(l_, ProductKet{a, sb2.vector});
      const double gain = next - value;
      if (next >= value) {
        b = sb2.vector;
        value = next;
      }
      if (gain < cfg_.seesaw_tol) {
        converged = true;
        break;
      }
    }

    OptimizationResult r;
    r.argmax = ProductKet{a, b};
    r.value = expectation(l_, r.argmax);
    r.constraint_value = expectation(c_, r.argmax);
    r.converged = converged;
    r.iterations = it;
    r.method = Method::Hybrid;
    r.boundary_active = std::abs(r.constraint_value - cvalue_) <= 1e-6;
    return r;
  }

  const HermitianOperator& l_;
  const HermitianOperator& c_;
  double cvalue_;
  HalfSpaceSide side_;
  const OptimizerConfig& cfg_;
};

// ---------------------------------------------------------------------------
// Brute-force oracle kernels. Kept separate from the optimizer's helpers.

void contract_a(const HermitianOperator& m, const std::vector<Complex>& a,
                std::size_t db, std::vector<Complex>& out) {
  const std::size_t da = a.size();
  const std::size_t n = da * db;
  std::fill(out.begin(), out.end(), Complex(0.0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex w = std::conj(a[i]) * a[j];
      for (std::size_t x = 0; x < db; ++x)
        for (std::size_t y = 0; y < db; ++y)
          out[x * db + y] += w * m.entries()[(i * db + x) * n + (j * db + y)];
    }
}

double form(const std::vector<Complex>& m, const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += m[i * n + j] * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

std::vector<Complex> grid_amplitudes(const AngleGrid& g, std::size_t index) {
  const std::vector<double> ang = g.angles(index);
  const std::size_t d = g.dim;
  std::vector<Complex> v(d);
  double carry = 1.0;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const double phase = k == 0 ? 0.0 : ang[d - 1 + k - 1];
    v[k] = carry * std::cos(0.5 * ang[k]) * std::polar(1.0, phase);
    carry *= std::sin(0.5 * ang[k]);
  }
  v[d - 1] = carry * std::polar(1.0, ang[2 * (d - 1) - 1]);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

void OptimizerConfig::validate() const {
  if (restarts < 1) fail(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  if (grid_theta < 2 || grid_phi < 2) {
    fail(ErrorCode::kInvalidArgument, "grids need at least 2 points");
  }
  if (!(seesaw_tol > 0.0) || !(feas_tol > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }
  if (seesaw_max_iter < 1) {
    fail(ErrorCode::kInvalidArgument, "seesaw_max_iter must be >= 1");
  }
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Seesaw:
      return "seesaw";
    case Method::Grid:
      return "grid";
    case Method::Hybrid:
      return "hybrid";
  }
  return "?";
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::CaseI:
      return "CaseI";
    case CaseLabel::CaseII:
      return "CaseII";
    case CaseLabel::Degenerate:
      return "Degenerate";
  }
  return "?";
}

Ket ket_from_angles(std::span<const double> angles, std::size_t dim) {
  if (dim < 1 || angles.size() != 2 * (dim - 1)) {
    fail(ErrorCode::kInvalidArgument, "angle count must be 2*(dim-1)");
  }
  if (dim == 1) return Ket::basis(1, 0);
  std::vector<Complex> v(dim);
  double carry = 1.0;
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const double phase = k == 0 ? 0.0 : angles[dim - 1 + k - 1];
    v[k] = carry * std::cos(0.5 * angles[k]) * std::polar(1.0, phase);
    carry *= std::sin(0.5 * angles[k]);
  }
  v[dim - 1] = carry * std::polar(1.0, angles[2 * (dim - 1) - 1]);
  return Ket::normalized(std::move(v));
}

InnerSolution constrained_top(const HermitianOperator& l,
                              const HermitianOperator& c, double cvalue,
                              HalfSpaceSide side) {
  if (side == HalfSpaceSide::Boundary) {
    fail(ErrorCode::kInvalidArgument, "side must be leq or geq");
  }
  require_bipartite_match(l, c);
  if (l.dim() == 1) {
    const double t = c(0, 0).real();
    if (!on_side(t, cvalue, side, 0.0)) return {};
    return {true, l(0, 0).real(), Ket::basis(1, 0)};
  }
  if (l.dim() == 2) return constrained_top_qubit(l, c, cvalue, side);
  return constrained_top_general(l, c, cvalue, side);
}

OptimizationResult seesaw(const HermitianOperator& l, const ProductKet& start,
                          const OptimizerConfig& cfg, std::vector<double>* trace) {
  if (start.a.dim() != l.dims().a || start.b.dim() != l.dims().b) {
    fail(ErrorCode::kDimensionMismatch, "start state does not match dims");
  }
  Ket a = start.a;
  Ket b = start.b;
  double value = expectation(l, start);
  if (trace) trace->push_back(value);
  bool converged = false;
  int it = 0;
  while (it < cfg.seesaw_max_iter) {
    ++it;
    EigenPair eb = max_eigenpair(conditional_operator(l, a, Party::A));
    b = std::move(eb.vector);
    if (trace) trace->push_back(eb.value);
    EigenPair ea = max_eigenpair(conditional_operator(l, b, Party::B));
    a = std::move(ea.vector);
    if (trace) trace->push_back(ea.value);
    const double gain = ea.value - value;
    value = std::max(value, ea.value);
    if (gain < cfg.seesaw_tol) {
      converged = true;
      break;
    }
  }
  OptimizationResult r;
  r.argmax = ProductKet{std::move(a), std::move(b)};
  r.value = expectation(l, r.argmax);
  r.constraint_value = std::numeric_limits<double>::quiet_NaN();
  r.converged = converged;
  r.iterations = it;
  r.method = Method::Seesaw;
  return r;
}

OptimizationResult sup_product_unconstrained(const HermitianOperator& l,
                                             const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t runs = static_cast<std::size_t>(cfg.restarts);
  std::vector<OptimizationResult> results(runs);
  detail::parallel_for(runs, cfg.threads, [&](std::size_t i) {
    const ProductKet start =
        random_product_ket(l.dims(), derive_seed(cfg.seed, i));
    results[i] = seesaw(l, start, cfg);
  });
  OptimizationResult best = results.front();
  bool any_converged = false;
  for (const OptimizationResult& r : results) {
    any_converged = any_converged || r.converged;
    if (better(r, best)) best = r;
  }
  best.converged = any_converged;
  return best;
}

OptimizationResult sup_product_constrained(const HermitianOperator& l,
                                           const ConstraintSpec& spec,
                                           HalfSpaceSide side,
                                           const OptimizerConfig& cfg) {
  cfg.validate();
  if (side == HalfSpaceSide::Boundary) {
    fail(ErrorCode::kInvalidArgument, "side must be leq or geq");
  }
  require_bipartite_match(l, spec.op);
  const HermitianOperator c = spec.op.with_dims(l.dims());

  OptimizationResult unc = sup_product_unconstrained(l, cfg);
  const double t = expectation(c, unc.argmax);
  if (on_side(t, spec.value, side, cfg.feas_tol)) {
    unc.constraint_value = t;
    unc.boundary_active = false;
    return unc;
  }

  // Party A carries the outer search, so make it the smaller one.
  const bool swapped = l.dims().a > l.dims().b;
  const HermitianOperator ls = swapped ? swap_parties(l) : l;
  const HermitianOperator cs = swapped ? swap_parties(c) : c;
  OptimizationResult r = ConstrainedSearch(ls, cs, spec.value, side, cfg).run();
  if (swapped) r.argmax = ProductKet{r.argmax.b, r.argmax.a};
  r.value = expectation(l, r.argmax);
  r.constraint_value = expectation(c, r.argmax);
  return r;
}

double grid_oracle_sup(const HermitianOperator& l,
                       const std::optional<ConstraintSide>& constraint,
                       GridResolution resolution) {
  if (l.dim() > 9) {
    fail(ErrorCode::kTooLarge, "grid oracle supports total dimension <= 9");
  }
  if (resolution.theta < 2 || resolution.phi < 1) {
    fail(ErrorCode::kInvalidArgument, "grid oracle resolution too small");
  }
  if (constraint) {
    require_bipartite_match(l, constraint->spec.op);
    if (constraint->side == HalfSpaceSide::Boundary) {
      fail(ErrorCode::kInvalidArgument, "side must be leq or geq");
    }
  }
  const std::size_t da = l.dims().a;
  const std::size_t db = l.dims().b;
  const AngleGrid ga{da, static_cast<std::size_t>(resolution.theta),
                     static_cast<std::size_t>(resolution.phi)};
  const AngleGrid gb{db, ga.n_theta, ga.n_phi};
  const std::size_t na = da == 1 ? 1 : ga.size();
  const std::size_t nb = db == 1 ? 1 : gb.size();
  const bool exact_inner = !constraint && db == 2;

  std::vector<std::vector<Complex>> kets_b;
  if (!exact_inner) {
    kets_b.reserve(nb);
    for (std::size_t j = 0; j < nb; ++j)
      kets_b.push_back(db == 1 ? std::vector<Complex>{1.0} : grid_amplitudes(gb, j));
  }

  // Fixed shard layout so the reduction order never changes.
  constexpr std::size_t kShards = 64;
  std::vector<double> shard_best(kShards, -kInf);
  detail::parallel_for(kShards, 0, [&](std::size_t s) {
    std::vector<Complex> la(db * db);
    std::vector<Complex> ca(db * db);
    double best = -kInf;
    for (std::size_t i = s; i < na; i += kShards) {
      const std::vector<Complex> a =
          da == 1 ? std::vector<Complex>{1.0} : grid_amplitudes(ga, i);
      contract_a(l, a, db, la);
      if (exact_inner) {
        const double p = la[0].real();
        const double q = la[3].real();
        const double lam = 0.5 * (p + q) + std::hypot(0.5 * (p - q), std::abs(la[1]));
        best = std::max(best, lam);
        continue;
      }
      if (constraint) contract_a(constraint->spec.op, a, db, ca);
      for (const auto& b : kets_b) {
        if (constraint) {
          const double t = form(ca, b);
          const bool ok = constraint->side == HalfSpaceSide::Leq
                              ? t <= constraint->spec.value
                              : t >= constraint->spec.value;
          if (!ok) continue;
        }
        best = std::max(best, form(la, b));
      }
    }
    shard_best[s] = best;
  });
  return *std::max_element(shard_best.begin(), shard_best.end());
}

CaseLabel classify_case(const HermitianOperator& l, const ConstraintSpec& spec,
                        const OptimizerConfig& cfg) {
  require_bipartite_match(l, spec.op);
  const HermitianOperator c = spec.op.with_dims(l.dims());
  const OptimizationResult opt_l = sup_product_unconstrained(l, cfg);
  const double tl = expectation(c, opt_l.argmax);
  if (tl < spec.value - kBoundaryTolerance) {
    fail(ErrorCode::kAssumptionViolated,
         "the optimal product state of L lies strictly inside S_c; swap the "
         "half-space labels (use -C and -c) so that it lies in S_c~");
  }
  const HermitianOperator d = (l - c).with_dims(l.dims());
  const OptimizationResult opt_d = sup_product_unconstrained(d, cfg);
  const double td = expectation(c, opt_d.argmax);
  if (std::abs(tl - spec.value) <= kBoundaryTolerance ||
      std::abs(td - spec.value) <= kBoundaryTolerance) {
    return CaseLabel::Degenerate;
  }
  // The optimum set of L - C may straddle the boundary (L - C constant, say).
  const HalfSpaceSide other = td > spec.value ? HalfSpaceSide::Leq : HalfSpaceSide::Geq;
  try {
    const double across = sup_product_constrained(d, spec, other, cfg).value;
    if (across >= opt_d.value - 1e-9 * std::max(1.0, std::abs(opt_d.value))) {
      return CaseLabel::Degenerate;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyFeasibleSet) throw;
  }
  return td > spec.value ? CaseLabel::CaseI : CaseLabel::CaseII;
}

bool alpha_feasible(const HermitianOperator& l, const ConstraintSpec& spec,
                    double p_c, double alpha, const OptimizerConfig& cfg) {
  if (!(alpha < 1.0)) fail(ErrorCode::kInvalidArgument, "alpha must be < 1");
  const double w = alpha / (1.0 - alpha);
  const HermitianOperator normalized =
      combine(w, spec.op.with_dims(l.dims()), 1.0, l);
  const double sup =
      sup_product_constrained(normalized, spec, HalfSpaceSide::Leq, cfg).value;
  return sup <= w * spec.value + p_c +
                    kAlphaFeasibilitySlack * std::max(1.0, l.max_abs());
}

std::optional<double> compute_alpha0(const HermitianOperator& l,
                                     const ConstraintSpec& spec,
                                     const OptimizerConfig& cfg,
                                     double bracket_min) {
  if (!(bracket_min < 0.0)) {
    fail(ErrorCode::kInvalidArgument, "bracket_min must be negative");
  }
  const double p_c =
      sup_product_constrained(l, spec, HalfSpaceSide::Leq, cfg).value;
  if (alpha_feasible(l, spec, p_c, bracket_min, cfg)) return std::nullopt;
  // V_alpha is non-negative on S_sep:c for every alpha in [0, 1).
  double hi = 0.0;
  if (!alpha_feasible(l, spec, p_c, hi, cfg)) {
    fail(ErrorCode::kBracket,
         "feasibility fails at both bracket ends; inputs are inconsistent");
  }
  double lo = bracket_min;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (alpha_feasible(l, spec, p_c, mid, cfg)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Lemma31Check lemma31_residual(const HermitianOperator& l,
                              const ConstraintSpec& spec, double alpha,
                              const OptimizerConfig& cfg) {
  const HermitianOperator n = combine_alpha(spec, l, alpha);
  const HermitianOperator c = spec.op.with_dims(l.dims());
  const OptimizationResult opt_l = sup_product_unconstrained(l, cfg);
  const OptimizationResult opt_n = sup_product_unconstrained(n, cfg);
  const bool hypothesis =
      expectation(c, opt_l.argmax) >= spec.value - kBoundaryTolerance &&
      expectation(c, opt_n.argmax) >= spec.value - kBoundaryTolerance;
  const double p_c =
      sup_product_constrained(l, spec, HalfSpaceSide::Leq, cfg).value;
  const double h =
      sup_product_constrained(n, spec, HalfSpaceSide::Leq, cfg).value;
  return Lemma31Check{std::abs(h - (alpha * spec.value + (1.0 - alpha) * p_c)),
                      hypothesis};
}

}  // namespace uew
