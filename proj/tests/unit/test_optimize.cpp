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

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uew/error.hpp"
#include "uew/optimize.hpp"

using namespace uew;
using uew::testing::random_hermitian;

namespace {

const Dims kTwoQubits{2, 2};

// Frozen from the independent grid oracle (exact inner solve over B on a
// dense angle grid over A, then local polishing).
constexpr double kPcL = 0.43053975315279;
constexpr double kSwappedPc = 0.44265125799794;
constexpr double kSwappedAlpha0 = -1.06869;

struct Bench {
  Example31 ex = build_example31({});
  ConstraintSpec spec{ex.constraint, 0.01};
};

// Role-swapped instance: C' = L, L' = C, c' = 0.02.
struct Swapped {
  Example31 ex = build_example31({});
  ConstraintSpec spec{ex.test, 0.02};
  const HermitianOperator& l() const { return ex.constraint; }
};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("see-saw is monotone") {
  std::mt19937_64 rng(31);
  OptimizerConfig cfg;
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    for (int t = 0; t < 10; ++t) {
      const auto l = random_hermitian(dims, rng);
      std::vector<double> trace;
      const auto r = seesaw(l, random_product_ket(dims, rng), cfg, &trace);
      REQUIRE(trace.size() >= 3);
      for (std::size_t i = 1; i < trace.size(); ++i) {
        CHECK(trace[i] >= trace[i - 1] - 1e-12);
      }
      CHECK(r.value == doctest::Approx(expectation(l, r.argmax)));
    }
  }
}

TEST_CASE("unconstrained supremum") {
  const OptimizerConfig cfg;
  CHECK(sup_product_unconstrained(HermitianOperator::identity(kTwoQubits), cfg).value ==
        doctest::Approx(1.0).epsilon(1e-14));

  const double diag[] = {0.2, 0.7, 0.7, 0.3};
  CHECK(sup_product_unconstrained(HermitianOperator::diagonal(kTwoQubits, diag), cfg)
            .value == doctest::Approx(0.7).epsilon(1e-12));

  const Bench b;
  const auto r = sup_product_unconstrained(b.ex.test, cfg);
  CHECK(std::abs(r.value - 4.0 / 9.0) < 1e-12);
  CHECK(r.converged);
  const Ket xi = Ket::normalized(xi_plus(2.0 / 3.0));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(r.argmax.a[i] - xi[i]) < 1e-6);
    CHECK(std::abs(r.argmax.b[i] - xi[i]) < 1e-6);
  }
}

TEST_CASE("constrained supremum") {
  const OptimizerConfig cfg;
  const Bench b;

  const auto geq = sup_product_constrained(b.ex.test, b.spec, HalfSpaceSide::Geq, cfg);
  CHECK(std::abs(geq.value - 4.0 / 9.0) < 1e-12);
  CHECK(!geq.boundary_active);
  CHECK(geq.constraint_value == doctest::Approx(1.0 / 36.0).epsilon(1e-9));

  const auto leq = sup_product_constrained(b.ex.test, b.spec, HalfSpaceSide::Leq, cfg);
  CHECK(std::abs(leq.value - kPcL) < 1e-10);
  CHECK(leq.boundary_active);
  CHECK(leq.constraint_value <= 0.01 + cfg.feas_tol);

  // Self-constraint: sup Tr(L rho) subject to Tr(L rho) <= c is c.
  const ConstraintSpec self{b.ex.test, 0.2};
  const auto s = sup_product_constrained(b.ex.test, self, HalfSpaceSide::Leq, cfg);
  CHECK(s.value == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(s.boundary_active);

  const ConstraintSpec impossible{b.ex.constraint, -0.1};
  CHECK(code_of([&] {
          sup_product_constrained(b.ex.test, impossible, HalfSpaceSide::Leq, cfg);
        }) == ErrorCode::kEmptyFeasibleSet);
}

TEST_CASE("constrained supremum agrees with the grid oracle") {
  const OptimizerConfig cfg;
  const Bench b;
  const double grid = grid_oracle_sup(
      b.ex.test, ConstraintSide{b.spec, HalfSpaceSide::Leq}, GridResolution{61, 120});
  CHECK(grid <= kPcL + 1e-12);
  CHECK(grid >= kPcL - 5e-3);
}

TEST_CASE("constrained supremum dominates feasible samples") {
  std::mt19937_64 rng(37);
  OptimizerConfig cfg;
  cfg.restarts = 16;
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}}) {
    const auto l = random_hermitian(dims, rng);
    const auto c = random_hermitian(dims, rng);
    const ConstraintSpec spec{c, 0.0};
    for (HalfSpaceSide side : {HalfSpaceSide::Leq, HalfSpaceSide::Geq}) {
      const auto r = sup_product_constrained(l, spec, side, cfg);
      const double t = expectation(c, r.argmax);
      CHECK((side == HalfSpaceSide::Leq ? t <= cfg.feas_tol : t >= -cfg.feas_tol));
      double best = -1e300;
      for (int i = 0; i < 20000; ++i) {
        const ProductKet k = random_product_ket(dims, rng);
        const double tk = expectation(c, k);
        if (side == HalfSpaceSide::Leq ? tk <= 0.0 : tk >= 0.0)
          best = std::max(best, expectation(l, k));
      }
      CHECK(r.value >= best - 1e-9);
    }
  }
}

TEST_CASE("exact inner solve matches brute force in dimension 3") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const Dims d{3, 1};
    const auto l = random_hermitian(d, rng);
    const auto c = random_hermitian(d, rng);
    const double cv = 0.1 * (t - 5);
    for (HalfSpaceSide side : {HalfSpaceSide::Leq, HalfSpaceSide::Geq}) {
      const InnerSolution s = constrained_top(l, c, cv, side);
      double best = -1e300;
      for (int i = 0; i < 50000; ++i) {
        const Ket k = random_ket(3, rng);
        const double tk = expectation(c, k);
        if (side == HalfSpaceSide::Leq ? tk <= cv : tk >= cv)
          best = std::max(best, expectation(l, k));
      }
      if (best == -1e300) {
        CHECK(!s.feasible);
        continue;
      }
      REQUIRE(s.feasible);
      CHECK(s.value >= best - 1e-9);
      CHECK(expectation(l, s.vector) == doctest::Approx(s.value).epsilon(1e-9));
      const double tv = expectation(c, s.vector);
      CHECK((side == HalfSpaceSide::Leq ? tv <= cv + 1e-9 : tv >= cv - 1e-9));
      // Sampling can only approach the true maximum from below.
      CHECK(s.value <= best + 0.05 * (1.0 + std::abs(best)));
    }
  }
}

TEST_CASE("grid oracle") {
  CHECK(grid_oracle_sup(HermitianOperator::identity(kTwoQubits), std::nullopt,
                        GridResolution{5, 4}) == doctest::Approx(1.0));
  const Bench b;
  const double g = grid_oracle_sup(b.ex.test, std::nullopt, GridResolution{181, 360});
  CHECK(std::abs(g - 4.0 / 9.0) <= 1e-3);
  CHECK(g <= 4.0 / 9.0 + 1e-12);

  // Refining a grid (2n - 1 polar points, 2m azimuthal) keeps the old points.
  std::mt19937_64 rng(43);
  for (int t = 0; t < 5; ++t) {
    const auto l = random_hermitian(kTwoQubits, rng);
    const double coarse = grid_oracle_sup(l, std::nullopt, GridResolution{11, 12});
    const double fine = grid_oracle_sup(l, std::nullopt, GridResolution{21, 24});
    CHECK(fine >= coarse - 1e-15);
  }
  CHECK_THROWS_AS(grid_oracle_sup(HermitianOperator::identity(Dims{3, 4}), std::nullopt,
                                  GridResolution{}),
                  Error);
}

TEST_CASE("optimizer is deterministic") {
  std::mt19937_64 rng(47);
  const auto l = random_hermitian(Dims{2, 3}, rng);
  const auto c = random_hermitian(Dims{2, 3}, rng);
  OptimizerConfig one;
  one.seed = 9;
  one.threads = 1;
  OptimizerConfig many = one;
  many.threads = 4;
  const auto r1 = sup_product_unconstrained(l, one);
  const auto r2 = sup_product_unconstrained(l, many);
  CHECK(r1.value == r2.value);
  CHECK(r1.argmax == r2.argmax);
  const ConstraintSpec spec{c, 0.0};
  const auto c1 = sup_product_constrained(l, spec, HalfSpaceSide::Leq, one);
  const auto c2 = sup_product_constrained(l, spec, HalfSpaceSide::Leq, many);
  CHECK(c1.value == c2.value);
  CHECK(c1.argmax == c2.argmax);
}

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = OptimizerConfig{};
  cfg.seesaw_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("case classification") {
  const OptimizerConfig cfg;
  const Bench b;
  CHECK(classify_case(b.ex.test, b.spec, cfg) == CaseLabel::CaseI);

  const ConstraintSpec vacuous{HermitianOperator::zero(kTwoQubits), -1.0};
  CHECK(classify_case(b.ex.test, vacuous, cfg) == CaseLabel::CaseI);

  const ConstraintSpec self{b.ex.test, 0.2};
  const CaseLabel label = classify_case(b.ex.test, self, cfg);
  CHECK((label == CaseLabel::Degenerate || label == CaseLabel::CaseII));

  const Swapped s;
  CHECK(classify_case(s.l(), s.spec, cfg) == CaseLabel::CaseII);

  // The optimum of L strictly inside S_c violates the standing assumption.
  const ConstraintSpec high{b.ex.constraint, 0.5};
  CHECK(code_of([&] { classify_case(b.ex.test, high, cfg); }) ==
        ErrorCode::kAssumptionViolated);
}

TEST_CASE("alpha_0") {
  const OptimizerConfig cfg;
  const Bench b;
  CHECK(!compute_alpha0(b.ex.test, b.spec, cfg).has_value());

  const Swapped s;
  const double pc =
      sup_product_constrained(s.l(), s.spec, HalfSpaceSide::Leq, cfg).value;
  CHECK(std::abs(pc - kSwappedPc) < 1e-10);
  const auto a0 = compute_alpha0(s.l(), s.spec, cfg);
  REQUIRE(a0.has_value());
  CHECK(std::abs(*a0 - kSwappedAlpha0) < 1e-4);
  CHECK(alpha_feasible(s.l(), s.spec, pc, *a0 + 1e-3, cfg));
  CHECK(!alpha_feasible(s.l(), s.spec, pc, *a0 - 1e-3, cfg));
}

TEST_CASE("affine identity for the constrained bound") {
  const OptimizerConfig cfg;
  const Bench b;
  CHECK(lemma31_residual(b.ex.test, b.spec, 0.0, cfg).residual == 0.0);
  for (double alpha : {-1.0, -10.0}) {
    const Lemma31Check check = lemma31_residual(b.ex.test, b.spec, alpha, cfg);
    CHECK(check.residual <= 1e-6);
    CHECK(check.hypothesis_holds);
  }
}

TEST_CASE("angle parametrization") {
  const double angles[] = {M_PI, 0.0};
  const Ket k = ket_from_angles(angles, 2);
  CHECK(std::abs(std::abs(k[1]) - 1.0) < 1e-15);
  const double zero[] = {0.0, 0.0, 0.0, 0.0};
  CHECK(ket_from_angles(zero, 3) == Ket::basis(3, 0));
}
