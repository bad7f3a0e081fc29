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

#include "doctest.h"
#include "uew/analysis.hpp"
#include "uew/error.hpp"

using namespace uew;

namespace {

const Dims kTwoQubits{2, 2};
constexpr double kPcL = 0.43053975315279;

// Thresholds after flooring to three decimals.
double floored(const std::optional<double>& p) { return truncate_decimals(*p, 3); }

}  // namespace

TEST_CASE("threshold scans") {
  const Example31Setup s = make_example31({});
  const Witness w1 = build_v_alpha(s.spec, s.example.test, kPcL, -1.0).witness;
  const auto p1 = threshold_scan(s.family, w1, s.spec, HalfSpaceSide::Leq, 1e-4);
  REQUIRE(p1.has_value());
  CHECK(std::abs(*p1 - 0.004) <= 1e-3);
  CHECK(floored(p1) == doctest::Approx(0.004));

  const Witness w0 = build_v_alpha(s.spec, s.example.test, kPcL, 0.0).witness;
  CHECK(!threshold_scan(s.family, w0, s.spec, HalfSpaceSide::Leq, 1e-4).has_value());

  const Witness lim = build_minus_inf(s.spec, s.example.test, kPcL);
  const auto pinf = threshold_scan(s.family, lim, s.spec, HalfSpaceSide::Leq, 1e-4);
  REQUIRE(pinf.has_value());
  CHECK(std::abs(*pinf - 0.010) <= 1e-3);

  CHECK_THROWS_AS(threshold_scan(s.family, w1, s.spec, HalfSpaceSide::Leq, 0.01), Error);
}

TEST_CASE("bisection agrees with the affine root") {
  // The witness expectation is affine in p, so the crossing has a closed form.
  const Example31Setup s = make_example31({});
  for (double alpha : {-0.5, -1.0, -5.0}) {
    const Witness w = build_v_alpha(s.spec, s.example.test, kPcL, alpha).witness;
    const double f0 = w.expectation(s.family.member(0.0));
    const double f1 = w.expectation(s.family.member(1.0));
    const double root = f0 / (f0 - f1);
    const double resolution = 1e-4;
    const auto p = threshold_scan(s.family, w, s.spec, HalfSpaceSide::Leq, resolution);
    REQUIRE(p.has_value());
    CHECK(*p <= root);
    CHECK(root - *p <= resolution / 10.0 + 1e-12);
  }
}

TEST_CASE("alpha sweep") {
  const Example31Setup s = make_example31({});
  const OptimizerConfig cfg;
  const std::vector<double> alphas = {0.0, -1.0, -10.0, -100.0, kMinusInfinity};
  const auto rows = alpha_sweep(s.example.test, s.spec, alphas, s.family, cfg);
  REQUIRE(rows.size() == 5);
  CHECK(!rows[0].threshold_p.has_value());
  const double expected[] = {0.004, 0.009, 0.010, 0.010};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].threshold_p.has_value());
    CHECK(std::abs(*rows[i].threshold_p - expected[i - 1]) <= 1e-3);
    CHECK(floored(rows[i].threshold_p) == doctest::Approx(expected[i - 1]));
    CHECK(*rows[i].threshold_p >= rows[i - 1].threshold_p.value_or(0.0));
  }
  CHECK(rows[4].bound == doctest::Approx(kPcL - 0.01).epsilon(1e-10));

  const auto single = alpha_sweep(s.example.test, s.spec, {0.0}, s.family, cfg);
  REQUIRE(single.size() == 1);
  const Witness w0{kPcL, s.example.test};
  CHECK(single[0].threshold_p ==
        threshold_scan(s.family, w0, s.spec, HalfSpaceSide::Leq, 1e-4));

  CHECK_THROWS_AS(alpha_sweep(s.example.test, s.spec, {2.0}, s.family, cfg), Error);
  const ConstraintSpec same{s.example.test, 0.01};
  CHECK_THROWS_AS(alpha_sweep(s.example.test, same, {0.0}, s.family, cfg), Error);
}

TEST_CASE("alpha = 0 detects nothing at any noise level") {
  const Example31Setup s = make_example31({});
  const Witness w0{kPcL, s.example.test};
  for (int k = 0; k <= 10000; ++k) {
    CHECK_FALSE(fires(s.family.member(k * 1e-4), w0, s.spec, HalfSpaceSide::Leq));
  }
}

TEST_CASE("plane samples") {
  const Example31Setup s = make_example31({});
  const Ket xi = Ket::normalized(xi_plus(2.0 / 3.0));
  const double w = 0.01 / (4.0 / 9.0);
  const double diag[] = {1.0 - w, 0.0, 0.0, w};
  const std::vector<LabeledState> states = {
      {"mixed", DensityMatrix::maximally_mixed(kTwoQubits)},
      {"boundary", DensityMatrix::from_operator(
                       HermitianOperator::diagonal(kTwoQubits, diag))},
      {"xi", DensityMatrix::pure(tensor_product(xi, xi), kTwoQubits)}};
  const auto samples = plane_samples(states, s.spec, s.example.test);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].label == "mixed");
  CHECK(samples[0].x == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(samples[0].y == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(samples[1].x == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(samples[2].x == doctest::Approx(1.0 / 36.0).epsilon(1e-13));
  CHECK(samples[2].y == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("witness pair from direct bounds") {
  const Example31Setup s = make_example31({});
  const OptimizerConfig cfg;
  const UewPair pair = build_alpha_pair(s.example.test, s.spec, -1.0, cfg);
  CHECK(pair.w_c.bound == doctest::Approx(2.0 * kPcL - 0.01).epsilon(1e-9));
  CHECK(detect(s.family.member(0.0), pair).entangled());
  CHECK(!detect(s.family.member(0.02), pair).entangled());

  const UewPair lim = build_alpha_pair(s.example.test, s.spec, kMinusInfinity, cfg);
  CHECK(detect(s.family.member(0.0), lim).entangled());
}

TEST_CASE("decimal truncation") {
  CHECK(truncate_decimals(0.0046, 3) == doctest::Approx(0.004));
  CHECK(truncate_decimals(0.0099999, 3) == doctest::Approx(0.009));
  CHECK(truncate_decimals(0.010, 3) == doctest::Approx(0.010));
}
