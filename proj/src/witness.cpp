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

#include "uew/witness.hpp"

#include <cmath>

#include "uew/error.hpp"

namespace uew {

const char* to_string(HalfSpaceSide side) {
  switch (side) {
    case HalfSpaceSide::Leq:
      return "leq";
    case HalfSpaceSide::Geq:
      return "geq";
    case HalfSpaceSide::Boundary:
      return "boundary";
  }
  return "?";
}

HermitianOperator Witness::as_operator() const {
  return combine(bound, HermitianOperator::identity(test.dims()), -1.0, test);
}

double Witness::expectation(const DensityMatrix& rho) const {
  return bound * rho.op().trace() - uew::expectation(test, rho);
}

double Witness::expectation(const ProductKet& k) const {
  return bound - uew::expectation(test, k);
}

void require_distinct(const HermitianOperator& c, const HermitianOperator& l) {
  if (c.dim() == l.dim() && c.max_abs_diff(l) == 0.0) {
    fail(ErrorCode::kInvalidArgument,
         "constraint and test operators must differ (C != L)");
  }
}

HermitianOperator combine_alpha(const ConstraintSpec& spec,
                                const HermitianOperator& l, double alpha) {
  if (!(alpha < 1.0)) fail(ErrorCode::kInvalidArgument, "alpha must be < 1");
  if (spec.op.dim() != l.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "constraint and test operators differ in dimension");
  }
  if (alpha == 0.0) return l;
  return combine(alpha, spec.op, 1.0 - alpha, l).with_dims(l.dims());
}

Witness build_few(const HermitianOperator& l, double g_s) {
  return Witness{g_s, l};
}

AlphaWitness build_v_alpha(const ConstraintSpec& spec,
                           const HermitianOperator& l, double p_c,
                           double alpha) {
  HermitianOperator n = combine_alpha(spec, l, alpha);
  const double bound = alpha * spec.value + (1.0 - alpha) * p_c;
  return AlphaWitness{alpha, spec, l, p_c, Witness{bound, std::move(n)}};
}

Witness build_minus_inf(const ConstraintSpec& spec, const HermitianOperator& l,
                        double p_c) {
  if (spec.op.dim() != l.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "constraint and test operators differ in dimension");
  }
  return Witness{p_c - spec.value, (l - spec.op).with_dims(l.dims())};
}

UewPair build_pair(const ConstraintSpec& spec, const HermitianOperator& test,
                   double p_c, double p_ctilde) {
  if (spec.op.dim() != test.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "constraint and test operators differ in dimension");
  }
  return UewPair{Witness{p_c, test}, Witness{p_ctilde, test}, spec};
}

HalfSpaceSide halfspace_membership(const DensityMatrix& rho,
                                   const ConstraintSpec& spec) {
  const double t = expectation(spec.op, rho);
  if (t < spec.value - kBoundaryTolerance) return HalfSpaceSide::Leq;
  if (t > spec.value + kBoundaryTolerance) return HalfSpaceSide::Geq;
  return HalfSpaceSide::Boundary;
}

Verdict detect(const DensityMatrix& rho, const UewPair& pair) {
  const HalfSpaceSide side = halfspace_membership(rho, pair.constraint);
  double value = 0.0;
  switch (side) {
    case HalfSpaceSide::Leq:
      value = pair.w_c.expectation(rho);
      break;
    case HalfSpaceSide::Geq:
      value = pair.w_ctilde.expectation(rho);
      break;
    case HalfSpaceSide::Boundary:
      value = std::min(pair.w_c.expectation(rho), pair.w_ctilde.expectation(rho));
      break;
  }
  const VerdictKind kind = value < -kDetectionTolerance
                               ? VerdictKind::Entangled
                               : VerdictKind::NotDetected;
  return Verdict{kind, side, value};
}

}  // namespace uew
