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

#include "uew/analysis.hpp"

#include <cmath>

#include "uew/error.hpp"

namespace uew {

bool fires(const DensityMatrix& rho, const Witness& witness,
           const ConstraintSpec& spec, HalfSpaceSide side) {
  const double t = expectation(spec.op, rho);
  const bool in_side = side == HalfSpaceSide::Leq
                           ? t <= spec.value + kBoundaryTolerance
                       : side == HalfSpaceSide::Geq
                           ? t >= spec.value - kBoundaryTolerance
                           : std::abs(t - spec.value) <= kBoundaryTolerance;
  return in_side && witness.expectation(rho) < -kDetectionTolerance;
}

std::optional<double> threshold_scan(const NoisyStateFamily& family,
                                     const Witness& witness,
                                     const ConstraintSpec& spec,
                                     HalfSpaceSide side, double resolution) {
  if (!(resolution > 0.0 && resolution <= 1e-3)) {
    fail(ErrorCode::kInvalidArgument, "scan resolution must be in (0, 1e-3]");
  }
  auto at = [&](double p) {
    return fires(family.member(std::min(p, 1.0)), witness, spec, side);
  };
  if (!at(0.0)) return std::nullopt;
  const auto steps = static_cast<long>(std::ceil(1.0 / resolution - 1e-9));
  double good = 0.0;
  double bad = -1.0;
  for (long k = 1; k <= steps; ++k) {
    const double p = std::min(1.0, static_cast<double>(k) * resolution);
    if (!at(p)) {
      bad = p;
      break;
    }
    good = p;
  }
  if (bad < 0.0) return 1.0;
  while (bad - good > resolution / 10.0) {
    const double mid = 0.5 * (good + bad);
    if (at(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

std::vector<SweepRow> alpha_sweep(const HermitianOperator& l,
                                  const ConstraintSpec& spec,
                                  const std::vector<double>& alphas,
                                  const NoisyStateFamily& family,
                                  const OptimizerConfig& cfg,
                                  double resolution) {
  for (double a : alphas) {
    if (!(a < 1.0) || std::isnan(a)) {
      fail(ErrorCode::kInvalidArgument, "every alpha must be < 1");
    }
  }
  require_distinct(spec.op, l);
  const double p_c =
      sup_product_constrained(l, spec, HalfSpaceSide::Leq, cfg).value;
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    const Witness w = std::isinf(a) ? build_minus_inf(spec, l, p_c)
                                    : build_v_alpha(spec, l, p_c, a).witness;
    SweepRow row;
    row.alpha = a;
    row.bound = w.bound;
    row.threshold_p =
        threshold_scan(family, w, spec, HalfSpaceSide::Leq, resolution);
    row.detected_at_zero = row.threshold_p.has_value();
    rows.push_back(row);
  }
  return rows;
}

std::vector<PlaneSample> plane_samples(const std::vector<LabeledState>& states,
                                       const ConstraintSpec& spec,
                                       const HermitianOperator& l) {
  std::vector<PlaneSample> out;
  out.reserve(states.size());
  for (const LabeledState& s : states) {
    out.push_back(PlaneSample{s.label, expectation(spec.op, s.state),
                              expectation(l, s.state)});
  }
  return out;
}

UewPair build_alpha_pair(const HermitianOperator& l, const ConstraintSpec& spec,
                         double alpha, const OptimizerConfig& cfg) {
  require_distinct(spec.op, l);
  const HermitianOperator test =
      std::isinf(alpha) && alpha < 0 ? (l - spec.op).with_dims(l.dims())
                                     : combine_alpha(spec, l, alpha);
  const double p_c =
      sup_product_constrained(test, spec, HalfSpaceSide::Leq, cfg).value;
  const double p_ct =
      sup_product_constrained(test, spec, HalfSpaceSide::Geq, cfg).value;
  return build_pair(spec, test, p_c, p_ct);
}

double truncate_decimals(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(v * scale + 1e-9) / scale;
}

Example31Setup make_example31(const Example31Config& cfg) {
  Example31 ex = build_example31(cfg);
  ConstraintSpec spec{ex.constraint, cfg.c};
  NoisyStateFamily family = NoisyStateFamily::from_ket(ex.phi, Dims{2, 2});
  return Example31Setup{std::move(ex), std::move(spec), std::move(family)};
}

}  // namespace uew
