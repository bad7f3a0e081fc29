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

// Noise-threshold scans, alpha sweeps and expectation-plane samples.

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uew/optimize.hpp"
#include "uew/states.hpp"
#include "uew/witness.hpp"

namespace uew {

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

struct SweepRow {
  /// kMinusInfinity selects the limit witness (p_c - c) I - (L - C).
  double alpha = 0.0;
  double bound = 0.0;
  /// Largest p with [0, p] detected; nullopt when p = 0 is not detected.
  std::optional<double> threshold_p;
  bool detected_at_zero = false;
};

struct PlaneSample {
  std::string label;
  double x = 0.0;  // Tr(C rho)
  double y = 0.0;  // Tr(L rho)
};

struct LabeledState {
  std::string label;
  DensityMatrix state;
};

/// True when rho lies on `side` of the constraint (boundary tolerance
/// included) and the witness expectation is below -1e-10.
bool fires(const DensityMatrix& rho, const Witness& witness,
           const ConstraintSpec& spec, HalfSpaceSide side);

/// Largest p* such that every sampled p <= p* fires, found by a scan at
/// `resolution` (<= 1e-3) and bisection to resolution / 10.
std::optional<double> threshold_scan(const NoisyStateFamily& family,
                                     const Witness& witness,
                                     const ConstraintSpec& spec,
                                     HalfSpaceSide side, double resolution);

/// One row per alpha, in input order, built from V_alpha (or the limit
/// witness for kMinusInfinity) on the S_c side.
std::vector<SweepRow> alpha_sweep(const HermitianOperator& l,
                                  const ConstraintSpec& spec,
                                  const std::vector<double>& alphas,
                                  const NoisyStateFamily& family,
                                  const OptimizerConfig& cfg,
                                  double resolution = 1e-4);

std::vector<PlaneSample> plane_samples(const std::vector<LabeledState>& states,
                                       const ConstraintSpec& spec,
                                       const HermitianOperator& l);

/// Witness pair for the rotated test operator N_alpha (L - C when alpha is
/// kMinusInfinity), with both bounds computed directly by the constrained
/// optimizer. Valid for any input, not only when the rotation identity holds.
UewPair build_alpha_pair(const HermitianOperator& l, const ConstraintSpec& spec,
                         double alpha, const OptimizerConfig& cfg);

/// floor(v * 10^decimals) / 10^decimals, robust to representation error.
double truncate_decimals(double v, int decimals);

/// The benchmark sweep: the two-qubit instance at the given x and c.
struct Example31Setup {
  Example31 example;
  ConstraintSpec spec;
  NoisyStateFamily family;
};

Example31Setup make_example31(const Example31Config& cfg);

}  // namespace uew
