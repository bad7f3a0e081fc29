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

// Witness algebra. A witness is stored as a bound b and a test operator T and
// represents b*I - T; a state is flagged when its expectation is negative.
//
// A constraint operator C and value c split state space into the half-spaces
// S_c = {rho : Tr(rho C) <= c} and S_c~ = {rho : Tr(rho C) >= c}. An
// ultrafine witness pairs one bound per half-space; the rotated family uses
// the test operator N_alpha = alpha*C + (1 - alpha)*L for alpha < 1.

#pragma once

#include "uew/linalg.hpp"
#include "uew/states.hpp"

namespace uew {

inline constexpr double kBoundaryTolerance = 1e-9;
inline constexpr double kDetectionTolerance = 1e-10;

enum class HalfSpaceSide { Leq, Geq, Boundary };

const char* to_string(HalfSpaceSide side);

struct ConstraintSpec {
  HermitianOperator op;
  double value = 0.0;
};

struct Witness {
  double bound = 0.0;
  HermitianOperator test;

  HermitianOperator as_operator() const;
  double expectation(const DensityMatrix& rho) const;
  double expectation(const ProductKet& k) const;
};

/// V_alpha = (alpha*c + (1 - alpha)*p_c(L)) I - N_alpha.
struct AlphaWitness {
  double alpha = 0.0;
  ConstraintSpec base;
  HermitianOperator test_l;
  double p_c_of_l = 0.0;
  Witness witness;
};

/// One witness per half-space, sharing a test operator.
struct UewPair {
  Witness w_c;
  Witness w_ctilde;
  ConstraintSpec constraint;
};

enum class VerdictKind { Entangled, NotDetected };

struct Verdict {
  VerdictKind kind = VerdictKind::NotDetected;
  HalfSpaceSide side_used = HalfSpaceSide::Boundary;
  /// Expectation of the witness that decided the verdict (the smaller one on
  /// the boundary).
  double witness_value = 0.0;

  bool entangled() const { return kind == VerdictKind::Entangled; }
};

/// Throws kInvalidArgument when C and L coincide entrywise.
void require_distinct(const HermitianOperator& c, const HermitianOperator& l);

HermitianOperator combine_alpha(const ConstraintSpec& spec,
                                const HermitianOperator& l, double alpha);

Witness build_few(const HermitianOperator& l, double g_s);

AlphaWitness build_v_alpha(const ConstraintSpec& spec,
                           const HermitianOperator& l, double p_c,
                           double alpha);

/// (p_c - c) I - (L - C), the alpha -> -infinity limit of V_alpha / (-alpha).
Witness build_minus_inf(const ConstraintSpec& spec, const HermitianOperator& l,
                        double p_c);

/// Pairs two bounds for the same test operator.
UewPair build_pair(const ConstraintSpec& spec, const HermitianOperator& test,
                   double p_c, double p_ctilde);

HalfSpaceSide halfspace_membership(const DensityMatrix& rho,
                                   const ConstraintSpec& spec);

Verdict detect(const DensityMatrix& rho, const UewPair& pair);

}  // namespace uew
