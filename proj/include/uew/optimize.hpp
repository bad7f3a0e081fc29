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

// Suprema of <a,b|L|a,b> over pure product states, optionally restricted to
// one side of a constraint half-space:
//
//   g_s(L)  = sup <a,b|L|a,b>
//   p_c(L)  = sup { <a,b|L|a,b> : <a,b|C|a,b> <= c }
//   p_c~(L) = sup { <a,b|L|a,b> : <a,b|C|a,b> >= c }
//
// The unconstrained problem is solved by see-saw iteration: with one party
// fixed the objective is a Hermitian quadratic form in the other, maximized
// exactly by its top eigenvector. The constrained problem keeps that
// structure: for fixed |a>, maximizing <b|L_a|b> subject to <b|C_a|b> <= c is
// solved exactly (closed form on the Bloch sphere for qubits, a one-parameter
// Lagrangian dual otherwise), and the outer search runs over |a> only.
//
// All searches are deterministic given OptimizerConfig::seed, independent of
// the number of worker threads.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uew/linalg.hpp"
#include "uew/states.hpp"
#include "uew/witness.hpp"

namespace uew {

struct OptimizerConfig {
  int restarts = 64;
  int grid_theta = 181;
  int grid_phi = 360;
  double seesaw_tol = 1e-11;
  int seesaw_max_iter = 500;
  double feas_tol = 1e-9;
  std::uint64_t seed = 0;
  /// Worker threads for restarts and grid shards; 0 picks the hardware count.
  unsigned threads = 0;

  void validate() const;
};

enum class Method { Seesaw, Grid, Hybrid };

const char* to_string(Method method);

struct OptimizationResult {
  double value = 0.0;
  ProductKet argmax{Ket::basis(1, 0), Ket::basis(1, 0)};
  /// <argmax|C|argmax> for constrained runs, NaN otherwise.
  double constraint_value = 0.0;
  bool converged = false;
  int iterations = 0;
  Method method = Method::Seesaw;
  bool boundary_active = false;
};

enum class CaseLabel { CaseI, CaseII, Degenerate };

const char* to_string(CaseLabel label);

/// A single see-saw run from `start`. When `trace` is given, the objective
/// after every half-step is appended to it.
OptimizationResult seesaw(const HermitianOperator& l, const ProductKet& start,
                          const OptimizerConfig& cfg,
                          std::vector<double>* trace = nullptr);

/// g_s(L): best of cfg.restarts seeded see-saw runs. `converged` is false
/// only when no run met seesaw_tol within seesaw_max_iter.
OptimizationResult sup_product_unconstrained(const HermitianOperator& l,
                                             const OptimizerConfig& cfg);

/// p_c(L) for side Leq, p_c~(L) for side Geq. Throws kEmptyFeasibleSet when
/// no product state satisfies the constraint.
OptimizationResult sup_product_constrained(const HermitianOperator& l,
                                           const ConstraintSpec& spec,
                                           HalfSpaceSide side,
                                           const OptimizerConfig& cfg);

/// Exact max of <b|L|b> over unit b with <b|C|b> on the given side of c.
struct InnerSolution {
  bool feasible = false;
  double value = 0.0;
  Ket vector = Ket::basis(1, 0);
};

InnerSolution constrained_top(const HermitianOperator& l,
                              const HermitianOperator& c, double cvalue,
                              HalfSpaceSide side);

/// Single-party ket from polar angles theta_1..theta_{d-1} followed by
/// phases phi_1..phi_{d-1}; for d = 2 this is
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
Ket ket_from_angles(std::span<const double> angles, std::size_t dim);

struct GridResolution {
  int theta = 181;
  int phi = 360;
};

struct ConstraintSide {
  ConstraintSpec spec;
  HalfSpaceSide side = HalfSpaceSide::Leq;
};

/// Brute-force reference for small systems (total dimension <= 9). Party A is
/// scanned over the angle grid. For an unconstrained qubit party B the inner
/// maximum is the closed-form top eigenvalue; otherwise B is scanned over the
/// same grid. Returns -infinity when no grid point is feasible.
double grid_oracle_sup(const HermitianOperator& l,
                       const std::optional<ConstraintSide>& constraint,
                       GridResolution resolution);

/// CaseI when the optimum of L - C lies in S_c~, CaseII when it lies in S_c,
/// Degenerate when an optimum sits on the boundary or optima exist on both
/// sides. Throws AssumptionViolated if the optimum of L is strictly in S_c.
CaseLabel classify_case(const HermitianOperator& l, const ConstraintSpec& spec,
                        const OptimizerConfig& cfg);

/// F(alpha): V_alpha is non-negative on S_sep:c, i.e.
/// sup_{S_sep:c} <N_alpha> <= alpha*c + (1 - alpha)*p_c(L), checked on the
/// normalized operator N_alpha / (1 - alpha) with slack
/// kAlphaFeasibilitySlack * max(1, max|L_ij|). The gap usually leaves zero
/// quadratically at alpha_0, so the slack shifts alpha_0 by O(sqrt(slack)).
inline constexpr double kAlphaFeasibilitySlack = 1e-12;
bool alpha_feasible(const HermitianOperator& l, const ConstraintSpec& spec,
                    double p_c, double alpha, const OptimizerConfig& cfg);

/// Smallest alpha < 1 for which V_alpha is a valid witness on S_sep:c, located
/// by bisection to width 1e-6 and returned at the feasible end. Returns
/// nullopt when F(bracket_min) already holds (no finite alpha0).
std::optional<double> compute_alpha0(const HermitianOperator& l,
                                     const ConstraintSpec& spec,
                                     const OptimizerConfig& cfg,
                                     double bracket_min = -1e6);

struct Lemma31Check {
  double residual = 0.0;
  /// Unconstrained optima of L and N_alpha both lie in S_c~.
  bool hypothesis_holds = false;
};

/// |p_c(N_alpha) - (alpha*c + (1 - alpha)*p_c(L))| with both suprema computed
/// by the constrained optimizer.
Lemma31Check lemma31_residual(const HermitianOperator& l,
                              const ConstraintSpec& spec, double alpha,
                              const OptimizerConfig& cfg);

}  // namespace uew
