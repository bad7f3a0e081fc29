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

#include "uew/uew.h"

#include <cmath>
#include <new>
#include <string>
#include <vector>

#include "uew/analysis.hpp"
#include "uew/error.hpp"
#include "uew/io.hpp"

#ifndef UEW_VERSION_STRING
#define UEW_VERSION_STRING "0.0.0"
#endif

struct uew_operator {
  uew::HermitianOperator op;
};
struct uew_state {
  uew::DensityMatrix rho;
};
struct uew_result {
  uew::OptimizationResult r;
};
struct uew_text {
  std::string s;
};

namespace {

thread_local std::string g_last_error;

uew_status set_error(uew_status status, const char* msg) {
  g_last_error = msg;
  return status;
}

template <typename Fn>
uew_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return UEW_OK;
  } catch (const uew::Error& e) {
    return set_error(static_cast<uew_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(UEW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(UEW_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(UEW_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
void need(const T* p, const char* what) {
  if (p == nullptr) {
    uew::fail(uew::ErrorCode::kInvalidArgument,
              std::string(what) + " must not be null");
  }
}

uew::OptimizerConfig to_config(const uew_config* cfg) {
  uew::OptimizerConfig out;
  if (cfg != nullptr) {
    out.restarts = cfg->restarts;
    out.grid_theta = cfg->grid_theta;
    out.grid_phi = cfg->grid_phi;
    out.seesaw_tol = cfg->seesaw_tol;
    out.seesaw_max_iter = cfg->seesaw_max_iter;
    out.feas_tol = cfg->feas_tol;
    out.seed = cfg->seed;
    out.threads = cfg->threads;
  }
  out.validate();
  return out;
}

uew::HalfSpaceSide to_side(uew_side side) {
  switch (side) {
    case UEW_SIDE_LEQ:
      return uew::HalfSpaceSide::Leq;
    case UEW_SIDE_GEQ:
      return uew::HalfSpaceSide::Geq;
    case UEW_SIDE_BOUNDARY:
      return uew::HalfSpaceSide::Boundary;
  }
  uew::fail(uew::ErrorCode::kInvalidArgument, "unknown side");
}

uew::ConstraintSpec spec_for(const uew_operator* constraint,
                             const uew_operator* test, double cvalue) {
  need(constraint, "constraint");
  need(test, "test");
  if (!(constraint->op.dims() == test->op.dims())) {
    uew::fail(uew::ErrorCode::kDimensionMismatch,
              "constraint and test operators have different dims");
  }
  if (!std::isfinite(cvalue)) {
    uew::fail(uew::ErrorCode::kInvalidArgument, "cvalue must be finite");
  }
  return uew::ConstraintSpec{constraint->op, cvalue};
}

void copy_ket(const uew::Ket& k, double* buf, std::size_t len) {
  if (len < 2 * k.dim()) {
    uew::fail(uew::ErrorCode::kDimensionMismatch, "argmax buffer too small");
  }
  for (std::size_t i = 0; i < k.dim(); ++i) {
    buf[2 * i] = k[i].real();
    buf[2 * i + 1] = k[i].imag();
  }
}

}  // namespace

extern "C" {

const char* uew_version(void) { return UEW_VERSION_STRING; }

const char* uew_last_error(void) { return g_last_error.c_str(); }

const char* uew_status_name(uew_status status) {
  switch (status) {
    case UEW_OK: return "Ok";
    case UEW_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case UEW_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case UEW_ERR_NOT_HERMITIAN: return "NotHermitian";
    case UEW_ERR_NOT_STATE: return "NotState";
    case UEW_ERR_PARSE: return "Parse";
    case UEW_ERR_IO: return "Io";
    case UEW_ERR_NON_CONVERGENCE: return "NonConvergence";
    case UEW_ERR_EMPTY_FEASIBLE_SET: return "EmptyFeasibleSet";
    case UEW_ERR_ASSUMPTION_VIOLATED: return "AssumptionViolated";
    case UEW_ERR_BRACKET: return "Bracket";
    case UEW_ERR_TOO_LARGE: return "TooLarge";
    case UEW_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void uew_config_default(uew_config* cfg) {
  if (cfg == nullptr) return;
  const uew::OptimizerConfig d;
  cfg->restarts = d.restarts;
  cfg->grid_theta = d.grid_theta;
  cfg->grid_phi = d.grid_phi;
  cfg->seesaw_tol = d.seesaw_tol;
  cfg->seesaw_max_iter = d.seesaw_max_iter;
  cfg->feas_tol = d.feas_tol;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
}

uew_status uew_parse_real(const char* text, double* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = uew::parse_real(text);
  });
}

uew_status uew_operator_create(size_t da, size_t db, const double* entries,
                               uew_operator** out) {
  return guarded([&] {
    need(entries, "entries");
    need(out, "out");
    if (da == 0 || db == 0) {
      uew::fail(uew::ErrorCode::kInvalidArgument, "dims must be positive");
    }
    const uew::Dims dims{da, db};
    if (dims.total() > uew::kMaxDimension) {
      uew::fail(uew::ErrorCode::kTooLarge, "operator dimension too large");
    }
    const std::size_t n = dims.total();
    std::vector<uew::Complex> m(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      m[i] = uew::Complex(entries[2 * i], entries[2 * i + 1]);
    }
    *out = new uew_operator{uew::HermitianOperator::from_entries(
        dims, std::move(m), uew::kLoadTolerance)};
  });
}

uew_status uew_operator_load(const char* path, uew_operator** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new uew_operator{uew::read_operator_file(path)};
  });
}

uew_status uew_operator_save(const uew_operator* op, const char* path) {
  return guarded([&] {
    need(op, "op");
    need(path, "path");
    uew::write_text_file(path, uew::operator_to_json(op->op));
  });
}

uew_status uew_operator_dims(const uew_operator* op, size_t* da, size_t* db) {
  return guarded([&] {
    need(op, "op");
    need(da, "da");
    need(db, "db");
    *da = op->op.dims().a;
    *db = op->op.dims().b;
  });
}

uew_status uew_operator_entries(const uew_operator* op, double* buf,
                                size_t len) {
  return guarded([&] {
    need(op, "op");
    need(buf, "buf");
    const auto& e = op->op.entries();
    if (len < 2 * e.size()) {
      uew::fail(uew::ErrorCode::kDimensionMismatch, "entries buffer too small");
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      buf[2 * i] = e[i].real();
      buf[2 * i + 1] = e[i].imag();
    }
  });
}

void uew_operator_free(uew_operator* op) { delete op; }

uew_status uew_state_from_operator(const uew_operator* op, uew_state** out) {
  return guarded([&] {
    need(op, "op");
    need(out, "out");
    *out = new uew_state{uew::DensityMatrix::from_operator(op->op)};
  });
}

uew_status uew_state_load(const char* path, uew_state** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new uew_state{uew::read_state_file(path)};
  });
}

uew_status uew_state_save(const uew_state* state, const char* path) {
  return guarded([&] {
    need(state, "state");
    need(path, "path");
    uew::write_text_file(path, uew::state_to_json(state->rho));
  });
}

uew_status uew_expectation(const uew_operator* op, const uew_state* state,
                           double* out) {
  return guarded([&] {
    need(op, "op");
    need(state, "state");
    need(out, "out");
    *out = uew::expectation(op->op, state->rho);
  });
}

void uew_state_free(uew_state* state) { delete state; }

uew_status uew_example31_create(double x, uew_povm povm,
                                uew_operator** constraint,
                                uew_operator** test) {
  return guarded([&] {
    need(constraint, "constraint");
    need(test, "test");
    uew::Example31Config cfg;
    cfg.x = x;
    cfg.povm = povm == UEW_POVM_AS_PRINTED ? uew::PovmConvention::AsPrinted
                                           : uew::PovmConvention::Complete;
    uew::Example31 ex = uew::build_example31(cfg);
    auto* c = new uew_operator{std::move(ex.constraint)};
    auto* l = new (std::nothrow) uew_operator{std::move(ex.test)};
    if (l == nullptr) {
      delete c;
      throw std::bad_alloc();
    }
    *constraint = c;
    *test = l;
  });
}

uew_status uew_example31_state(double p, uew_state** out) {
  return guarded([&] {
    need(out, "out");
    if (!(p >= 0.0 && p <= 1.0)) {
      uew::fail(uew::ErrorCode::kInvalidArgument, "p must lie in [0, 1]");
    }
    const uew::Example31Config cfg;
    const auto family =
        uew::NoisyStateFamily::from_ket(uew::build_phi(cfg), uew::Dims{2, 2});
    *out = new uew_state{family.member(p)};
  });
}

uew_status uew_sup_unconstrained(const uew_operator* test,
                                 const uew_config* cfg, uew_result** out) {
  return guarded([&] {
    need(test, "test");
    need(out, "out");
    *out = new uew_result{
        uew::sup_product_unconstrained(test->op, to_config(cfg))};
  });
}

uew_status uew_sup_constrained(const uew_operator* test,
                               const uew_operator* constraint, double cvalue,
                               uew_side side, const uew_config* cfg,
                               uew_result** out) {
  return guarded([&] {
    need(out, "out");
    const uew::ConstraintSpec spec = spec_for(constraint, test, cvalue);
    *out = new uew_result{uew::sup_product_constrained(
        test->op, spec, to_side(side), to_config(cfg))};
  });
}

double uew_result_value(const uew_result* r) {
  return r != nullptr ? r->r.value : std::nan("");
}
int uew_result_converged(const uew_result* r) {
  return r != nullptr && r->r.converged ? 1 : 0;
}
int uew_result_boundary_active(const uew_result* r) {
  return r != nullptr && r->r.boundary_active ? 1 : 0;
}
double uew_result_constraint_value(const uew_result* r) {
  return r != nullptr ? r->r.constraint_value : std::nan("");
}
int uew_result_iterations(const uew_result* r) {
  return r != nullptr ? r->r.iterations : 0;
}
const char* uew_result_method(const uew_result* r) {
  return r != nullptr ? uew::to_string(r->r.method) : "";
}

uew_status uew_result_argmax(const uew_result* r, double* a, size_t len_a,
                             double* b, size_t len_b) {
  return guarded([&] {
    need(r, "result");
    need(a, "a");
    need(b, "b");
    copy_ket(r->r.argmax.a, a, len_a);
    copy_ket(r->r.argmax.b, b, len_b);
  });
}

void uew_result_free(uew_result* r) { delete r; }

uew_status uew_classify_case(const uew_operator* test,
                             const uew_operator* constraint, double cvalue,
                             const uew_config* cfg, uew_case* out) {
  return guarded([&] {
    need(out, "out");
    const uew::ConstraintSpec spec = spec_for(constraint, test, cvalue);
    uew::require_distinct(spec.op, test->op);
    switch (uew::classify_case(test->op, spec, to_config(cfg))) {
      case uew::CaseLabel::CaseI:
        *out = UEW_CASE_I;
        break;
      case uew::CaseLabel::CaseII:
        *out = UEW_CASE_II;
        break;
      case uew::CaseLabel::Degenerate:
        *out = UEW_CASE_DEGENERATE;
        break;
    }
  });
}

uew_status uew_compute_alpha0(const uew_operator* test,
                              const uew_operator* constraint, double cvalue,
                              double bracket_min, const uew_config* cfg,
                              int* has_finite, double* alpha0) {
  return guarded([&] {
    need(has_finite, "has_finite");
    need(alpha0, "alpha0");
    const uew::ConstraintSpec spec = spec_for(constraint, test, cvalue);
    uew::require_distinct(spec.op, test->op);
    const uew::OptimizerConfig config = to_config(cfg);
    const auto pc = uew::sup_product_constrained(
        test->op, spec, uew::HalfSpaceSide::Leq, config);
    if (!pc.converged) {
      uew::fail(uew::ErrorCode::kNonConvergence,
                "constrained optimizer did not converge for p_c(L)");
    }
    const auto a0 = uew::compute_alpha0(test->op, spec, config, bracket_min);
    *has_finite = a0.has_value() ? 1 : 0;
    *alpha0 = a0.value_or(-INFINITY);
  });
}

uew_status uew_detect(const uew_state* state, const uew_operator* test,
                      const uew_operator* constraint, double cvalue,
                      double alpha, const uew_config* cfg, uew_verdict* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    const uew::ConstraintSpec spec = spec_for(constraint, test, cvalue);
    if (!(state->rho.dims() == test->op.dims())) {
      uew::fail(uew::ErrorCode::kDimensionMismatch,
                "state and operator dims differ");
    }
    if (std::isnan(alpha) || alpha >= 1.0 ||
        (std::isinf(alpha) && alpha > 0)) {
      uew::fail(uew::ErrorCode::kInvalidArgument, "alpha must be < 1");
    }
    const uew::UewPair pair =
        uew::build_alpha_pair(test->op, spec, alpha, to_config(cfg));
    const uew::Verdict v = uew::detect(state->rho, pair);
    out->entangled = v.entangled() ? 1 : 0;
    out->side_used = v.side_used == uew::HalfSpaceSide::Leq   ? UEW_SIDE_LEQ
                     : v.side_used == uew::HalfSpaceSide::Geq ? UEW_SIDE_GEQ
                                                              : UEW_SIDE_BOUNDARY;
    out->witness_value = v.witness_value;
    out->bound_c = pair.w_c.bound;
    out->bound_ctilde = pair.w_ctilde.bound;
  });
}

uew_status uew_scan_example31_csv(double x, double cvalue, const double* alphas,
                                  size_t count, const uew_config* cfg,
                                  uew_text** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(alphas, "alphas");
    uew::Example31Config ecfg;
    ecfg.x = x;
    ecfg.c = cvalue;
    const uew::Example31Setup setup = uew::make_example31(ecfg);
    const std::vector<double> list(alphas, alphas + count);
    const auto rows = uew::alpha_sweep(setup.example.test, setup.spec, list,
                                       setup.family, to_config(cfg));
    *out = new uew_text{uew::sweep_csv(rows)};
  });
}

uew_status uew_plane_csv(const char* const* labels,
                         const uew_state* const* states, size_t count,
                         const uew_operator* test,
                         const uew_operator* constraint, uew_text** out) {
  return guarded([&] {
    need(out, "out");
    const uew::ConstraintSpec spec = spec_for(constraint, test, 0.0);
    if (count > 0) {
      need(labels, "labels");
      need(states, "states");
    }
    std::vector<uew::LabeledState> list;
    list.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      need(labels[i], "label");
      need(states[i], "state");
      if (!(states[i]->rho.dims() == test->op.dims())) {
        uew::fail(uew::ErrorCode::kDimensionMismatch,
                  std::string(labels[i]) + ": state dims differ from operator");
      }
      list.push_back(uew::LabeledState{labels[i], states[i]->rho});
    }
    *out = new uew_text{uew::plane_csv(uew::plane_samples(list, spec, test->op))};
  });
}

const char* uew_text_data(const uew_text* text) {
  return text != nullptr ? text->s.c_str() : "";
}
size_t uew_text_size(const uew_text* text) {
  return text != nullptr ? text->s.size() : 0;
}
void uew_text_free(uew_text* text) { delete text; }

}  // extern "C"
