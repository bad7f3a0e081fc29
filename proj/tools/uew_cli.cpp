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

// uew_cli: command-line front end over the C API.
//
// Exit codes: 0 ok, 1 input error, 2 non-convergence, 3 empty feasible set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uew/uew.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitInfeasible = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(uew_status s) {
  switch (s) {
    case UEW_OK:
      return kExitOk;
    case UEW_ERR_NON_CONVERGENCE:
      return kExitNonConvergence;
    case UEW_ERR_EMPTY_FEASIBLE_SET:
      return kExitInfeasible;
    default:
      return kExitInput;
  }
}

void check(uew_status s) {
  if (s != UEW_OK) {
    throw Failure{exit_code_for(s),
                  std::string(uew_status_name(s)) + ": " + uew_last_error()};
  }
}

struct OperatorDeleter {
  void operator()(uew_operator* p) const { uew_operator_free(p); }
};
struct StateDeleter {
  void operator()(uew_state* p) const { uew_state_free(p); }
};
struct ResultDeleter {
  void operator()(uew_result* p) const { uew_result_free(p); }
};
struct TextDeleter {
  void operator()(uew_text* p) const { uew_text_free(p); }
};
using OperatorPtr = std::unique_ptr<uew_operator, OperatorDeleter>;
using StatePtr = std::unique_ptr<uew_state, StateDeleter>;
using ResultPtr = std::unique_ptr<uew_result, ResultDeleter>;
using TextPtr = std::unique_ptr<uew_text, TextDeleter>;

OperatorPtr load_operator(const std::string& path) {
  uew_operator* op = nullptr;
  check(uew_operator_load(path.c_str(), &op));
  return OperatorPtr(op);
}

StatePtr load_state(const std::string& path) {
  uew_state* st = nullptr;
  check(uew_state_load(path.c_str(), &st));
  return StatePtr(st);
}

double parse_real(const std::string& text, const char* what) {
  double v = 0.0;
  const uew_status s = uew_parse_real(text.c_str(), &v);
  if (s != UEW_OK) {
    throw Failure{kExitInput, std::string(what) + ": " + uew_last_error()};
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Failure{kExitInput, std::string(what) + ": empty item"};
    out.push_back(parse_real(item, what));
  }
  if (out.empty()) throw Failure{kExitInput, std::string(what) + ": empty list"};
  return out;
}

uew_side parse_side(const std::string& s) {
  if (s == "leq") return UEW_SIDE_LEQ;
  if (s == "geq") return UEW_SIDE_GEQ;
  throw Failure{kExitInput, "--side must be leq or geq"};
}

const char* side_name(uew_side s) {
  switch (s) {
    case UEW_SIDE_LEQ: return "Leq";
    case UEW_SIDE_GEQ: return "Geq";
    case UEW_SIDE_BOUNDARY: return "Boundary";
  }
  return "?";
}

json number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json amplitudes(const std::vector<double>& interleaved) {
  json out = json::array();
  for (std::size_t i = 0; i + 1 < interleaved.size(); i += 2) {
    // + 0.0 folds a negative zero into zero.
    out.push_back(json::array({interleaved[i] + 0.0, interleaved[i + 1] + 0.0}));
  }
  return out;
}

// Options shared by the optimizing commands.
struct Common {
  uew_config cfg{};
  std::optional<std::uint64_t> seed_flag;

  Common() { uew_config_default(&cfg); }

  void attach(CLI::App* app) {
    app->add_option("--restarts", cfg.restarts, "Random restarts")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", seed_flag, "RNG seed (overrides UEW_SEED)");
    app->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");
    app->add_option("--grid-theta", cfg.grid_theta, "Polar grid points")
        ->check(CLI::Range(2, 100000));
    app->add_option("--grid-phi", cfg.grid_phi, "Azimuthal grid points")
        ->check(CLI::Range(1, 100000));
  }

  // Flag wins over the environment, which wins over the built-in default.
  void resolve_seed() {
    if (seed_flag) {
      cfg.seed = *seed_flag;
      return;
    }
    if (const char* env = std::getenv("UEW_SEED"); env != nullptr && *env) {
      char* end = nullptr;
      errno = 0;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (errno != 0 || end == env || *end != '\0') {
        throw Failure{kExitInput, "UEW_SEED must be an unsigned integer"};
      }
      cfg.seed = v;
    }
  }

  json echo() const {
    return json{{"restarts", cfg.restarts},     {"grid_theta", cfg.grid_theta},
                {"grid_phi", cfg.grid_phi},     {"seesaw_tol", cfg.seesaw_tol},
                {"seesaw_max_iter", cfg.seesaw_max_iter},
                {"feas_tol", cfg.feas_tol},     {"seed", cfg.seed},
                {"threads", cfg.threads}};
  }
};

void print_report(const std::string& command, const json& args,
                  const Common& common, json results, Clock::time_point t0) {
  const double wall =
      std::chrono::duration<double>(Clock::now() - t0).count();
  json report{{"command", command},
              {"args", args},
              {"config", common.echo()},
              {"seed", common.cfg.seed},
              {"results", std::move(results)},
              {"wall_time_s", wall},
              {"version", uew_version()}};
  std::cout << report.dump(2) << "\n";
}

json result_json(const uew_result* r, const uew_operator* op) {
  size_t da = 0;
  size_t db = 0;
  check(uew_operator_dims(op, &da, &db));
  std::vector<double> a(2 * da);
  std::vector<double> b(2 * db);
  check(uew_result_argmax(r, a.data(), a.size(), b.data(), b.size()));
  return json{{"value", uew_result_value(r)},
              {"argmax", {{"a", amplitudes(a)}, {"b", amplitudes(b)}}},
              {"converged", uew_result_converged(r) != 0},
              {"iterations", uew_result_iterations(r)},
              {"method", uew_result_method(r)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultrafine entanglement witness toolkit"};
  app.set_version_flag("--version", std::string(uew_version()));
  app.require_subcommand(1);

  Common common;

  // gs
  std::string gs_test;
  CLI::App* gs = app.add_subcommand("gs", "Product-state supremum g_s(L)");
  gs->add_option("--test", gs_test, "Test operator JSON")->required();
  common.attach(gs);

  // pc
  std::string pc_test;
  std::string pc_constraint;
  std::string pc_cvalue;
  std::string pc_side;
  CLI::App* pc = app.add_subcommand("pc", "Constrained supremum p_c or p_c~");
  pc->add_option("--test", pc_test, "Test operator JSON")->required();
  pc->add_option("--constraint", pc_constraint, "Constraint operator JSON")
      ->required();
  pc->add_option("--cvalue", pc_cvalue, "Constraint value c")->required();
  pc->add_option("--side", pc_side, "leq (S_c) or geq (S_c~)")->required();
  common.attach(pc);

  // scan
  bool scan_example = false;
  std::string scan_x = "2/3";
  std::string scan_cvalue = "1/100";
  std::string scan_alphas;
  CLI::App* scan =
      app.add_subcommand("scan", "Noise-threshold sweep over alpha (CSV)");
  scan->add_flag("--example31", scan_example, "Use the two-qubit benchmark")
      ->required();
  scan->add_option("--x", scan_x, "POVM parameter, e.g. 2/3");
  scan->add_option("--cvalue", scan_cvalue, "Constraint value c");
  scan->add_option("--alphas", scan_alphas,
                   "Comma-separated alphas < 1; -inf selects the limit witness")
      ->required()
      ->allow_extra_args(false);
  common.attach(scan);

  // detect
  std::string det_state;
  std::string det_test;
  std::string det_constraint;
  std::string det_cvalue;
  std::string det_alpha = "0";
  CLI::App* det = app.add_subcommand("detect", "Apply the witness pair to a state");
  det->add_option("--state", det_state, "Density matrix JSON")->required();
  det->add_option("--test", det_test, "Test operator JSON")->required();
  det->add_option("--constraint", det_constraint, "Constraint operator JSON")
      ->required();
  det->add_option("--cvalue", det_cvalue, "Constraint value c")->required();
  det->add_option("--alpha", det_alpha, "Rotation alpha < 1, or -inf");
  common.attach(det);

  // alpha0
  std::string a0_test;
  std::string a0_constraint;
  std::string a0_cvalue;
  std::string a0_bracket = "-1e6";
  CLI::App* a0 = app.add_subcommand("alpha0", "Case label and alpha_0");
  a0->add_option("--test", a0_test, "Test operator JSON")->required();
  a0->add_option("--constraint", a0_constraint, "Constraint operator JSON")
      ->required();
  a0->add_option("--cvalue", a0_cvalue, "Constraint value c")->required();
  a0->add_option("--bracket-min", a0_bracket, "Most negative alpha searched");
  common.attach(a0);

  // plane
  std::string pl_states;
  std::string pl_test;
  std::string pl_constraint;
  CLI::App* pl = app.add_subcommand("plane", "(Tr C rho, Tr L rho) per state (CSV)");
  pl->add_option("--states", pl_states, "Directory of state JSON files")
      ->required();
  pl->add_option("--test", pl_test, "Test operator JSON")->required();
  pl->add_option("--constraint", pl_constraint, "Constraint operator JSON")
      ->required();

  // example31
  std::string ex_x = "2/3";
  std::string ex_p = "0";
  std::string ex_out;
  std::string ex_povm = "complete";
  CLI::App* ex = app.add_subcommand(
      "example31", "Write the benchmark operators and noisy state as JSON");
  ex->add_option("--x", ex_x, "POVM parameter");
  ex->add_option("--p", ex_p, "Noise weight of the written state");
  ex->add_option("--povm", ex_povm, "complete or as-printed")
      ->check(CLI::IsMember({"complete", "as-printed"}));
  ex->add_option("--out", ex_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  const auto t0 = Clock::now();
  try {
    common.resolve_seed();

    if (*gs) {
      auto l = load_operator(gs_test);
      uew_result* raw = nullptr;
      check(uew_sup_unconstrained(l.get(), &common.cfg, &raw));
      ResultPtr r(raw);
      json res = result_json(r.get(), l.get());
      res["g_s"] = uew_result_value(r.get());
      print_report("gs", {{"test", gs_test}}, common, std::move(res), t0);
      if (!uew_result_converged(r.get())) {
        std::cerr << "error: see-saw did not converge on any restart\n";
        return kExitNonConvergence;
      }
      return kExitOk;
    }

    if (*pc) {
      auto l = load_operator(pc_test);
      auto c = load_operator(pc_constraint);
      const double cv = parse_real(pc_cvalue, "--cvalue");
      const uew_side side = parse_side(pc_side);
      uew_result* raw = nullptr;
      check(uew_sup_constrained(l.get(), c.get(), cv, side, &common.cfg, &raw));
      ResultPtr r(raw);
      json res = result_json(r.get(), l.get());
      res[side == UEW_SIDE_LEQ ? "p_c" : "p_ctilde"] = uew_result_value(r.get());
      res["constraint_value"] = uew_result_constraint_value(r.get());
      res["boundary_active"] = uew_result_boundary_active(r.get()) != 0;
      print_report("pc",
                   {{"test", pc_test},
                    {"constraint", pc_constraint},
                    {"cvalue", cv},
                    {"side", pc_side}},
                   common, std::move(res), t0);
      if (!uew_result_converged(r.get())) {
        std::cerr << "error: constrained optimizer did not converge\n";
        return kExitNonConvergence;
      }
      return kExitOk;
    }

    if (*scan) {
      const double x = parse_real(scan_x, "--x");
      const double cv = parse_real(scan_cvalue, "--cvalue");
      const std::vector<double> alphas = parse_list(scan_alphas, "--alphas");
      uew_text* raw = nullptr;
      check(uew_scan_example31_csv(x, cv, alphas.data(), alphas.size(),
                                   &common.cfg, &raw));
      TextPtr csv(raw);
      std::cout.write(uew_text_data(csv.get()),
                      static_cast<std::streamsize>(uew_text_size(csv.get())));
      return kExitOk;
    }

    if (*det) {
      auto rho = load_state(det_state);
      auto l = load_operator(det_test);
      auto c = load_operator(det_constraint);
      const double cv = parse_real(det_cvalue, "--cvalue");
      const double alpha = parse_real(det_alpha, "--alpha");
      uew_verdict v{};
      check(uew_detect(rho.get(), l.get(), c.get(), cv, alpha, &common.cfg, &v));
      json res{{"verdict", v.entangled ? "Entangled" : "NotDetected"},
               {"side_used", side_name(v.side_used)},
               {"witness_value", v.witness_value},
               {"bound_c", v.bound_c},
               {"bound_ctilde", v.bound_ctilde}};
      print_report("detect",
                   {{"state", det_state},
                    {"test", det_test},
                    {"constraint", det_constraint},
                    {"cvalue", cv},
                    {"alpha", number(alpha)}},
                   common, std::move(res), t0);
      return kExitOk;
    }

    if (*a0) {
      auto l = load_operator(a0_test);
      auto c = load_operator(a0_constraint);
      const double cv = parse_real(a0_cvalue, "--cvalue");
      const double bracket = parse_real(a0_bracket, "--bracket-min");
      uew_case label = UEW_CASE_DEGENERATE;
      check(uew_classify_case(l.get(), c.get(), cv, &common.cfg, &label));
      int finite = 0;
      double alpha0 = 0.0;
      check(uew_compute_alpha0(l.get(), c.get(), cv, bracket, &common.cfg,
                               &finite, &alpha0));
      const char* case_name = label == UEW_CASE_I    ? "CaseI"
                              : label == UEW_CASE_II ? "CaseII"
                                                     : "Degenerate";
      json res{{"case", case_name}};
      if (finite) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", alpha0);
        res["alpha0"] = alpha0;
        res["alpha0_6dp"] = buf;
      } else {
        res["alpha0"] = "NoFiniteAlpha0";
        res["rationale"] =
            label == UEW_CASE_I
                ? "the unconstrained optimum of L - C lies in S_c~, so V_alpha "
                  "stays non-negative on S_sep:c for every alpha < 1 and the "
                  "limit witness (p_c - c) I - (L - C) is the finest member"
                : "V_alpha stays non-negative on S_sep:c down to bracket-min";
      }
      print_report("alpha0",
                   {{"test", a0_test},
                    {"constraint", a0_constraint},
                    {"cvalue", cv},
                    {"bracket_min", bracket}},
                   common, std::move(res), t0);
      return kExitOk;
    }

    if (*pl) {
      auto l = load_operator(pl_test);
      auto c = load_operator(pl_constraint);
      std::error_code ec;
      if (!fs::is_directory(pl_states, ec)) {
        throw Failure{kExitInput, pl_states + " is not a directory"};
      }
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(pl_states, ec)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      if (ec) throw Failure{kExitInput, "cannot list " + pl_states};
      std::sort(files.begin(), files.end());

      std::vector<StatePtr> states;
      std::vector<std::string> labels;
      std::vector<std::string> bad;
      for (const fs::path& f : files) {
        uew_state* st = nullptr;
        if (uew_state_load(f.string().c_str(), &st) != UEW_OK) {
          bad.push_back(f.filename().string() + " (" + uew_last_error() + ")");
          continue;
        }
        states.emplace_back(st);
        labels.push_back(f.stem().string());
      }
      if (!bad.empty()) {
        std::cerr << "error: unreadable state files:\n";
        for (const auto& b : bad) std::cerr << "  " << b << "\n";
        return kExitInput;
      }
      std::vector<const char*> label_ptrs;
      std::vector<const uew_state*> state_ptrs;
      for (std::size_t i = 0; i < states.size(); ++i) {
        label_ptrs.push_back(labels[i].c_str());
        state_ptrs.push_back(states[i].get());
      }
      uew_text* raw = nullptr;
      check(uew_plane_csv(label_ptrs.data(), state_ptrs.data(), states.size(),
                          l.get(), c.get(), &raw));
      TextPtr csv(raw);
      std::cout.write(uew_text_data(csv.get()),
                      static_cast<std::streamsize>(uew_text_size(csv.get())));
      return kExitOk;
    }

    if (*ex) {
      const double x = parse_real(ex_x, "--x");
      const double p = parse_real(ex_p, "--p");
      const fs::path dir(ex_out);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw Failure{kExitInput, "cannot create " + ex_out};
      uew_operator* craw = nullptr;
      uew_operator* lraw = nullptr;
      check(uew_example31_create(
          x, ex_povm == "as-printed" ? UEW_POVM_AS_PRINTED : UEW_POVM_COMPLETE,
          &craw, &lraw));
      OperatorPtr c(craw);
      OperatorPtr l(lraw);
      uew_state* sraw = nullptr;
      check(uew_example31_state(p, &sraw));
      StatePtr rho(sraw);
      check(uew_operator_save(c.get(), (dir / "C.json").string().c_str()));
      check(uew_operator_save(l.get(), (dir / "L.json").string().c_str()));
      check(uew_state_save(rho.get(), (dir / "rho.json").string().c_str()));
      std::cout << "wrote " << (dir / "C.json").string() << ", "
                << (dir / "L.json").string() << ", "
                << (dir / "rho.json").string() << "\n";
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitInput;
}
