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

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failures.
//
//   uew_acceptance [path/to/uew_cli]
//
// With a CLI path the scan criteria run the real command line; otherwise they
// go through the same library call the CLI uses.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uew/analysis.hpp"
#include "uew/io.hpp"
#include "uew/optimize.hpp"
#include "uew/uew.h"

namespace {

using namespace uew;
using Clock = std::chrono::steady_clock;

const Dims kTwoQubits{2, 2};
const std::vector<double> kTableAlphas = {0.0, -1.0, -10.0, -100.0, kMinusInfinity};
const std::array<double, 4> kTableThresholds = {0.004, 0.009, 0.010, 0.010};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- scanning

std::string cli_path;

std::optional<std::string> run_capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int rc = pclose(pipe);
  if (rc != 0) return std::nullopt;
  return out;
}

std::optional<std::string> scan_csv(std::uint64_t seed, unsigned threads) {
  if (!cli_path.empty()) {
    return run_capture(fmt("'%s' scan --example31 --x 2/3 --cvalue 1/100 "
                           "--alphas=0,-1,-10,-100,-inf --seed %llu --threads %u",
                           cli_path.c_str(), static_cast<unsigned long long>(seed),
                           threads));
  }
  uew_config cfg;
  uew_config_default(&cfg);
  cfg.seed = seed;
  cfg.threads = threads;
  const std::vector<double> alphas = kTableAlphas;
  uew_text* text = nullptr;
  if (uew_scan_example31_csv(2.0 / 3.0, 0.01, alphas.data(), alphas.size(), &cfg,
                             &text) != UEW_OK) {
    return std::nullopt;
  }
  std::string out(uew_text_data(text), uew_text_size(text));
  uew_text_free(text);
  return out;
}

struct CsvRow {
  std::string alpha;
  double bound = 0.0;
  std::optional<double> threshold;
};

std::vector<CsvRow> parse_sweep(const std::string& csv) {
  std::vector<CsvRow> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  if (line != "alpha,bound,threshold_p") return rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, t;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    std::getline(ls, t, ',');
    CsvRow r;
    r.alpha = a;
    r.bound = parse_real(b);
    if (t != "none") r.threshold = parse_real(t);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- sampling

// Pure product states of the 2x2 system restricted to one side of the
// constraint, drawn by rejection from the Haar product measure.
std::vector<ProductKet> product_samples(const ConstraintSpec& spec,
                                        HalfSpaceSide side, std::size_t count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ProductKet> out;
  out.reserve(count);
  while (out.size() < count) {
    ProductKet k = random_product_ket(kTwoQubits, rng);
    const double t = expectation(spec.op, k);
    const bool ok = side == HalfSpaceSide::Leq ? t <= spec.value : t >= spec.value;
    if (ok) out.push_back(std::move(k));
  }
  return out;
}

double min_expectation(const Witness& w, const std::vector<ProductKet>& samples) {
  double lo = std::numeric_limits<double>::infinity();
  for (const ProductKet& k : samples) lo = std::min(lo, w.expectation(k));
  return lo;
}

// Mixed states in S_c: a random full-rank state pulled toward S_c by mixing
// with a random state supported off the constraint's range.
std::vector<DensityMatrix> mixed_states_in_sc(const ConstraintSpec& spec,
                                              const NoisyStateFamily& family,
                                              std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DensityMatrix> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t kind = out.size() % 3;
    HermitianOperator base = HermitianOperator::zero(kTwoQubits);
    if (kind == 0) {
      base = random_density(kTwoQubits, 1 + out.size() % 4, rng).op();
    } else if (kind == 1) {
      // Near the entangled target so that some witnesses fire.
      base = family.member(0.03 * u(rng)).op();
    } else {
      const Ket k = random_ket(4, rng);
      base = DensityMatrix::pure(k, kTwoQubits).op();
    }
    const double t = expectation(spec.op, DensityMatrix::from_operator(base));
    // Random state supported on span{|00>, |01>, |10>}.
    std::vector<Complex> v(4, 0.0);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < 3; ++i) v[i] = Complex(g(rng), g(rng));
    const Ket off = Ket::normalized(v);
    const auto sigma = HermitianOperator::projector(off).with_dims(kTwoQubits);
    double w = 1.0;
    if (t > spec.value) w = u(rng) * spec.value / t;
    out.push_back(DensityMatrix::from_operator(combine(w, base, 1.0 - w, sigma)));
  }
  return out;
}

// ---------------------------------------------------------------- context

struct Context {
  Example31Setup setup = make_example31({});
  OptimizerConfig cfg;
  double p_c = 0.0;
  std::vector<Witness> built;  // every S_c witness from criteria 1-5
  std::optional<std::vector<CsvRow>> table;

  Context() {
    p_c = sup_product_constrained(setup.example.test, setup.spec, HalfSpaceSide::Leq, cfg)
              .value;
  }
  const HermitianOperator& l() const { return setup.example.test; }
  const ConstraintSpec& spec() const { return setup.spec; }
};

// ---------------------------------------------------------------- criteria

Outcome criterion1(Context& ctx) {
  const auto t0 = Clock::now();
  const auto csv = scan_csv(0, 0);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!csv) return {false, "scan command failed"};
  const auto rows = parse_sweep(*csv);
  if (rows.size() != 5) return {false, "unexpected CSV shape"};
  ctx.table = rows;
  for (std::size_t i = 0; i < kTableAlphas.size(); ++i) {
    const double a = kTableAlphas[i];
    ctx.built.push_back(std::isinf(a) ? build_minus_inf(ctx.spec(), ctx.l(), ctx.p_c)
                                      : build_v_alpha(ctx.spec(), ctx.l(), ctx.p_c, a)
                                            .witness);
  }
  bool ok = !rows[0].threshold.has_value() && secs < 120.0;
  std::string got = "none";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!rows[i].threshold) return {false, "alpha " + rows[i].alpha + " detects nothing"};
    const double p = *rows[i].threshold;
    const double expect = kTableThresholds[i - 1];
    ok = ok && std::abs(p - expect) <= 1e-3 &&
         std::abs(truncate_decimals(p, 3) - expect) < 1e-12;
    got += fmt(", %.3f (%.6f)", truncate_decimals(p, 3), p);
  }
  return {ok, "thresholds " + got + fmt("; %.2fs", secs)};
}

Outcome criterion2(Context& ctx) {
  const Witness w{ctx.p_c, ctx.l()};
  ctx.built.push_back(w);
  long detected = 0;
  for (int k = 0; k <= 10000; ++k) {
    if (fires(ctx.setup.family.member(k * 1e-4), w, ctx.spec(), HalfSpaceSide::Leq))
      ++detected;
  }
  return {detected == 0, fmt("%ld of 10001 noise levels detected by W_c(L)", detected)};
}

Outcome criterion3(Context& ctx) {
  if (!ctx.table) return {false, "criterion 1 produced no table"};
  const auto& rows = *ctx.table;
  bool monotone = true;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    monotone = monotone && rows[i].threshold && rows[i - 1].threshold &&
               *rows[i].threshold >= *rows[i - 1].threshold;
  }
  const auto states = mixed_states_in_sc(ctx.spec(), ctx.setup.family, 10000, 303);
  std::vector<Witness> ws;
  for (double a : kTableAlphas) {
    ws.push_back(std::isinf(a) ? build_minus_inf(ctx.spec(), ctx.l(), ctx.p_c)
                               : build_v_alpha(ctx.spec(), ctx.l(), ctx.p_c, a).witness);
  }
  long violations = 0;
  long fired = 0;
  long outside = 0;
  for (const DensityMatrix& rho : states) {
    if (halfspace_membership(rho, ctx.spec()) == HalfSpaceSide::Geq) {
      ++outside;
      continue;
    }
    for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
      const bool d1 = ws[i].expectation(rho) < -1e-10;
      const bool d2 = ws[i + 1].expectation(rho) < -1e-10;
      if (d1) ++fired;
      if (d1 && !d2) ++violations;
    }
  }
  return {monotone && violations == 0 && outside == 0,
          fmt("thresholds %s; %ld nesting violations over %zu states x 4 pairs "
              "(%ld detections at the larger alpha)",
              monotone ? "non-decreasing" : "NOT monotone", violations,
              states.size(), fired)};
}

Outcome criterion4(Context& ctx) {
  double worst = 0.0;
  for (double a : {-0.5, -1.0, -5.0, -10.0}) {
    const HermitianOperator n = combine_alpha(ctx.spec(), ctx.l(), a);
    const double direct =
        sup_product_constrained(n, ctx.spec(), HalfSpaceSide::Leq, ctx.cfg).value;
    const double affine = a * ctx.spec().value + (1.0 - a) * ctx.p_c;
    worst = std::max(worst, std::abs(direct - affine));
    ctx.built.push_back(Witness{direct, n});
    ctx.built.push_back(build_v_alpha(ctx.spec(), ctx.l(), ctx.p_c, a).witness);
  }
  return {worst <= 1e-6, fmt("max |p_c(N_a) - (a c + (1-a) p_c(L))| = %.3g", worst)};
}

Outcome criterion5(Context& ctx) {
  const double alpha = -1e6;
  const Witness v = build_v_alpha(ctx.spec(), ctx.l(), ctx.p_c, alpha).witness;
  const Witness lim = build_minus_inf(ctx.spec(), ctx.l(), ctx.p_c);
  ctx.built.push_back(v);
  ctx.built.push_back(lim);
  const double gap =
      ((1.0 / -alpha) * v.as_operator()).max_abs_diff(lim.as_operator());
  return {gap <= 1e-5, fmt("max-entry gap at alpha = -1e6 is %.3g", gap)};
}

Outcome criterion6(Context& ctx) {
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  double worst_gap = 0.0;
  double worst_below = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Complex> m(16);
    for (std::size_t i = 0; i < 4; ++i) {
      m[i * 4 + i] = g(rng);
      for (std::size_t j = i + 1; j < 4; ++j) {
        const Complex z(g(rng), g(rng));
        m[i * 4 + j] = z;
        m[j * 4 + i] = std::conj(z);
      }
    }
    const auto op = HermitianOperator::from_entries(kTwoQubits, std::move(m));
    OptimizerConfig cfg = ctx.cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    const double s = sup_product_unconstrained(op, cfg).value;
    const double o = grid_oracle_sup(op, std::nullopt, GridResolution{721, 1441});
    worst_gap = std::max(worst_gap, std::abs(s - o));
    worst_below = std::max(worst_below, o - s);
  }
  return {worst_gap <= 2e-3 && worst_below <= 1e-6,
          fmt("50 operators: max |seesaw - grid| = %.3g, max (grid - seesaw) = %.3g",
              worst_gap, worst_below)};
}

Outcome criterion7(Context& ctx) {
  const auto leq = product_samples(ctx.spec(), HalfSpaceSide::Leq, 100000, 707);
  double worst = std::numeric_limits<double>::infinity();
  for (const Witness& w : ctx.built) worst = std::min(worst, min_expectation(w, leq));
  // The S_c~ member of the plain pair.
  const double p_ct =
      sup_product_constrained(ctx.l(), ctx.spec(), HalfSpaceSide::Geq, ctx.cfg).value;
  const auto geq = product_samples(ctx.spec(), HalfSpaceSide::Geq, 100000, 708);
  worst = std::min(worst, min_expectation(Witness{p_ct, ctx.l()}, geq));
  return {worst >= -1e-6 && !ctx.built.empty(),
          fmt("%zu witnesses, min expectation over 1e5 product states per side = %.3g",
              ctx.built.size() + 1, worst)};
}

Outcome criterion8(Context& ctx) {
  const double x = 2.0 / 3.0;
  const double closed = (1.0 - x / 2.0) * (1.0 - x / 2.0);
  const double g = sup_product_unconstrained(ctx.l(), ctx.cfg).value;
  return {std::abs(g - closed) <= 1e-9,
          fmt("g_s = %.15f, (1 - x/2)^2 = %.15f", g, closed)};
}

Outcome criterion9(Context& ctx) {
  // Role-swapped instance: C' = L, L' = C, c' = 0.02.
  const HermitianOperator& l = ctx.setup.example.constraint;
  const ConstraintSpec spec{ctx.setup.example.test, 0.02};
  if (classify_case(l, spec, ctx.cfg) != CaseLabel::CaseII) {
    return {false, "role-swapped instance is not Case II"};
  }
  const auto a0 = compute_alpha0(l, spec, ctx.cfg);
  if (!a0) return {false, "no finite alpha_0"};
  const double p_c = sup_product_constrained(l, spec, HalfSpaceSide::Leq, ctx.cfg).value;
  const bool above = alpha_feasible(l, spec, p_c, *a0 + 1e-3, ctx.cfg);
  const bool below = alpha_feasible(l, spec, p_c, *a0 - 1e-3, ctx.cfg);

  const AlphaWitness v = build_v_alpha(spec, l, p_c, *a0);
  // Half uniform over S_sep:c, half concentrated around the optimizer of
  // N_alpha0 on S_sep:c (where a FEW touches zero), all filtered to S_c.
  std::vector<ProductKet> samples = product_samples(spec, HalfSpaceSide::Leq, 50000, 909);
  const ProductKet centre =
      sup_product_constrained(v.witness.test, spec, HalfSpaceSide::Leq, ctx.cfg).argmax;
  std::mt19937_64 rng(910);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(-7.0, -1.0);
  auto jitter = [&](const Ket& k, double s) {
    std::vector<Complex> v2 = k.amplitudes();
    for (Complex& z : v2) z += s * Complex(g(rng), g(rng));
    return Ket::normalized(std::move(v2));
  };
  while (samples.size() < 100000) {
    const double s = std::pow(10.0, scale(rng));
    ProductKet k{jitter(centre.a, s), jitter(centre.b, s)};
    if (expectation(spec.op, k) <= spec.value) samples.push_back(std::move(k));
  }
  double lo = std::numeric_limits<double>::infinity();
  long near_zero = 0;
  for (const ProductKet& k : samples) {
    const double e = v.witness.expectation(k);
    lo = std::min(lo, e);
    if (std::abs(e) <= 1e-3) ++near_zero;
  }
  const bool ok = above && !below && lo >= -1e-6 && near_zero > 0;
  return {ok, fmt("alpha_0 = %.6f; F(a0+1e-3)=%s F(a0-1e-3)=%s; min over 1e5 "
                  "samples = %.3g, %ld within 1e-3 of zero",
                  *a0, above ? "true" : "false", below ? "true" : "false", lo,
                  near_zero)};
}

Outcome criterion10(Context&) {
  const auto a = scan_csv(12345, 0);
  const auto b = scan_csv(12345, 0);
  const auto c = scan_csv(12345, 1);
  if (!a || !b || !c) return {false, "scan command failed"};
  const bool same = *a == *b;
  return {same, fmt("two runs %s (%zu bytes); single-thread run %s",
                    same ? "byte-identical" : "DIFFER", a->size(),
                    *a == *c ? "identical too" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  Context ctx;
  const std::vector<std::pair<const char*, std::function<Outcome(Context&)>>> criteria = {
      {"threshold table reproduction", criterion1},
      {"alpha = 0 detects nothing", criterion2},
      {"monotone improvement and nesting", criterion3},
      {"affine identity for the constrained bound", criterion4},
      {"limit witness convergence", criterion5},
      {"see-saw matches grid oracle", criterion6},
      {"witness validity on product states", criterion7},
      {"closed-form product bound", criterion8},
      {"alpha_0 certificate", criterion9},
      {"deterministic scan output", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
