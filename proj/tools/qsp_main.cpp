// Copyright 2026 The qsp Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qsp/bound.hpp"
#include "qsp/classical.hpp"
#include "qsp/construction.hpp"
#include "qsp/engine.hpp"
#include "qsp/linalg.hpp"
#include "qsp/optimizer.hpp"
#include "qsp/rng.hpp"
#include "qsp/scenario_io.hpp"

namespace {

using qsp::engine::MeasurementScenario;
using qsp::engine::RateTable;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Ordered metric/value rows rendered as a two-column table or as CSV with a
// mandatory header. Values are preformatted so both renderings agree.
class Report {
 public:
  void add(const std::string& metric, double value) { rows_.emplace_back(metric, fmt(value)); }
  void add(const std::string& metric, const std::string& value) { rows_.emplace_back(metric, value); }
  void add_flag(const std::string& metric, bool value) { rows_.emplace_back(metric, value ? "1" : "0"); }
  void add_opt(const std::string& metric, const std::optional<double>& value) {
    rows_.emplace_back(metric, value ? fmt(*value) : "undefined");
  }

  std::string render(bool csv) const {
    std::string out;
    if (csv) {
      out += "metric,value\n";
      for (const auto& [k, v] : rows_) out += k + "," + v + "\n";
      return out;
    }
    size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      out += k;
      out.append(width - k.size() + 2, ' ');
      out += v + "\n";
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
  out << content;
}

void print_validation_residuals(const MeasurementScenario& scenario) {
  using qsp::linalg::adjoint;
  using qsp::linalg::Matrix;
  using qsp::linalg::max_abs;
  const auto describe = [](const char* name, const qsp::engine::TwoOutcomeMeasurement& m) {
    const Matrix& p = m.first.matrix();
    const Matrix ident = Matrix::identity(p.dim());
    std::cerr << name << ": hermitian residual " << fmt(max_abs(p - adjoint(p)))
              << ", idempotency residual " << fmt(max_abs(p * p - p))
              << ", complementarity residual "
              << fmt(max_abs(p + m.second.matrix() - ident)) << "\n";
  };
  std::cerr << "state squared norm " << fmt(qsp::linalg::norm_sq(scenario.state)) << "\n";
  describe("gender", scenario.gender);
  describe("treatment", scenario.treatment);
  describe("result", scenario.result);
}

// Shared rows for `eval` and `paper`: rates, reversal statistics, convexity
// residuals, interval disjointness, commutator report.
void append_eval_rows(Report& report, const MeasurementScenario& scenario) {
  const RateTable rates = qsp::engine::conditional_rates(scenario);
  report.add_opt("r_t", rates.r_t);
  report.add_opt("r_c", rates.r_c);
  report.add_opt("rf_t", rates.rf_t);
  report.add_opt("rm_t", rates.rm_t);
  report.add_opt("rf_c", rates.rf_c);
  report.add_opt("rm_c", rates.rm_c);
  report.add_opt("frac_f_given_t", rates.frac_f_given_t);
  report.add_opt("frac_m_given_t", rates.frac_m_given_t);
  report.add_opt("frac_f_given_u", rates.frac_f_given_u);
  report.add_opt("frac_m_given_u", rates.frac_m_given_u);

  try {
    const qsp::engine::SimpsonStats stats = qsp::engine::simpson_statistics(rates);
    report.add("d_t", stats.d_t);
    report.add("d_c", stats.d_c);
    report.add("s", stats.s);
  } catch (const qsp::engine::UndefinedRate&) {
    report.add("d_t", "undefined");
    report.add("d_c", "undefined");
    report.add("s", "undefined");
  }

  try {
    const qsp::engine::ConvexityResiduals res = qsp::engine::convexity_residual(scenario);
    report.add("convexity_residual_t", res.treatment);
    report.add("convexity_residual_c", res.control);
  } catch (const qsp::engine::UndefinedRate&) {
    report.add("convexity_residual_t", "undefined");
    report.add("convexity_residual_c", "undefined");
  }

  try {
    report.add_flag("intervals_disjoint", qsp::engine::rate_intervals_disjoint(rates));
  } catch (const qsp::engine::UndefinedRate&) {
    report.add("intervals_disjoint", "undefined");
  }

  const qsp::engine::ClassicalityReport cls =
      qsp::engine::classicality_check(scenario, qsp::linalg::kValidationTol);
  report.add("comm_gender_treatment", cls.comm_gender_treatment);
  report.add("comm_gender_result", cls.comm_gender_result);
  report.add("comm_treatment_result", cls.comm_treatment_result);
  report.add_flag("classical", cls.classical);
}

qsp::optimizer::FamilyCurve parse_curve(const std::string& family) {
  if (family == "q1") return qsp::optimizer::FamilyCurve::kQ1;
  if (family == "q2") return qsp::optimizer::FamilyCurve::kQ2;
  throw std::invalid_argument("--family must be q1 or q2");
}

struct CommonFlags {
  std::string out;
  std::string format = "csv";
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Write the report to this path instead of stdout");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"table", "csv"}));
  cmd->add_flag("--verbose", flags.verbose, "Print validation residuals to stderr");
}

int run_eval(const std::string& scenario_path, const CommonFlags& flags) {
  const MeasurementScenario scenario = qsp::io::load_scenario_file(scenario_path);
  if (flags.verbose) print_validation_residuals(scenario);
  Report report;
  append_eval_rows(report, scenario);
  emit(report.render(flags.format == "csv"), flags.out);
  return 0;
}

int run_paper(const std::string& family, double epsilon, const CommonFlags& flags) {
  const qsp::optimizer::FamilyCurve curve = parse_curve(family);
  const qsp::construction::FamilyParams params = qsp::optimizer::curve_params(curve, epsilon);
  const MeasurementScenario scenario = qsp::construction::build_paper_scenario(params);
  if (flags.verbose) print_validation_residuals(scenario);

  Report report;
  report.add("family", family);
  report.add("epsilon", epsilon);
  report.add("p", params.p);
  report.add("q", params.q);
  append_eval_rows(report, scenario);
  report.add("s_closed_form", qsp::construction::family_S(params));

  // The engine and the closed form must agree; a mismatch is a broken build.
  const double s = qsp::engine::simpson_statistics(qsp::engine::conditional_rates(scenario)).s;
  if (std::abs(s - qsp::construction::family_S(params)) > qsp::optimizer::kSweepCrossTol) {
    throw std::logic_error("engine S deviates from the closed form");
  }
  emit(report.render(flags.format == "csv"), flags.out);
  return 0;
}

int run_sweep(const std::string& family, double eps_start, double eps_end, int steps,
              const CommonFlags& flags) {
  if (!(eps_start > 0.0) || !(eps_end <= 1.0) || !(eps_start <= eps_end)) {
    throw std::invalid_argument("sweep needs 0 < --eps-start <= --eps-end <= 1");
  }
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");

  std::vector<double> eps_values;
  eps_values.reserve(static_cast<size_t>(steps));
  if (steps == 1) {
    eps_values.push_back(eps_start);
  } else {
    // Geometric spacing: the reversal saturates as eps -> 0, which is the
    // regime worth resolving.
    const double llo = std::log(eps_start);
    const double lhi = std::log(eps_end);
    for (int i = 0; i < steps; ++i) {
      eps_values.push_back(std::exp(llo + (lhi - llo) * i / (steps - 1)));
    }
    eps_values.front() = eps_start;
    eps_values.back() = eps_end;
  }

  const auto rows = qsp::optimizer::sweep_family(eps_values, parse_curve(family));
  std::string out;
  if (flags.format == "csv") {
    out += "epsilon,s,two_minus_two_eps,margin\n";
    for (const auto& row : rows) {
      out += fmt(row.eps) + "," + fmt(row.s) + "," + fmt(2.0 - 2.0 * row.eps) + "," +
             fmt(2.0 - row.s) + "\n";
    }
  } else {
    out += "epsilon  s  two_minus_two_eps  margin\n";
    for (const auto& row : rows) {
      out += fmt(row.eps) + "  " + fmt(row.s) + "  " + fmt(2.0 - 2.0 * row.eps) + "  " +
             fmt(2.0 - row.s) + "\n";
    }
  }
  emit(out, flags.out);
  return 0;
}

int run_classical(int samples, std::uint64_t seed, const CommonFlags& flags) {
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  qsp::Rng rng(seed);
  double max_abs_s = 0.0;
  double max_resid_t = 0.0;
  double max_resid_c = 0.0;
  int undefined = 0;
  for (int i = 0; i < samples; ++i) {
    const auto dist = qsp::classical::random_distribution(rng);
    try {
      max_abs_s = std::max(max_abs_s, std::abs(qsp::classical::classical_S(dist)));
      const auto res = qsp::classical::verify_convexity(dist);
      max_resid_t = std::max(max_resid_t, std::abs(res.treatment));
      max_resid_c = std::max(max_resid_c, std::abs(res.control));
    } catch (const qsp::engine::UndefinedRate&) {
      ++undefined;
    }
  }

  const bool bound_ok = max_abs_s <= 1.0 + qsp::classical::kDistributionTol;
  Report report;
  report.add("samples", static_cast<double>(samples));
  report.add("seed", static_cast<double>(seed));
  report.add("max_abs_s", max_abs_s);
  report.add("max_convexity_residual_t", max_resid_t);
  report.add("max_convexity_residual_c", max_resid_c);
  report.add("undefined_count", static_cast<double>(undefined));
  report.add_flag("bound_satisfied", bound_ok);
  emit(report.render(flags.format == "csv"), flags.out);
  return bound_ok ? 0 : 2;
}

int run_bound(const std::string& scenario_path, const CommonFlags& flags) {
  const MeasurementScenario scenario = qsp::io::load_scenario_file(scenario_path);
  if (flags.verbose) print_validation_residuals(scenario);

  const qsp::bound::EllTable ells = qsp::bound::ell_table(scenario);
  const qsp::bound::RatioReport ratios = qsp::bound::ratios_and_s_prime(ells);
  const qsp::bound::IdentityReport identities = qsp::bound::verify_identities(scenario);

  Report report;
  report.add("ell_atf", ells.atf);
  report.add("ell_dtf", ells.dtf);
  report.add("ell_atm", ells.atm);
  report.add("ell_dtm", ells.dtm);
  report.add("ell_auf", ells.auf);
  report.add("ell_duf", ells.duf);
  report.add("ell_aum", ells.aum);
  report.add("ell_dum", ells.dum);
  report.add("ell_at", ells.at);
  report.add("ell_dt", ells.dt);
  report.add("ell_au", ells.au);
  report.add("ell_du", ells.du);

  const auto add_ratio = [&report](const std::string& name, const qsp::bound::ExtendedRatio& r) {
    report.add(name, r.defined ? fmt(r.value) : "inf");
  };
  add_ratio("alpha", ratios.ratios.alpha);
  add_ratio("alpha_f", ratios.ratios.alpha_f);
  add_ratio("alpha_m", ratios.ratios.alpha_m);
  add_ratio("beta", ratios.ratios.beta);
  add_ratio("beta_f", ratios.ratios.beta_f);
  add_ratio("beta_m", ratios.ratios.beta_m);
  report.add("s_prime", ratios.s_prime);

  bool ok = identities.triangles_pass && identities.master_pass;
  try {
    const qsp::bound::BoundVerdict verdict = qsp::bound::check_bound(scenario);
    report.add("s", verdict.s);
    report.add("margin", verdict.margin);
    report.add_flag("within_bound", verdict.within);
    ok = ok && verdict.within;
  } catch (const qsp::engine::UndefinedRate&) {
    report.add("s", "undefined");
    report.add("margin", "undefined");
    report.add_flag("within_bound", ratios.s_prime < 5.0);
    ok = ok && ratios.s_prime < 5.0;
  }

  report.add("triangle_slack_treated", identities.triangle_slack_treated);
  report.add("triangle_slack_control", identities.triangle_slack_control);
  report.add("master_residual", identities.master_residual);
  const char* branch = "boundary";
  if (identities.branch == qsp::bound::SplitBranch::kTreatedSide) branch = "treated";
  if (identities.branch == qsp::bound::SplitBranch::kControlSide) branch = "control";
  report.add("split_branch", branch);
  report.add_flag("control_side_holds", identities.control_side_holds);

  emit(report.render(flags.format == "csv"), flags.out);
  return ok ? 0 : 2;
}

int run_optimize(bool family_mode, const std::string& family, double floor, int steps, int dim,
                 const std::vector<int>& ranks, std::uint64_t seed, int restarts, int iters,
                 const CommonFlags& flags) {
  Report report;
  if (family_mode) {
    qsp::optimizer::FamilyOptimizeConfig config;
    config.curve = parse_curve(family);
    config.floor = floor;
    config.grid = steps;
    const auto result = qsp::optimizer::optimize_family(config);
    const auto& best = std::get<qsp::construction::FamilyParams>(result.best_params);
    report.add("mode", "family");
    report.add("curve", family);
    report.add("floor", config.floor);
    report.add("grid", static_cast<double>(config.grid));
    report.add("best_p", best.p);
    report.add("best_q", best.q);
    report.add("best_s", result.best_s);
    report.add("margin", 2.0 - result.best_s);
    report.add("evaluations", static_cast<double>(result.evaluations));
    emit(report.render(flags.format == "csv"), flags.out);
    return result.best_s < 2.0 ? 0 : 2;
  }

  qsp::optimizer::GeneralOptimizeConfig config;
  config.dim = dim;
  if (ranks.size() != 3) throw std::invalid_argument("--ranks needs three values a,b,c");
  config.ranks = {ranks[0], ranks[1], ranks[2]};
  config.seed = seed;
  config.restarts = restarts;
  config.iters = iters;
  const auto result = qsp::optimizer::optimize_general(config);

  report.add("mode", "general");
  report.add("dim", static_cast<double>(config.dim));
  report.add("rank_gender", static_cast<double>(config.ranks[0]));
  report.add("rank_treatment", static_cast<double>(config.ranks[1]));
  report.add("rank_result", static_cast<double>(config.ranks[2]));
  report.add("seed", static_cast<double>(config.seed));
  report.add("restarts", static_cast<double>(config.restarts));
  report.add("iters", static_cast<double>(config.iters));
  report.add("best_abs_s", result.best_s);
  report.add("margin", 2.0 - result.best_s);
  report.add("evaluations", static_cast<double>(result.evaluations));
  if (flags.verbose) {
    for (const auto& point : result.trace) {
      std::cerr << "restart " << point.iteration << ": best |S| = " << fmt(point.best_s) << "\n";
    }
  }
  emit(report.render(flags.format == "csv"), flags.out);
  return result.best_s < 2.0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential two-outcome projective measurements: conditional rates, reversal statistics, and bounds"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a scenario file");
  std::string eval_scenario;
  CommonFlags eval_flags;
  eval_cmd->add_option("--scenario", eval_scenario, "Scenario file path")->required();
  add_common(eval_cmd, eval_flags);

  // paper
  auto* paper_cmd = app.add_subcommand("paper", "Evaluate the built-in scenario family");
  std::string paper_family;
  double paper_eps = 0.0;
  CommonFlags paper_flags;
  paper_cmd->add_option("--family", paper_family, "q1 (p=1, q=eps) or q2 (p=eps, q=eps^2)")
      ->required();
  paper_cmd->add_option("--epsilon", paper_eps, "Family parameter in (0, 1]")->required();
  add_common(paper_cmd, paper_flags);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the family over an epsilon grid");
  std::string sweep_family = "q2";
  double sweep_start = 1e-3, sweep_end = 1.0;
  int sweep_steps = 20;
  CommonFlags sweep_flags;
  sweep_cmd->add_option("--family", sweep_family, "q1 or q2");
  sweep_cmd->add_option("--eps-start", sweep_start, "Smallest epsilon (> 0)");
  sweep_cmd->add_option("--eps-end", sweep_end, "Largest epsilon (<= 1)");
  sweep_cmd->add_option("--steps", sweep_steps, "Grid points");
  add_common(sweep_cmd, sweep_flags);

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Search for maximal |S|");
  std::string opt_family;
  double opt_floor = 1e-6;
  int opt_steps = 100;
  int opt_dim = 8;
  std::vector<int> opt_ranks{4, 1, 4};
  std::uint64_t opt_seed = 1;
  int opt_restarts = 64;
  int opt_iters = 2000;
  CommonFlags opt_flags;
  opt_cmd->add_option("--family", opt_family, "Family mode: optimize along q1 or q2");
  opt_cmd->add_option("--eps-start", opt_floor, "Family mode: epsilon floor");
  opt_cmd->add_option("--steps", opt_steps, "Family mode: grid points");
  opt_cmd->add_option("--dim", opt_dim, "General mode: Hilbert space dimension [2, 16]");
  opt_cmd->add_option("--ranks", opt_ranks, "General mode: projector ranks a,b,c")
      ->delimiter(',');
  opt_cmd->add_option("--seed", opt_seed, "General mode: restart seed");
  opt_cmd->add_option("--restarts", opt_restarts, "General mode: random restarts");
  opt_cmd->add_option("--iters", opt_iters, "General mode: simplex iterations per stage");
  add_common(opt_cmd, opt_flags);

  // classical
  auto* classical_cmd = app.add_subcommand("classical", "Sample classical joint distributions");
  int classical_samples = 100000;
  std::uint64_t classical_seed = 7;
  CommonFlags classical_flags;
  classical_cmd->add_option("--samples", classical_samples, "Number of sampled distributions");
  classical_cmd->add_option("--seed", classical_seed, "Sampling seed");
  add_common(classical_cmd, classical_flags);

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Projection lengths, ratios, and bound checks");
  std::string bound_scenario;
  CommonFlags bound_flags;
  bound_cmd->add_option("--scenario", bound_scenario, "Scenario file path")->required();
  add_common(bound_cmd, bound_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_scenario, eval_flags);
    if (paper_cmd->parsed()) return run_paper(paper_family, paper_eps, paper_flags);
    if (sweep_cmd->parsed())
      return run_sweep(sweep_family, sweep_start, sweep_end, sweep_steps, sweep_flags);
    if (opt_cmd->parsed())
      return run_optimize(!opt_family.empty(), opt_family, opt_floor, opt_steps, opt_dim,
                          opt_ranks, opt_seed, opt_restarts, opt_iters, opt_flags);
    if (classical_cmd->parsed())
      return run_classical(classical_samples, classical_seed, classical_flags);
    if (bound_cmd->parsed()) return run_bound(bound_scenario, bound_flags);
  } catch (const qsp::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
