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

#include "qsp/bound.hpp"

#include <cmath>

namespace qsp::bound {

namespace {

double sq(double x) { return x * x; }

ExtendedRatio ratio(double numerator, double denominator) {
  ExtendedRatio r;
  if (denominator > 0.0) {
    r.value = numerator / denominator;
    r.defined = true;
  }
  return r;
}

// (1 + x^2)^-1 with the limit convention 0 for an undefined (infinite) ratio.
double rate_term(const ExtendedRatio& r) {
  if (!r.defined) return 0.0;
  return 1.0 / (1.0 + sq(r.value));
}

}  // namespace

EllTable ell_table_from_norms(const engine::OutcomeNorms& norms) {
  const double total = norms.total;
  const auto vertex = [&](int g, int e, int r) {
    return std::sqrt(norms.triple_at(g, e, r) / total);
  };
  const auto edge = [&](int e, int r) {
    return std::sqrt(norms.pair_at(e, r) / total);
  };
  EllTable t;
  t.atf = vertex(0, 0, 0);
  t.dtf = vertex(0, 0, 1);
  t.atm = vertex(1, 0, 0);
  t.dtm = vertex(1, 0, 1);
  t.auf = vertex(0, 1, 0);
  t.duf = vertex(0, 1, 1);
  t.aum = vertex(1, 1, 0);
  t.dum = vertex(1, 1, 1);
  t.at = edge(0, 0);
  t.dt = edge(0, 1);
  t.au = edge(1, 0);
  t.du = edge(1, 1);
  return t;
}

EllTable ell_table(const engine::MeasurementScenario& scenario) {
  return ell_table_from_norms(engine::outcome_norms(scenario));
}

RatioReport ratios_and_s_prime(const EllTable& ells) {
  RatioReport report;
  RatioSet& r = report.ratios;
  r.alpha = ratio(ells.at, ells.dt);
  r.alpha_f = ratio(ells.dtf, ells.atf);
  r.alpha_m = ratio(ells.dtm, ells.atm);
  r.beta = ratio(ells.du, ells.au);
  r.beta_f = ratio(ells.auf, ells.duf);
  r.beta_m = ratio(ells.aum, ells.dum);
  report.s_prime = rate_term(r.alpha) + rate_term(r.alpha_f) +
                   rate_term(r.alpha_m) + rate_term(r.beta) +
                   rate_term(r.beta_f) + rate_term(r.beta_m);
  return report;
}

IdentityReport verify_identities(const engine::MeasurementScenario& scenario) {
  const EllTable t = ell_table(scenario);
  const RatioReport rr = ratios_and_s_prime(t);
  const RatioSet& r = rr.ratios;

  IdentityReport report;
  report.triangle_slack_treated = t.dtf + t.dtm - t.dt;
  report.triangle_slack_control = t.auf + t.aum - t.au;
  report.triangles_pass = report.triangle_slack_treated >= -kTriangleTol &&
                          report.triangle_slack_control >= -kTriangleTol;

  // Decomposition of 1 = ||phi||^2 two ways. With every ratio finite the
  // weighted form is used verbatim; otherwise each product (1 + x^2) l^2 is
  // expanded into the vertex-square sum it equals, which stays finite.
  report.ratio_form_used = r.alpha.defined && r.alpha_f.defined &&
                           r.alpha_m.defined && r.beta.defined &&
                           r.beta_f.defined && r.beta_m.defined;
  double lhs, rhs;
  if (report.ratio_form_used) {
    lhs = (1.0 + sq(r.alpha.value)) * sq(t.dt) +
          (1.0 + sq(r.beta.value)) * sq(t.au);
    rhs = (1.0 + sq(r.alpha_f.value)) * sq(t.atf) +
          (1.0 + sq(r.alpha_m.value)) * sq(t.atm) +
          (1.0 + sq(r.beta_f.value)) * sq(t.duf) +
          (1.0 + sq(r.beta_m.value)) * sq(t.dum);
  } else {
    lhs = (sq(t.dt) + sq(t.at)) + (sq(t.au) + sq(t.du));
    rhs = (sq(t.atf) + sq(t.dtf)) + (sq(t.atm) + sq(t.dtm)) +
          (sq(t.duf) + sq(t.auf)) + (sq(t.dum) + sq(t.aum));
  }
  report.master_residual = lhs - rhs;
  report.master_pass = std::abs(report.master_residual) <= kMasterTol;

  if (t.dt > 0.0 && t.au > 0.0) {
    // Treated side: 1 + alpha^2 against the weighted alive-vertex terms.
    // Products are expanded to vertex sums so infinite subgroup ratios stay
    // harmless.
    const double treated_lhs = (sq(t.dt) + sq(t.at)) / sq(t.dt);
    const double treated_rhs =
        (sq(t.atf) + sq(t.dtf) + sq(t.atm) + sq(t.dtm)) / sq(t.dt);
    const double control_lhs = (sq(t.au) + sq(t.du)) / sq(t.au);
    const double control_rhs =
        (sq(t.duf) + sq(t.auf) + sq(t.dum) + sq(t.aum)) / sq(t.au);
    report.control_side_slack = control_lhs - control_rhs;
    report.control_side_holds = report.control_side_slack > 0.0;
    report.branch = treated_lhs >= treated_rhs ? SplitBranch::kTreatedSide
                                               : SplitBranch::kControlSide;
  } else {
    report.branch = SplitBranch::kBoundary;
  }
  return report;
}

BoundVerdict check_bound(const engine::MeasurementScenario& scenario) {
  const engine::OutcomeNorms norms = engine::outcome_norms(scenario);
  const engine::SimpsonStats stats =
      engine::simpson_statistics(engine::rates_from_norms(norms));
  const RatioReport rr = ratios_and_s_prime(ell_table_from_norms(norms));

  BoundVerdict verdict;
  verdict.s = stats.s;
  verdict.s_prime = rr.s_prime;
  verdict.margin = 2.0 - std::abs(stats.s);
  verdict.within = verdict.margin > 0.0 && verdict.s_prime < 5.0;
  return verdict;
}

}  // namespace qsp::bound
