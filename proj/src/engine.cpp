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

#include "qsp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsp::engine {

using linalg::kValidationTol;
using linalg::ValidationError;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out << ", ";
    out << parts[i];
  }
  return out.str();
}

const Projector& outcome_projector(const TwoOutcomeMeasurement& m, int idx) {
  return idx == 0 ? m.first : m.second;
}

int label_index(const TwoOutcomeMeasurement& m, std::string_view label) {
  if (label == m.labels[0]) return 0;
  if (label == m.labels[1]) return 1;
  throw InvalidOutcomeLabel("unknown outcome label '" + std::string(label) +
                            "' (expected '" + m.labels[0] + "' or '" + m.labels[1] + "')");
}

void check_measurement(const TwoOutcomeMeasurement& m, int dim, const char* name) {
  if (m.first.dim() != dim || m.second.dim() != dim) {
    throw ValidationError(std::string(name) + ": projector dim does not match state dim");
  }
  const double res = max_abs(m.first.matrix() + m.second.matrix() - Matrix::identity(dim));
  if (res > kValidationTol) {
    throw ValidationError(std::string(name) + ": projectors not complementary, residual " +
                          std::to_string(res));
  }
  if (m.labels[0].empty() || m.labels[1].empty() || m.labels[0] == m.labels[1]) {
    throw ValidationError(std::string(name) + ": outcome labels must be distinct and non-empty");
  }
}

}  // namespace

UndefinedRate::UndefinedRate(std::vector<std::string> missing_rates)
    : std::runtime_error("undefined rate(s): conditioning event vanished for " +
                         join(missing_rates)),
      missing(std::move(missing_rates)) {}

TwoOutcomeMeasurement make_measurement(std::string label_first,
                                       std::string label_second,
                                       Projector first) {
  Projector second = complement(first);
  return TwoOutcomeMeasurement{{std::move(label_first), std::move(label_second)},
                               std::move(first), std::move(second)};
}

void validate_scenario(const MeasurementScenario& scenario) {
  const int dim = scenario.state.dim();
  if (dim < 1) throw ValidationError("state: dim must be >= 1");
  if (norm_sq(scenario.state) <= 0.0) {
    throw ValidationError("state: squared norm must be strictly positive");
  }
  check_measurement(scenario.gender, dim, "gender");
  check_measurement(scenario.treatment, dim, "treatment");
  check_measurement(scenario.result, dim, "result");
}

OutcomeNorms outcome_norms(const MeasurementScenario& scenario) {
  OutcomeNorms out;
  out.total = norm_sq(scenario.state);
  for (int e = 0; e < 2; ++e) {
    const StateVector after_e = apply(outcome_projector(scenario.treatment, e), scenario.state);
    for (int r = 0; r < 2; ++r) {
      out.pair[static_cast<size_t>(OutcomeNorms::pair_index(e, r))] =
          norm_sq(apply(outcome_projector(scenario.result, r), after_e));
    }
  }
  for (int g = 0; g < 2; ++g) {
    const StateVector after_g = apply(outcome_projector(scenario.gender, g), scenario.state);
    for (int e = 0; e < 2; ++e) {
      const StateVector after_e = apply(outcome_projector(scenario.treatment, e), after_g);
      for (int r = 0; r < 2; ++r) {
        out.triple[static_cast<size_t>(OutcomeNorms::triple_index(g, e, r))] =
            norm_sq(apply(outcome_projector(scenario.result, r), after_e));
      }
    }
  }
  return out;
}

double joint_probability(const MeasurementScenario& scenario,
                         std::string_view gender_outcome,
                         std::string_view treatment_outcome,
                         std::string_view result_outcome) {
  const int g = label_index(scenario.gender, gender_outcome);
  const int e = label_index(scenario.treatment, treatment_outcome);
  const int r = label_index(scenario.result, result_outcome);
  const OutcomeNorms n = outcome_norms(scenario);
  return n.triple_at(g, e, r) / n.total;
}

double joint_probability(const MeasurementScenario& scenario,
                         std::string_view treatment_outcome,
                         std::string_view result_outcome) {
  const int e = label_index(scenario.treatment, treatment_outcome);
  const int r = label_index(scenario.result, result_outcome);
  const OutcomeNorms n = outcome_norms(scenario);
  return n.pair_at(e, r) / n.total;
}

RateTable rates_from_norms(const OutcomeNorms& n) {
  const auto cond = [&n](double numerator, double denominator) -> std::optional<double> {
    if (denominator < kConditioningThreshold * n.total) return std::nullopt;
    return numerator / denominator;
  };

  RateTable t;
  // Combined rates: treatment -> result experiment. Outcome index 0 of the
  // result measurement is "alive", 0 of treatment is "treated".
  t.r_t = cond(n.pair_at(0, 0), n.pair_at(0, 0) + n.pair_at(0, 1));
  t.r_c = cond(n.pair_at(1, 0), n.pair_at(1, 0) + n.pair_at(1, 1));

  // Per-gender rates: gender -> treatment -> result experiment.
  t.rf_t = cond(n.triple_at(0, 0, 0), n.triple_at(0, 0, 0) + n.triple_at(0, 0, 1));
  t.rm_t = cond(n.triple_at(1, 0, 0), n.triple_at(1, 0, 0) + n.triple_at(1, 0, 1));
  t.rf_c = cond(n.triple_at(0, 1, 0), n.triple_at(0, 1, 0) + n.triple_at(0, 1, 1));
  t.rm_c = cond(n.triple_at(1, 1, 0), n.triple_at(1, 1, 0) + n.triple_at(1, 1, 1));

  // Gender fractions inside each arm of the three-measurement experiment.
  const double mass_ft = n.triple_at(0, 0, 0) + n.triple_at(0, 0, 1);
  const double mass_mt = n.triple_at(1, 0, 0) + n.triple_at(1, 0, 1);
  const double mass_fu = n.triple_at(0, 1, 0) + n.triple_at(0, 1, 1);
  const double mass_mu = n.triple_at(1, 1, 0) + n.triple_at(1, 1, 1);
  t.frac_f_given_t = cond(mass_ft, mass_ft + mass_mt);
  t.frac_m_given_t = cond(mass_mt, mass_ft + mass_mt);
  t.frac_f_given_u = cond(mass_fu, mass_fu + mass_mu);
  t.frac_m_given_u = cond(mass_mu, mass_fu + mass_mu);
  return t;
}

RateTable conditional_rates(const MeasurementScenario& scenario) {
  return rates_from_norms(outcome_norms(scenario));
}

SimpsonStats simpson_statistics(const RateTable& rates) {
  std::vector<std::string> missing;
  if (!rates.r_t) missing.push_back("r_t");
  if (!rates.r_c) missing.push_back("r_c");
  if (!rates.rf_t) missing.push_back("rf_t");
  if (!rates.rm_t) missing.push_back("rm_t");
  if (!rates.rf_c) missing.push_back("rf_c");
  if (!rates.rm_c) missing.push_back("rm_c");
  if (!missing.empty()) throw UndefinedRate(std::move(missing));

  SimpsonStats stats{};
  stats.d_t = *rates.rf_t + *rates.rm_t - *rates.r_t;
  stats.d_c = *rates.rf_c + *rates.rm_c - *rates.r_c;
  stats.s = stats.d_t - stats.d_c;
  return stats;
}

ConvexityResiduals convexity_residual(const MeasurementScenario& scenario) {
  const RateTable t = conditional_rates(scenario);
  std::vector<std::string> missing;
  if (!t.r_t) missing.push_back("r_t");
  if (!t.rf_t) missing.push_back("rf_t");
  if (!t.rm_t) missing.push_back("rm_t");
  if (!t.frac_f_given_t) missing.push_back("frac_f_given_t");
  if (!t.frac_m_given_t) missing.push_back("frac_m_given_t");
  if (!t.r_c) missing.push_back("r_c");
  if (!t.rf_c) missing.push_back("rf_c");
  if (!t.rm_c) missing.push_back("rm_c");
  if (!t.frac_f_given_u) missing.push_back("frac_f_given_u");
  if (!t.frac_m_given_u) missing.push_back("frac_m_given_u");
  if (!missing.empty()) throw UndefinedRate(std::move(missing));

  ConvexityResiduals res{};
  res.treatment = *t.r_t - (*t.frac_f_given_t * *t.rf_t + *t.frac_m_given_t * *t.rm_t);
  res.control = *t.r_c - (*t.frac_f_given_u * *t.rf_c + *t.frac_m_given_u * *t.rm_c);
  return res;
}

ClassicalityReport classicality_check(const MeasurementScenario& scenario, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classicality_check: tol must be positive");
  ClassicalityReport rep{};
  rep.comm_gender_treatment = commutator_norm(scenario.gender.first, scenario.treatment.first);
  rep.comm_gender_result = commutator_norm(scenario.gender.first, scenario.result.first);
  rep.comm_treatment_result = commutator_norm(scenario.treatment.first, scenario.result.first);
  rep.classical = rep.comm_gender_treatment <= tol && rep.comm_gender_result <= tol &&
                  rep.comm_treatment_result <= tol;
  return rep;
}

bool rate_intervals_disjoint(const RateTable& rates) {
  std::vector<std::string> missing;
  if (!rates.r_t) missing.push_back("r_t");
  if (!rates.r_c) missing.push_back("r_c");
  if (!rates.rf_t) missing.push_back("rf_t");
  if (!rates.rm_t) missing.push_back("rm_t");
  if (!rates.rf_c) missing.push_back("rf_c");
  if (!rates.rm_c) missing.push_back("rm_c");
  if (!missing.empty()) throw UndefinedRate(std::move(missing));

  const double t_lo = std::min(*rates.rf_t, *rates.rm_t);
  const double t_hi = std::max(*rates.rf_t, *rates.rm_t);
  const double c_lo = std::min(*rates.rf_c, *rates.rm_c);
  const double c_hi = std::max(*rates.rf_c, *rates.rm_c);
  return t_lo > c_hi || c_lo > t_hi;
}

}  // namespace qsp::engine
