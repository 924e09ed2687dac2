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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsp/linalg.hpp"

namespace qsp::engine {

using linalg::Matrix;
using linalg::Projector;
using linalg::StateVector;

// Conditioning events with probability below this threshold yield undefined
// rates instead of 0/0 noise.
inline constexpr double kConditioningThreshold = 1e-15;

struct InvalidOutcomeLabel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a statistic needs a conditional rate whose conditioning event
/// has vanishing probability. Lists the missing rates by name.
struct UndefinedRate : std::runtime_error {
  explicit UndefinedRate(std::vector<std::string> missing_rates);
  std::vector<std::string> missing;
};

/// A projective two-outcome measurement. The projectors must be complementary
/// (first + second = identity within kValidationTol).
struct TwoOutcomeMeasurement {
  std::array<std::string, 2> labels;
  Projector first;
  Projector second;
};

/// Builds a measurement whose second projector is exactly I - first.
TwoOutcomeMeasurement make_measurement(std::string label_first,
                                       std::string label_second,
                                       Projector first);

/// A state together with the three measurements applied in the fixed order
/// gender -> treatment -> result (or treatment -> result when gender is
/// skipped). The state may be unnormalized but must have positive norm.
struct MeasurementScenario {
  StateVector state;
  TwoOutcomeMeasurement gender;
  TwoOutcomeMeasurement treatment;
  TwoOutcomeMeasurement result;
};

/// Checks every MeasurementScenario invariant; throws ValidationError naming
/// the offending part.
void validate_scenario(const MeasurementScenario& scenario);

/// Raw squared norms of the state after each projection sequence of the two
/// experiments, plus the total squared norm. Dividing by `total` gives the
/// outcome probabilities.
struct OutcomeNorms {
  std::array<double, 8> triple{};  // gender -> treatment -> result
  std::array<double, 4> pair{};    // treatment -> result
  double total = 0.0;

  static constexpr int triple_index(int g, int e, int r) { return g * 4 + e * 2 + r; }
  static constexpr int pair_index(int e, int r) { return e * 2 + r; }
  double triple_at(int g, int e, int r) const { return triple[static_cast<size_t>(triple_index(g, e, r))]; }
  double pair_at(int e, int r) const { return pair[static_cast<size_t>(pair_index(e, r))]; }
};

OutcomeNorms outcome_norms(const MeasurementScenario& scenario);

/// Probability of the ordered outcome triple (gender, treatment, result) in
/// the three-measurement experiment. Outcomes are given by label.
double joint_probability(const MeasurementScenario& scenario,
                         std::string_view gender_outcome,
                         std::string_view treatment_outcome,
                         std::string_view result_outcome);

/// Probability of (treatment, result) in the experiment that skips the gender
/// measurement.
double joint_probability(const MeasurementScenario& scenario,
                         std::string_view treatment_outcome,
                         std::string_view result_outcome);

/// The six conditional rates plus the gender fractions. Fields are nullopt
/// when the conditioning event has probability < kConditioningThreshold.
/// Combined rates (r_t, r_c) come from the two-measurement experiment; the
/// per-gender rates and fractions come from the three-measurement one.
struct RateTable {
  std::optional<double> r_t, r_c;            // Pr(A|T), Pr(A|U)
  std::optional<double> rf_t, rm_t;          // Pr(A|F,T), Pr(A|M,T)
  std::optional<double> rf_c, rm_c;          // Pr(A|F,U), Pr(A|M,U)
  std::optional<double> frac_f_given_t, frac_m_given_t;
  std::optional<double> frac_f_given_u, frac_m_given_u;
};

RateTable rates_from_norms(const OutcomeNorms& norms);
RateTable conditional_rates(const MeasurementScenario& scenario);

struct SimpsonStats {
  double d_t;  // rf_t + rm_t - r_t
  double d_c;  // rf_c + rm_c - r_c
  double s;    // d_t - d_c
};

/// Throws UndefinedRate unless all six rates are defined.
SimpsonStats simpson_statistics(const RateTable& rates);

/// Residuals of the convexity identity r = frac_f * r_f + frac_m * r_m for
/// the treatment and control branches. Zero for commuting measurements.
struct ConvexityResiduals {
  double treatment;
  double control;
};

ConvexityResiduals convexity_residual(const MeasurementScenario& scenario);

struct ClassicalityReport {
  double comm_gender_treatment;
  double comm_gender_result;
  double comm_treatment_result;
  bool classical;  // all three commutator norms <= tol
};

ClassicalityReport classicality_check(const MeasurementScenario& scenario, double tol);

/// True iff the treatment rate interval [min(rf_t,rm_t), max(rf_t,rm_t)] and
/// the control interval are disjoint. Requires all six rates defined.
bool rate_intervals_disjoint(const RateTable& rates);

}  // namespace qsp::engine
