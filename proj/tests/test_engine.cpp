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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "qsp/engine.hpp"
#include "qsp/linalg.hpp"

namespace {

using qsp::engine::MeasurementScenario;
using qsp::engine::RateTable;
using qsp::linalg::Complex;
using qsp::linalg::Projector;
using qsp::linalg::StateVector;

Projector line_projector(double angle) {
  const StateVector dir(
      std::vector<Complex>{{std::cos(angle), 0.0}, {std::sin(angle), 0.0}});
  return qsp::linalg::projector_from_span({dir});
}

// dim-2 scenario with all three measurements along real directions; every
// outcome norm reduces to products of squared cosines.
MeasurementScenario angle_scenario(double g, double e, double r, double state_angle) {
  MeasurementScenario scenario;
  scenario.state = StateVector(
      std::vector<Complex>{{std::cos(state_angle), 0.0}, {std::sin(state_angle), 0.0}});
  scenario.gender = qsp::engine::make_measurement("F", "M", line_projector(g));
  scenario.treatment = qsp::engine::make_measurement("T", "U", line_projector(e));
  scenario.result = qsp::engine::make_measurement("A", "D", line_projector(r));
  return scenario;
}

}  // namespace

TEST_CASE("make_measurement produces complementary projectors") {
  const auto m = qsp::engine::make_measurement("T", "U", line_projector(0.7));
  const auto ident = qsp::linalg::Matrix::identity(2);
  CHECK(qsp::linalg::max_abs(m.first.matrix() + m.second.matrix() - ident) < 1e-15);
  CHECK(m.labels[0] == "T");
  CHECK(m.labels[1] == "U");
}

TEST_CASE("validate_scenario rejects broken scenarios") {
  auto scenario = angle_scenario(0.3, 0.9, 1.7, 0.5);
  CHECK_NOTHROW(qsp::engine::validate_scenario(scenario));

  auto zero_state = scenario;
  zero_state.state = StateVector(2);
  CHECK_THROWS_AS(qsp::engine::validate_scenario(zero_state), qsp::linalg::ValidationError);

  auto mismatched = scenario;
  mismatched.treatment.second = mismatched.treatment.first;  // breaks complementarity
  CHECK_THROWS_AS(qsp::engine::validate_scenario(mismatched), qsp::linalg::ValidationError);

  auto duplicate_labels = scenario;
  duplicate_labels.gender.labels = {"F", "F"};
  CHECK_THROWS_AS(qsp::engine::validate_scenario(duplicate_labels),
                  qsp::linalg::ValidationError);
}

TEST_CASE("outcome norms decompose the squared state norm") {
  const auto scenario = angle_scenario(0.3, 0.9, 1.7, 0.5);
  const auto norms = qsp::engine::outcome_norms(scenario);
  const double triple_sum = std::accumulate(norms.triple.begin(), norms.triple.end(), 0.0);
  const double pair_sum = std::accumulate(norms.pair.begin(), norms.pair.end(), 0.0);
  CHECK(norms.total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(triple_sum == doctest::Approx(norms.total).epsilon(1e-13));
  CHECK(pair_sum == doctest::Approx(norms.total).epsilon(1e-13));
}

TEST_CASE("outcome norms match hand-computed squared cosines") {
  // State |0>, treatment along pi/4, result along 0: each branch halves the
  // squared norm, so every pair norm is exactly 1/4.
  const auto scenario = angle_scenario(0.0, M_PI / 4.0, 0.0, 0.0);
  const auto norms = qsp::engine::outcome_norms(scenario);
  for (int e = 0; e < 2; ++e)
    for (int r = 0; r < 2; ++r) CHECK(norms.pair_at(e, r) == doctest::Approx(0.25).epsilon(1e-14));

  // Gender along 0 fixes |0>: the F branch replays the pair experiment and
  // the M branch is empty.
  for (int e = 0; e < 2; ++e)
    for (int r = 0; r < 2; ++r) {
      CHECK(norms.triple_at(0, e, r) == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(norms.triple_at(1, e, r) == 0.0);
    }
}

TEST_CASE("joint probabilities address outcomes by label") {
  const auto scenario = angle_scenario(0.0, M_PI / 4.0, 0.0, 0.0);
  CHECK(qsp::engine::joint_probability(scenario, "F", "T", "A") ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(qsp::engine::joint_probability(scenario, "M", "U", "D") == 0.0);
  CHECK(qsp::engine::joint_probability(scenario, "T", "A") ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(qsp::engine::joint_probability(scenario, "U", "D") ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS((void)qsp::engine::joint_probability(scenario, "F", "X", "A"),
                  qsp::engine::InvalidOutcomeLabel);
  CHECK_THROWS_AS((void)qsp::engine::joint_probability(scenario, "A", "T"),
                  qsp::engine::InvalidOutcomeLabel);
}

TEST_CASE("rates condition on positive-probability events only") {
  const auto scenario = angle_scenario(0.0, M_PI / 4.0, 0.0, 0.0);
  const RateTable rates = qsp::engine::conditional_rates(scenario);
  REQUIRE(rates.r_t.has_value());
  CHECK(*rates.r_t == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(rates.rf_t.has_value());
  CHECK(*rates.rf_t == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(*rates.frac_f_given_t == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*rates.frac_m_given_t == 0.0);

  // The M branch is empty, so the per-M rates are undefined.
  CHECK_FALSE(rates.rm_t.has_value());
  CHECK_FALSE(rates.rm_c.has_value());

  CHECK_THROWS_AS((void)qsp::engine::simpson_statistics(rates), qsp::engine::UndefinedRate);
  try {
    (void)qsp::engine::simpson_statistics(rates);
  } catch (const qsp::engine::UndefinedRate& e) {
    const auto& missing = e.missing;
    CHECK(std::find(missing.begin(), missing.end(), "rm_t") != missing.end());
    CHECK(std::find(missing.begin(), missing.end(), "rm_c") != missing.end());
    CHECK(missing.size() == 2);
  }
}

TEST_CASE("simpson statistics follow their defining arithmetic") {
  RateTable rates;
  rates.r_t = 0.6;
  rates.r_c = 0.3;
  rates.rf_t = 0.5;
  rates.rm_t = 0.7;
  rates.rf_c = 0.2;
  rates.rm_c = 0.4;
  const auto stats = qsp::engine::simpson_statistics(rates);
  CHECK(stats.d_t == doctest::Approx(0.5 + 0.7 - 0.6).epsilon(1e-15));
  CHECK(stats.d_c == doctest::Approx(0.2 + 0.4 - 0.3).epsilon(1e-15));
  CHECK(stats.s == doctest::Approx(stats.d_t - stats.d_c).epsilon(1e-15));
}

TEST_CASE("convexity residual vanishes when all projectors commute") {
  // Diagonal scenario on dim 8: slot bits (gender, treatment, result), all
  // eight cells populated. Commuting projections make the combined rate the
  // gender-fraction mixture of the per-gender rates.
  std::vector<Complex> amps;
  for (int i = 0; i < 8; ++i) amps.emplace_back(std::sqrt(0.04 + 0.02 * i), 0.0);
  const auto slot_span = [](int bit_index) {
    std::vector<StateVector> span;
    for (int i = 0; i < 8; ++i)
      if (((i >> bit_index) & 1) == 0) span.push_back(StateVector::basis(8, i));
    return qsp::linalg::projector_from_span(span);
  };
  MeasurementScenario scenario;
  scenario.state = StateVector(std::move(amps));
  scenario.gender = qsp::engine::make_measurement("F", "M", slot_span(2));
  scenario.treatment = qsp::engine::make_measurement("T", "U", slot_span(1));
  scenario.result = qsp::engine::make_measurement("A", "D", slot_span(0));

  CHECK(qsp::engine::classicality_check(scenario, 1e-12).classical);
  const auto residuals = qsp::engine::convexity_residual(scenario);
  CHECK(std::abs(residuals.treatment) < 1e-14);
  CHECK(std::abs(residuals.control) < 1e-14);
}

TEST_CASE("rank-1 measurements erase gender information downstream") {
  // A rank-1 treatment projector collapses every branch onto one ray, so the
  // per-gender and combined treated rates coincide and the residual is zero
  // even though the projectors do not commute.
  const auto scenario = angle_scenario(0.4, 1.1, 0.2, 0.9);
  CHECK_FALSE(qsp::engine::classicality_check(scenario, 1e-10).classical);
  const auto residuals = qsp::engine::convexity_residual(scenario);
  CHECK(std::abs(residuals.treatment) < 1e-14);
  CHECK(std::abs(residuals.control) < 1e-14);
}

TEST_CASE("convexity residual is nonzero for incompatible gender") {
  // dim 3, treatment rank 2 so gender information survives the update.
  // Hand computation: state (0.2, 0.5, 0.6), gender ray (1,2,1)/sqrt(6):
  // female treated branch (0.3, 0.6, 0), male treated branch (-0.1, -0.1, 0),
  // so rf_t = 0.2, rm_t = 0.5, r_t = 0.04/0.29, and the mixture is 10/47.
  MeasurementScenario scenario;
  scenario.state = StateVector(std::vector<Complex>{{0.2, 0.0}, {0.5, 0.0}, {0.6, 0.0}});
  const StateVector g_dir(std::vector<Complex>{
      {1.0 / std::sqrt(6.0), 0.0}, {2.0 / std::sqrt(6.0), 0.0}, {1.0 / std::sqrt(6.0), 0.0}});
  scenario.gender =
      qsp::engine::make_measurement("F", "M", qsp::linalg::projector_from_span({g_dir}));
  scenario.treatment = qsp::engine::make_measurement(
      "T", "U",
      qsp::linalg::projector_from_span({StateVector::basis(3, 0), StateVector::basis(3, 1)}));
  scenario.result = qsp::engine::make_measurement(
      "A", "D", qsp::linalg::projector_from_span({StateVector::basis(3, 0)}));

  const auto rates = qsp::engine::conditional_rates(scenario);
  REQUIRE(rates.r_t.has_value());
  CHECK(*rates.rf_t == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(*rates.rm_t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*rates.r_t == doctest::Approx(0.04 / 0.29).epsilon(1e-12));

  const auto residuals = qsp::engine::convexity_residual(scenario);
  const double mix = *rates.frac_f_given_t * *rates.rf_t + *rates.frac_m_given_t * *rates.rm_t;
  CHECK(residuals.treatment == doctest::Approx(*rates.r_t - mix).epsilon(1e-12));
  CHECK(std::abs(residuals.treatment) > 0.05);  // ~ -0.0748
}

TEST_CASE("classicality check measures commutators") {
  const auto commuting = angle_scenario(M_PI / 2.0, 0.0, M_PI / 2.0, 0.3);
  const auto report_c = qsp::engine::classicality_check(commuting, 1e-10);
  CHECK(report_c.classical);
  CHECK(report_c.comm_gender_treatment < 1e-15);

  const auto skew = angle_scenario(M_PI / 4.0, 0.0, 0.0, 0.3);
  const auto report_s = qsp::engine::classicality_check(skew, 1e-10);
  CHECK_FALSE(report_s.classical);
  CHECK(report_s.comm_gender_treatment == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(report_s.comm_treatment_result == 0.0);
}

TEST_CASE("rate interval disjointness compares per-gender ranges") {
  RateTable rates;
  rates.r_t = 0.9;
  rates.r_c = 0.2;
  rates.rf_t = 0.8;
  rates.rm_t = 0.9;
  rates.rf_c = 0.1;
  rates.rm_c = 0.3;
  CHECK(qsp::engine::rate_intervals_disjoint(rates));

  rates.rm_c = 0.85;  // control interval now reaches into the treated one
  CHECK_FALSE(qsp::engine::rate_intervals_disjoint(rates));

  rates.rm_c.reset();
  CHECK_THROWS_AS((void)qsp::engine::rate_intervals_disjoint(rates),
                  qsp::engine::UndefinedRate);
}
