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

#include <cmath>
#include <variant>
#include <vector>

#include <doctest.h>

#include "qsp/construction.hpp"
#include "qsp/engine.hpp"
#include "qsp/optimizer.hpp"
#include "qsp/rng.hpp"

namespace {

using qsp::construction::FamilyParams;
using qsp::optimizer::FamilyCurve;

}  // namespace

TEST_CASE("curve parameters and their validation") {
  const auto q1 = qsp::optimizer::curve_params(FamilyCurve::kQ1, 0.25);
  CHECK(q1.p == 1.0);
  CHECK(q1.q == 0.25);
  const auto q2 = qsp::optimizer::curve_params(FamilyCurve::kQ2, 0.25);
  CHECK(q2.p == 0.25);
  CHECK(q2.q == 0.0625);

  for (const double bad : {0.0, -0.5, 1.5}) {
    CHECK_THROWS_AS(qsp::optimizer::curve_params(FamilyCurve::kQ1, bad),
                    qsp::optimizer::InvalidEpsilon);
  }
  CHECK_THROWS_AS(qsp::optimizer::curve_params(FamilyCurve::kQ2, std::nan("")),
                  qsp::optimizer::InvalidEpsilon);
}

TEST_CASE("sweep rows agree with the closed form") {
  const std::vector<double> eps{0.5, 0.1, 0.01};
  const auto rows = qsp::optimizer::sweep_family(eps, FamilyCurve::kQ2);
  REQUIRE(rows.size() == eps.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].eps == eps[i]);
    const FamilyParams params{eps[i], eps[i] * eps[i]};
    CHECK(rows[i].s ==
          doctest::Approx(qsp::construction::family_S(params)).epsilon(1e-12));
  }
}

TEST_CASE("parameter counts") {
  CHECK(qsp::optimizer::angle_count(8, {4, 1, 4}) == 2 * (4 * 4 + 1 * 7 + 4 * 4));
  CHECK(qsp::optimizer::angle_count(2, {1, 1, 1}) == 6);
  CHECK(qsp::optimizer::state_param_count(8) == 14);
  CHECK(qsp::optimizer::state_param_count(2) == 2);
}

TEST_CASE("decode produces valid scenarios deterministically") {
  qsp::Rng rng(5);
  qsp::optimizer::ScenarioParameterization params;
  params.dim = 5;
  params.ranks = {2, 1, 3};
  params.angles.resize(
      static_cast<size_t>(qsp::optimizer::angle_count(params.dim, params.ranks)));
  params.state_params.resize(
      static_cast<size_t>(qsp::optimizer::state_param_count(params.dim)));
  for (auto& a : params.angles) a = rng.uniform(0.0, 2.0 * M_PI);
  for (auto& a : params.state_params) a = rng.uniform(0.0, 2.0 * M_PI);

  const auto first = qsp::optimizer::decode(params);
  CHECK_NOTHROW(qsp::engine::validate_scenario(first));
  CHECK(first.gender.first.rank() == 2);
  CHECK(first.treatment.first.rank() == 1);
  CHECK(first.result.first.rank() == 3);
  CHECK(qsp::linalg::norm_sq(first.state) == doctest::Approx(1.0).epsilon(1e-12));

  const auto second = qsp::optimizer::decode(params);
  CHECK(qsp::linalg::max_abs(first.gender.first.matrix() - second.gender.first.matrix()) == 0.0);

  params.angles.pop_back();
  CHECK_THROWS_AS((void)qsp::optimizer::decode(params), std::invalid_argument);
}

TEST_CASE("family curve search reaches the shrinking-eps supremum") {
  qsp::optimizer::FamilyOptimizeConfig config;
  config.curve = FamilyCurve::kQ2;
  config.floor = 1e-4;
  config.grid = 100;
  const auto report = qsp::optimizer::optimize_family(config);
  const auto& best = std::get<FamilyParams>(report.best_params);
  CHECK(best.p == 1e-4);  // the floor endpoint is on every refined grid
  CHECK(report.best_s >= 1.9997);
  CHECK(report.best_s < 2.0);
  CHECK(report.best_s ==
        doctest::Approx(qsp::construction::family_S(best)).epsilon(1e-12));
  CHECK(report.evaluations > 0);
}

TEST_CASE("family curve search respects the floor endpoint exactly") {
  qsp::optimizer::FamilyOptimizeConfig config;
  config.curve = FamilyCurve::kQ1;
  config.floor = 0.5;
  config.grid = 37;
  const auto report = qsp::optimizer::optimize_family(config);
  const auto& best = std::get<FamilyParams>(report.best_params);
  // S decreases along the p = 1 slice, so the floor is the maximizer.
  CHECK(best.p == 1.0);
  CHECK(best.q == 0.5);
  CHECK(report.best_s == qsp::construction::family_S({1.0, 0.5}));
}

TEST_CASE("family box search prefers small q over small p") {
  qsp::optimizer::FamilyOptimizeConfig config;
  config.curve.reset();
  config.floor = 1e-4;
  config.grid = 40;
  const auto report = qsp::optimizer::optimize_family(config);
  const auto& best = std::get<FamilyParams>(report.best_params);
  CHECK(best.q == 1e-4);  // boundary maximizer in q
  CHECK(best.q < best.p);
  CHECK(report.best_s > 1.99);
  CHECK(report.best_s < 2.0);
}

TEST_CASE("family config validation") {
  qsp::optimizer::FamilyOptimizeConfig config;
  config.floor = 0.0;
  CHECK_THROWS_AS((void)qsp::optimizer::optimize_family(config), std::invalid_argument);
  config.floor = 1e-6;
  config.grid = 1;
  CHECK_THROWS_AS((void)qsp::optimizer::optimize_family(config), std::invalid_argument);
}

TEST_CASE("general search is reproducible and thread-count independent") {
  qsp::optimizer::GeneralOptimizeConfig config;
  config.dim = 4;
  config.ranks = {2, 1, 2};
  config.seed = 11;
  config.restarts = 6;
  config.iters = 300;

  config.threads = 1;
  const auto serial = qsp::optimizer::optimize_general(config);
  config.threads = 3;
  const auto parallel = qsp::optimizer::optimize_general(config);
  CHECK(serial.best_s == parallel.best_s);
  CHECK(serial.evaluations == parallel.evaluations);
  CHECK(serial.best_s > 1.0);
  CHECK(serial.best_s < 2.0);

  const auto& best = std::get<qsp::optimizer::ScenarioParameterization>(serial.best_params);
  const auto scenario = qsp::optimizer::decode(best);
  const double s =
      qsp::engine::simpson_statistics(qsp::engine::conditional_rates(scenario)).s;
  CHECK(std::abs(s) == doctest::Approx(serial.best_s).epsilon(1e-9));
}

TEST_CASE("general search at dimension two stays at the classical ceiling") {
  qsp::optimizer::GeneralOptimizeConfig config;
  config.dim = 2;
  config.ranks = {1, 1, 1};
  config.seed = 5;
  config.restarts = 12;
  config.iters = 600;
  const auto report = qsp::optimizer::optimize_general(config);
  CHECK(report.best_s <= 1.0 + 1e-9);
  CHECK(report.best_s > 0.99);
}

TEST_CASE("general config validation") {
  qsp::optimizer::GeneralOptimizeConfig config;
  config.dim = 17;
  CHECK_THROWS_AS((void)qsp::optimizer::optimize_general(config), std::invalid_argument);
  config.dim = 4;
  config.ranks = {4, 1, 1};  // rank must leave room for the complement
  CHECK_THROWS_AS((void)qsp::optimizer::optimize_general(config), std::invalid_argument);
}
