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

#include <array>
#include <cmath>
#include <optional>

#include <doctest.h>

#include "qsp/classical.hpp"
#include "qsp/engine.hpp"
#include "qsp/rng.hpp"

namespace {

using qsp::classical::ClassicalDistribution;

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(qsp::classical::validate_distribution(qsp::classical::uniform_distribution()));

  ClassicalDistribution negative{};
  negative.probs = {1.2, -0.2, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(qsp::classical::validate_distribution(negative),
                  qsp::linalg::ValidationError);

  ClassicalDistribution short_sum{};
  short_sum.probs = {0.5, 0.4, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(qsp::classical::validate_distribution(short_sum),
                  qsp::linalg::ValidationError);
}

TEST_CASE("random distributions are deterministic in the seed") {
  const auto a = qsp::classical::random_distribution(1234);
  const auto b = qsp::classical::random_distribution(1234);
  const auto c = qsp::classical::random_distribution(1235);
  CHECK(a.probs == b.probs);
  CHECK(a.probs != c.probs);
  double sum = 0.0;
  for (const double p : a.probs) {
    CHECK(p >= 0.0);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("uniform distribution has rate one half everywhere and S = 0") {
  const auto rates = qsp::classical::classical_rates(qsp::classical::uniform_distribution());
  CHECK(*rates.r_t == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(*rates.rf_c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(qsp::classical::classical_S(qsp::classical::uniform_distribution()) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("gender-independent tables show no reversal and zero residuals") {
  // Recovery depends only on the treatment arm: 0.99 treated, 0.33 control.
  const auto dist = qsp::classical::product_distribution(0.37, 0.61, 0.99, 0.33);
  const auto rates = qsp::classical::classical_rates(dist);
  CHECK(*rates.r_t == doctest::Approx(0.99).epsilon(1e-14));
  CHECK(*rates.rf_t == doctest::Approx(0.99).epsilon(1e-14));
  CHECK(*rates.rm_t == doctest::Approx(0.99).epsilon(1e-14));
  CHECK(*rates.r_c == doctest::Approx(0.33).epsilon(1e-14));
  CHECK(*rates.rf_c == doctest::Approx(0.33).epsilon(1e-14));
  CHECK(*rates.rm_c == doctest::Approx(0.33).epsilon(1e-14));
  CHECK(*rates.frac_f_given_t == doctest::Approx(0.37).epsilon(1e-13));

  const auto residuals = qsp::classical::verify_convexity(dist);
  CHECK(std::abs(residuals.treatment) < 1e-14);
  CHECK(std::abs(residuals.control) < 1e-14);
  CHECK(qsp::engine::rate_intervals_disjoint(rates));
  CHECK(*rates.r_t > *rates.r_c);  // combined rates agree with the subgroups
  CHECK(std::abs(qsp::classical::classical_S(dist)) <= 1.0);
}

TEST_CASE("point masses leave the empty branches undefined") {
  const auto dist = qsp::classical::point_mass(0, 0, 0);
  const auto rates = qsp::classical::classical_rates(dist);
  CHECK(*rates.r_t == 1.0);
  CHECK(*rates.rf_t == 1.0);
  CHECK_FALSE(rates.rm_t.has_value());
  CHECK_FALSE(rates.r_c.has_value());
  CHECK_THROWS_AS((void)qsp::classical::classical_S(dist), qsp::engine::UndefinedRate);
}

TEST_CASE("denominator-8 exhaustion attains the classical bound exactly") {
  // Every distribution with all cells k/8: place 8 units into 8 cells and
  // scan. The largest defined |S| over this grid is exactly 1.
  std::array<int, 8> cells{};
  double max_abs_s = 0.0;
  long defined = 0;
  const auto scan = [&](const auto& self, int index, int remaining) -> void {
    if (index == 7) {
      cells[7] = remaining;
      ClassicalDistribution dist{};
      for (int i = 0; i < 8; ++i) dist.probs[static_cast<size_t>(i)] = cells[static_cast<size_t>(i)] / 8.0;
      try {
        max_abs_s = std::max(max_abs_s, std::abs(qsp::classical::classical_S(dist)));
        ++defined;
      } catch (const qsp::engine::UndefinedRate&) {
      }
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cells[static_cast<size_t>(index)] = k;
      self(self, index + 1, remaining - k);
    }
  };
  scan(scan, 0, 8);
  CHECK(defined > 1000);
  CHECK(max_abs_s <= 1.0 + 1e-12);
  CHECK(max_abs_s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random distributions respect the classical bound") {
  qsp::Rng rng(99);
  double max_abs_s = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto dist = qsp::classical::random_distribution(rng);
    max_abs_s = std::max(max_abs_s, std::abs(qsp::classical::classical_S(dist)));
    const auto residuals = qsp::classical::verify_convexity(dist);
    CHECK(std::abs(residuals.treatment) <= 1e-12);
    CHECK(std::abs(residuals.control) <= 1e-12);
  }
  CHECK(max_abs_s <= 1.0 + 1e-12);
  CHECK(max_abs_s > 0.2);  // the sampler is not degenerate
}

TEST_CASE("embedding reproduces the classical table through the engine") {
  qsp::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto dist = qsp::classical::random_distribution(rng);
    const auto scenario = qsp::classical::embed_commuting(dist);
    const auto direct = qsp::classical::classical_rates(dist);
    const auto via_engine = qsp::engine::conditional_rates(scenario);

    const auto agree = [](const std::optional<double>& a, const std::optional<double>& b) {
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(std::abs(*a - *b) <= 1e-12);
    };
    agree(direct.r_t, via_engine.r_t);
    agree(direct.r_c, via_engine.r_c);
    agree(direct.rf_t, via_engine.rf_t);
    agree(direct.rm_t, via_engine.rm_t);
    agree(direct.rf_c, via_engine.rf_c);
    agree(direct.rm_c, via_engine.rm_c);
    agree(direct.frac_f_given_t, via_engine.frac_f_given_t);
    agree(direct.frac_f_given_u, via_engine.frac_f_given_u);
  }
}

TEST_CASE("embedded scenarios are classical in the commutator sense") {
  const auto scenario =
      qsp::classical::embed_commuting(qsp::classical::random_distribution(3));
  CHECK(qsp::engine::classicality_check(scenario, 1e-12).classical);

  const auto point = qsp::classical::embed_commuting(qsp::classical::point_mass(1, 0, 1));
  CHECK(qsp::engine::joint_probability(point, "M", "T", "D") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(qsp::engine::joint_probability(point, "F", "T", "D") == 0.0);
}
