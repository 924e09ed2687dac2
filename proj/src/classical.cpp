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

#include "qsp/classical.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qsp/linalg.hpp"

namespace qsp::classical {

namespace {

void check_index(int g, int e, int r) {
  if (g < 0 || g > 1 || e < 0 || e > 1 || r < 0 || r > 1) {
    throw std::invalid_argument("outcome indices must be 0 or 1");
  }
}

}  // namespace

void validate_distribution(const ClassicalDistribution& dist) {
  double sum = 0.0;
  for (double p : dist.probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw linalg::ValidationError(
          "distribution entries must be finite and nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw linalg::ValidationError("distribution entries must sum to 1, got " +
                                  std::to_string(sum));
  }
}

ClassicalDistribution uniform_distribution() {
  ClassicalDistribution dist;
  dist.probs.fill(0.125);
  return dist;
}

ClassicalDistribution point_mass(int g, int e, int r) {
  check_index(g, e, r);
  ClassicalDistribution dist;
  dist.at(g, e, r) = 1.0;
  return dist;
}

ClassicalDistribution product_distribution(double pr_female, double pr_treated,
                                           double rate_t, double rate_c) {
  for (double v : {pr_female, pr_treated, rate_t, rate_c}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
  }
  ClassicalDistribution dist;
  for (int g = 0; g < 2; ++g) {
    const double pg = (g == 0) ? pr_female : 1.0 - pr_female;
    for (int e = 0; e < 2; ++e) {
      const double pe = (e == 0) ? pr_treated : 1.0 - pr_treated;
      const double alive = (e == 0) ? rate_t : rate_c;
      dist.at(g, e, 0) = pg * pe * alive;
      dist.at(g, e, 1) = pg * pe * (1.0 - alive);
    }
  }
  return dist;
}

ClassicalDistribution random_distribution(Rng& rng) {
  ClassicalDistribution dist;
  double sum = 0.0;
  for (double& p : dist.probs) {
    p = rng.exponential();
    sum += p;
  }
  for (double& p : dist.probs) p /= sum;
  return dist;
}

ClassicalDistribution random_distribution(std::uint64_t seed) {
  Rng rng(seed);
  return random_distribution(rng);
}

engine::RateTable classical_rates(const ClassicalDistribution& dist) {
  validate_distribution(dist);
  const auto mass_ge = [&dist](int g, int e) {
    return dist.at(g, e, 0) + dist.at(g, e, 1);
  };
  const auto mass_e = [&](int e) { return mass_ge(0, e) + mass_ge(1, e); };
  const auto cond = [](double numerator, double denominator) {
    std::optional<double> rate;
    if (denominator >= engine::kConditioningThreshold) {
      rate = numerator / denominator;
    }
    return rate;
  };

  engine::RateTable rates;
  rates.r_t = cond(dist.at(0, 0, 0) + dist.at(1, 0, 0), mass_e(0));
  rates.r_c = cond(dist.at(0, 1, 0) + dist.at(1, 1, 0), mass_e(1));
  rates.rf_t = cond(dist.at(0, 0, 0), mass_ge(0, 0));
  rates.rm_t = cond(dist.at(1, 0, 0), mass_ge(1, 0));
  rates.rf_c = cond(dist.at(0, 1, 0), mass_ge(0, 1));
  rates.rm_c = cond(dist.at(1, 1, 0), mass_ge(1, 1));
  rates.frac_f_given_t = cond(mass_ge(0, 0), mass_e(0));
  rates.frac_m_given_t = cond(mass_ge(1, 0), mass_e(0));
  rates.frac_f_given_u = cond(mass_ge(0, 1), mass_e(1));
  rates.frac_m_given_u = cond(mass_ge(1, 1), mass_e(1));
  return rates;
}

double classical_S(const ClassicalDistribution& dist) {
  const engine::RateTable rates = classical_rates(dist);
  std::vector<std::string> missing;
  const auto need = [&missing](const std::optional<double>& rate,
                               const char* name) {
    if (!rate.has_value()) missing.emplace_back(name);
    return rate.value_or(0.0);
  };
  const double r_t = need(rates.r_t, "r_t");
  const double r_c = need(rates.r_c, "r_c");
  const double rf_t = need(rates.rf_t, "rf_t");
  const double rm_t = need(rates.rm_t, "rm_t");
  const double rf_c = need(rates.rf_c, "rf_c");
  const double rm_c = need(rates.rm_c, "rm_c");
  if (!missing.empty()) throw engine::UndefinedRate(std::move(missing));
  const double d_t = rf_t + rm_t - r_t;
  const double d_c = rf_c + rm_c - r_c;
  return d_t - d_c;
}

engine::ConvexityResiduals verify_convexity(const ClassicalDistribution& dist) {
  const engine::RateTable rates = classical_rates(dist);
  std::vector<std::string> missing;
  const auto need = [&missing](const std::optional<double>& rate,
                               const char* name) {
    if (!rate.has_value()) missing.emplace_back(name);
    return rate.value_or(0.0);
  };
  const double r_t = need(rates.r_t, "r_t");
  const double rf_t = need(rates.rf_t, "rf_t");
  const double rm_t = need(rates.rm_t, "rm_t");
  const double af_t = need(rates.frac_f_given_t, "frac_f_given_t");
  const double am_t = need(rates.frac_m_given_t, "frac_m_given_t");
  const double r_c = need(rates.r_c, "r_c");
  const double rf_c = need(rates.rf_c, "rf_c");
  const double rm_c = need(rates.rm_c, "rm_c");
  const double af_u = need(rates.frac_f_given_u, "frac_f_given_u");
  const double am_u = need(rates.frac_m_given_u, "frac_m_given_u");
  if (!missing.empty()) throw engine::UndefinedRate(std::move(missing));

  engine::ConvexityResiduals res;
  res.treatment = r_t - (af_t * rf_t + am_t * rm_t);
  res.control = r_c - (af_u * rf_c + am_u * rm_c);
  return res;
}

engine::MeasurementScenario embed_commuting(const ClassicalDistribution& dist) {
  validate_distribution(dist);
  constexpr int kDim = 8;
  std::vector<linalg::Complex> amplitudes(kDim);
  for (int i = 0; i < kDim; ++i) {
    amplitudes[static_cast<size_t>(i)] = std::sqrt(dist.probs[static_cast<size_t>(i)]);
  }
  linalg::StateVector state(std::move(amplitudes));

  // Diagonal projector selecting the basis vectors whose outcome bit for the
  // given slot (0 = gender, 1 = treatment, 2 = result) is zero.
  const auto select = [](int slot) {
    linalg::Matrix proj(kDim);
    for (int i = 0; i < kDim; ++i) {
      const int bit = (i >> (2 - slot)) & 1;
      if (bit == 0) proj.at(i, i) = 1.0;
    }
    return linalg::Projector(proj);
  };

  engine::MeasurementScenario scenario{
      std::move(state),
      engine::make_measurement("F", "M", select(0)),
      engine::make_measurement("T", "U", select(1)),
      engine::make_measurement("A", "D", select(2))};
  engine::validate_scenario(scenario);
  return scenario;
}

}  // namespace qsp::classical
