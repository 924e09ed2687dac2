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

#ifndef QSP_CLASSICAL_HPP_
#define QSP_CLASSICAL_HPP_

#include <cstdint>

#include "qsp/engine.hpp"
#include "qsp/rng.hpp"

namespace qsp::classical {

// Sum of the 8 probabilities must equal 1 within this tolerance.
inline constexpr double kDistributionTol = 1e-12;

// Joint distribution over the 8 outcome triples (gender, treatment, result).
// Index layout matches engine::OutcomeNorms: g*4 + e*2 + r with outcome 0
// meaning the first label (F, T, A).
struct ClassicalDistribution {
  std::array<double, 8> probs{};

  static constexpr int index(int g, int e, int r) { return g * 4 + e * 2 + r; }
  double at(int g, int e, int r) const {
    return probs[static_cast<size_t>(index(g, e, r))];
  }
  double& at(int g, int e, int r) {
    return probs[static_cast<size_t>(index(g, e, r))];
  }
};

// Throws linalg::ValidationError unless all entries are nonnegative and the
// total is 1 within kDistributionTol.
void validate_distribution(const ClassicalDistribution& dist);

ClassicalDistribution uniform_distribution();
ClassicalDistribution point_mass(int g, int e, int r);

// Product distribution: Pr(g) and Pr(e) independent, recovery rate depending
// on the arm only (rate_t under treatment, rate_c under control). Subgroup
// and combined rates then coincide on each arm.
ClassicalDistribution product_distribution(double pr_female, double pr_treated,
                                           double rate_t, double rate_c);

// Uniform sample from the probability simplex: 8 independent exponential
// draws, normalized. Deterministic in the generator state.
ClassicalDistribution random_distribution(Rng& rng);
ClassicalDistribution random_distribution(std::uint64_t seed);

// Conditional rates computed directly from the joint distribution. A rate is
// left undefined when its conditioning event has probability below
// engine::kConditioningThreshold. Independent of the quantum engine so it can
// serve as an oracle for embed_commuting.
engine::RateTable classical_rates(const ClassicalDistribution& dist);

// S = d_t - d_c from classical_rates. Throws engine::UndefinedRate listing
// the missing rates when any of the six is undefined.
double classical_S(const ClassicalDistribution& dist);

// Residuals of the mixture identity on each arm:
//   R_t - (Pr(F|T) R^f_t + Pr(M|T) R^m_t)   and the control analogue.
// Identically zero for joint distributions up to rounding. Throws
// engine::UndefinedRate when either arm's rates are undefined.
engine::ConvexityResiduals verify_convexity(const ClassicalDistribution& dist);

// Dim-8 scenario with state amplitudes sqrt(probs) on the standard basis and
// diagonal projector pairs selecting the basis vectors that carry each
// outcome label. All three measurements commute, and engine rates reproduce
// classical_rates(dist).
engine::MeasurementScenario embed_commuting(const ClassicalDistribution& dist);

}  // namespace qsp::classical

#endif  // QSP_CLASSICAL_HPP_
