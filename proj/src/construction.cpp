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

#include "qsp/construction.hpp"

#include <cmath>

namespace qsp::construction {

using engine::kConditioningThreshold;
using engine::make_measurement;
using engine::outcome_norms;
using engine::OutcomeNorms;
using linalg::Complex;
using linalg::Projector;
using linalg::projector_from_span;
using linalg::StateVector;

namespace {

constexpr int kDim = 8;

// Basis index for |v> (x) |w> with V index v in {t=0, u0=1, u1=2, u2=3} and
// W index w in {a=0, d=1}; W varies fastest.
constexpr int vw(int v, int w) { return v * 2 + w; }

// Lifts a V-space vector to H by tensoring with the W basis vector w.
StateVector lift(const std::array<double, 4>& v_amps, int w) {
  StateVector out(kDim);
  for (int v = 0; v < 4; ++v) out[vw(v, w)] = Complex(v_amps[static_cast<size_t>(v)], 0.0);
  return out;
}

void check_params(const FamilyParams& params) {
  if (!(params.p >= 0.0) || !(params.q >= 0.0) || !std::isfinite(params.p) ||
      !std::isfinite(params.q)) {
    throw InvalidParams("family params must satisfy p >= 0, q >= 0");
  }
}

}  // namespace

MeasurementScenario build_paper_scenario(const FamilyParams& params) {
  check_params(params);
  const double p = params.p;
  const double q = params.q;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // V-space vectors, ordered (t, u0, u1, u2). The nested-parenthesis states
  // carry a 1/sqrt(2) per level: |(u0+u1)+t> = (|u0+u1>/sqrt2 + |t>)/sqrt2.
  const std::array<double, 4> f0{inv_sqrt2, 0.5, 0.5, 0.0};
  const std::array<double, 4> f1{0.0, 0.0, 0.0, 1.0};
  const std::array<double, 4> ket_t{1.0, 0.0, 0.0, 0.0};

  // Gender "F" eigenspace: span{f0, f1} (x) W.
  const Projector gender_first = projector_from_span(
      {lift(f0, 0), lift(f0, 1), lift(f1, 0), lift(f1, 1)});

  // Treatment "T" eigenspace: span{t} (x) W.
  const Projector treatment_first = projector_from_span({lift(ket_t, 0), lift(ket_t, 1)});

  // Result "A" eigenspace: V (x) span{a}.
  std::vector<StateVector> alive;
  for (int v = 0; v < 4; ++v) alive.push_back(StateVector::basis(kDim, vw(v, 0)));
  const Projector result_first = projector_from_span(alive);

  // State: phi = phi_a (x) a + phi_d (x) d, with
  //   phi_a = sqrt(p) |u0+u1>          (squared norm p)
  //   phi_d = |(u0-u1)+u2> + sqrt(q)|t>  (squared norm 1 + q)
  const std::array<double, 4> phi_a{0.0, std::sqrt(p) * inv_sqrt2, std::sqrt(p) * inv_sqrt2, 0.0};
  const std::array<double, 4> phi_d{std::sqrt(q), 0.5, -0.5, inv_sqrt2};
  StateVector phi = lift(phi_a, 0) + lift(phi_d, 1);

  MeasurementScenario scenario{
      std::move(phi),
      make_measurement("F", "M", gender_first),
      make_measurement("T", "U", treatment_first),
      make_measurement("A", "D", result_first),
  };
  return scenario;
}

RateTable closed_form_rates(const FamilyParams& params) {
  check_params(params);
  const double p = params.p;
  const double q = params.q;
  if (p + q <= 0.0) {
    throw DegenerateParams("closed_form_rates: p = q = 0 leaves Pr(A|TF) undefined");
  }

  const double total = 1.0 + p + q;
  const auto defined = [total](double event_mass) {
    return event_mass / total >= kConditioningThreshold;
  };

  RateTable t;
  // Pr(T) in the two-measurement experiment is q/(1+p+q): the combined
  // treatment rate goes undefined at q = 0, exactly as the engine reports it.
  if (defined(q)) t.r_t = 0.0;
  t.r_c = p / (1.0 + p);
  if (defined((p + q) / 4.0)) {
    t.rf_t = p / (p + q);
    t.rm_t = p / (p + q);
  }
  t.rf_c = p / (2.0 + p + q);  // complement of Pr(D|UF) = (2+q)/(2+p+q)
  t.rm_c = p / (2.0 + p + q);
  if (defined((p + q) / 2.0)) {
    t.frac_f_given_t = 0.5;
    t.frac_m_given_t = 0.5;
  }
  t.frac_f_given_u = 0.5;
  t.frac_m_given_u = 0.5;
  return t;
}

double family_S(const FamilyParams& params) {
  check_params(params);
  const double p = params.p;
  const double q = params.q;
  if (p + q <= 0.0) {
    throw DegenerateParams("family_S: p = q = 0 leaves the subgroup rates undefined");
  }
  return 2.0 * p / (p + q) - 2.0 * p / (2.0 + p + q) + p / (1.0 + p);
}

CubeLengths cube_annotations(const MeasurementScenario& scenario) {
  const OutcomeNorms n = outcome_norms(scenario);
  CubeLengths cube;
  cube.vertex = n.triple;
  cube.edge = n.pair;
  cube.total_norm_sq = n.total;
  return cube;
}

}  // namespace qsp::construction
