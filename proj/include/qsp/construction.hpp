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

#include "qsp/engine.hpp"

namespace qsp::construction {

using engine::MeasurementScenario;
using engine::RateTable;

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parameters of the explicit scenario family. The named instances are
/// Q1 = (1, eps) and Q2 = (eps, eps^2).
struct FamilyParams {
  double p = 0.0;
  double q = 0.0;
};

/// Squared lengths of the state after every projection sequence, arranged as
/// the annotated cube: one value per outcome vertex (three measurements) and
/// one per edge (two measurements). Both sets decompose the total squared
/// norm.
struct CubeLengths {
  std::array<double, 8> vertex{};  // index (g,e,r) -> g*4 + e*2 + r
  std::array<double, 4> edge{};    // index (e,r) -> e*2 + r
  double total_norm_sq = 0.0;

  static constexpr int vertex_index(int g, int e, int r) { return g * 4 + e * 2 + r; }
  static constexpr int edge_index(int e, int r) { return e * 2 + r; }
  double vertex_at(int g, int e, int r) const { return vertex[static_cast<size_t>(vertex_index(g, e, r))]; }
  double edge_at(int e, int r) const { return edge[static_cast<size_t>(edge_index(e, r))]; }
};

/// Builds the dim-8 scenario family on V (x) W with V spanned by
/// {t, u0, u1, u2} and W by {a, d}; the basis ordering is (t,u0,u1,u2) (x)
/// (a,d) with the W index varying fastest. The state is left unnormalized;
/// its squared norm is 1 + p + q.
MeasurementScenario build_paper_scenario(const FamilyParams& params);

/// The family's conditional rates in closed form:
///   Pr(D|T) = 1,  Pr(A|U) = p/(1+p),
///   Pr(A|TF) = Pr(A|TM) = p/(p+q),
///   Pr(D|UF) = Pr(D|UM) = (2+q)/(2+p+q).
/// Implemented independently of the measurement engine so the two can be
/// cross-checked. Throws DegenerateParams when p = q = 0.
RateTable closed_form_rates(const FamilyParams& params);

/// Closed form S(p,q) = 2p/(p+q) - 2p/(2+p+q) + p/(1+p). This is the oracle
/// the engine-computed S is tested against.
double family_S(const FamilyParams& params);

/// Squared projection lengths for any scenario (not just the family).
CubeLengths cube_annotations(const MeasurementScenario& scenario);

}  // namespace qsp::construction
