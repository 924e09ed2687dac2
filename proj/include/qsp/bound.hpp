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

#ifndef QSP_BOUND_HPP_
#define QSP_BOUND_HPP_

#include <limits>

#include "qsp/engine.hpp"

namespace qsp::bound {

// Triangle slacks are identities up to rounding; the decomposition residual
// carries a few more rounding steps.
inline constexpr double kTriangleTol = 1e-12;
inline constexpr double kMasterTol = 1e-10;

// Lengths of the projected states for a unit-normalized input state.
// Vertices carry all three outcomes (result, treatment, gender), edges the
// two-measurement experiment (result, treatment). Squared vertices sum to 1,
// as do squared edges.
struct EllTable {
  double atf = 0, dtf = 0, atm = 0, dtm = 0;
  double auf = 0, duf = 0, aum = 0, dum = 0;
  double at = 0, dt = 0, au = 0, du = 0;
};

EllTable ell_table_from_norms(const engine::OutcomeNorms& norms);
EllTable ell_table(const engine::MeasurementScenario& scenario);

// Nonnegative extended real: infinite with defined = false when the
// denominator vanishes.
struct ExtendedRatio {
  double value = std::numeric_limits<double>::infinity();
  bool defined = false;
};

struct RatioSet {
  ExtendedRatio alpha;    // at / dt
  ExtendedRatio alpha_f;  // dtf / atf
  ExtendedRatio alpha_m;  // dtm / atm
  ExtendedRatio beta;     // du / au
  ExtendedRatio beta_f;   // auf / duf
  ExtendedRatio beta_m;   // aum / dum
};

struct RatioReport {
  RatioSet ratios;
  // Sum of the six terms (1 + x^2)^-1 with the convention that an undefined
  // ratio contributes 0. Equals S + 3 whenever all six rates are defined.
  double s_prime = 0.0;
};

RatioReport ratios_and_s_prime(const EllTable& ells);

// Which arm's weighted comparison holds in the case split. The split is only
// taken when both dt and au are positive; otherwise the boundary convention
// applies and s_prime <= 5 directly.
enum class SplitBranch { kBoundary, kTreatedSide, kControlSide };

struct IdentityReport {
  // dtf + dtm - dt and auf + aum - au; nonnegative up to rounding.
  double triangle_slack_treated = 0.0;
  double triangle_slack_control = 0.0;
  // (1+alpha^2) dt^2 + (1+beta^2) au^2 minus the four weighted vertex terms.
  // The products are expanded to vertex sums, so the residual is defined even
  // when a ratio is infinite.
  double master_residual = 0.0;
  bool ratio_form_used = false;
  SplitBranch branch = SplitBranch::kBoundary;
  // Slack of the strict control-side inequality, checked when the treated
  // side comparison fails; positive when it holds.
  double control_side_slack = 0.0;
  bool control_side_holds = false;
  bool triangles_pass = false;  // both slacks >= -kTriangleTol
  bool master_pass = false;     // |master_residual| <= kMasterTol
};

IdentityReport verify_identities(const engine::MeasurementScenario& scenario);

struct BoundVerdict {
  double s = 0.0;
  double s_prime = 0.0;
  double margin = 0.0;  // 2 - |s|
  bool within = false;  // margin > 0 and s_prime < 5
};

// Throws engine::UndefinedRate when any of the six rates is undefined.
BoundVerdict check_bound(const engine::MeasurementScenario& scenario);

}  // namespace qsp::bound

#endif  // QSP_BOUND_HPP_
