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

#ifndef QSP_OPTIMIZER_HPP_
#define QSP_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "qsp/construction.hpp"
#include "qsp/engine.hpp"

namespace qsp::optimizer {

using construction::FamilyParams;

struct InvalidEpsilon : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Engine S must agree with the closed form this tightly on every sweep row.
inline constexpr double kSweepCrossTol = 1e-10;

// Scenarios whose conditioning probabilities dip below this score -inf
// during search instead of producing near-0/0 rates.
inline constexpr double kFeasibilityFloor = 1e-9;

// The two one-parameter slices of the family: q1 fixes p = 1 and sets q = eps;
// q2 sets (p, q) = (eps, eps^2).
enum class FamilyCurve { kQ1, kQ2 };

// Throws InvalidEpsilon unless eps lies in (0, 1].
FamilyParams curve_params(FamilyCurve curve, double eps);

struct SweepRow {
  double eps = 0.0;
  double s = 0.0;
};

// Evaluates S through the measurement engine for each epsilon and
// cross-checks against family_S to kSweepCrossTol (logic_error on mismatch).
std::vector<SweepRow> sweep_family(const std::vector<double>& eps_values,
                                   FamilyCurve curve);

// Search-space encoding: each measurement's first projector is the span of
// the first `rank` basis vectors rotated by a product of two-plane rotations
// (one (theta, phase) pair for every mixed coordinate pair), and the state is
// given by hyperspherical magnitude angles plus per-amplitude phases.
// Decoding is total for finite parameters; angles act through cos/sin only.
struct ScenarioParameterization {
  int dim = 2;
  std::array<int, 3> ranks{1, 1, 1};  // gender, treatment, result
  std::vector<double> angles;         // three blocks of 2*rank*(dim-rank)
  std::vector<double> state_params;   // (dim-1) magnitudes + (dim-1) phases
};

// Expected sizes of the parameter blocks above.
int angle_count(int dim, const std::array<int, 3>& ranks);
int state_param_count(int dim);

// Throws std::invalid_argument on out-of-range dim/ranks or wrong vector
// sizes. The decoded scenario always passes validate_scenario.
engine::MeasurementScenario decode(const ScenarioParameterization& params);

struct TracePoint {
  long long iteration = 0;
  double best_s = 0.0;
};

struct OptimizationReport {
  double best_s = 0.0;
  std::variant<FamilyParams, ScenarioParameterization> best_params;
  long long evaluations = 0;
  std::uint64_t seed = 0;
  std::vector<TracePoint> trace;
};

// Grid search over the family parameters with local refinement. With a curve
// set, the grid is geometric in eps over [floor, 1]; otherwise it is a
// grid x grid linear lattice over [floor, 1]^2. Endpoints are exact so
// boundary maximizers are hit exactly.
struct FamilyOptimizeConfig {
  std::optional<FamilyCurve> curve;
  double floor = 1e-6;
  int grid = 100;
  int refine_rounds = 3;
};

OptimizationReport optimize_family(const FamilyOptimizeConfig& config);

// Nelder-Mead direct search over decoded scenarios from seeded random
// restarts. Restarts are independent (parallelized over threads); the merge
// takes the best value with ties to the lowest restart index, so the report
// is bit-reproducible for a fixed (seed, config) regardless of scheduling.
struct GeneralOptimizeConfig {
  int dim = 8;
  std::array<int, 3> ranks{4, 1, 4};
  std::uint64_t seed = 0;
  int restarts = 64;
  int iters = 2000;  // simplex iterations per stage
  int threads = 0;   // 0 = hardware concurrency
};

// Maximizes |S|. Every feasible evaluation is guarded: |S| >= 2 or
// S' >= 5 throws logic_error (they are impossible for valid scenarios).
OptimizationReport optimize_general(const GeneralOptimizeConfig& config);

}  // namespace qsp::optimizer

#endif  // QSP_OPTIMIZER_HPP_
