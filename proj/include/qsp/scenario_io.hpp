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

#ifndef QSP_SCENARIO_IO_HPP_
#define QSP_SCENARIO_IO_HPP_

#include <string>

#include "qsp/engine.hpp"

namespace qsp::io {

// Scenario files describe dimensions up to this cap; everything here is
// desk-scale dense linear algebra.
inline constexpr int kMaxDim = 16;

// Malformed syntax or structure; the message names the offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text format (JSON):
//   {
//     "dim": 8,
//     "state": [[re, im], ...],                 // dim entries
//     "measurements": {
//       "gender":    {"outcomes": ["F", "M"],
//                     "first_span": [[[re, im], ...], ...]},
//       "treatment": {"outcomes": ["T", "U"], "first_span": [...]},
//       "result":    {"outcomes": ["A", "D"], "first_span": [...]}
//     }
//   }
// first_span lists vectors spanning the first outcome's eigenspace; the
// second projector is always identity minus the first. Throws ParseError on
// malformed input and linalg::ValidationError (naming the measurement) when a
// span does not produce a valid projector.
engine::MeasurementScenario parse_scenario(const std::string& text);

// parse_scenario applied to the file's contents; ParseError if unreadable.
engine::MeasurementScenario load_scenario_file(const std::string& path);

// Inverse of parse_scenario up to an orthonormal re-basis of each eigenspace:
// spans are emitted as orthonormal bases extracted from the projectors, so
// re-parsing reproduces the same projectors to rounding.
std::string serialize_scenario(const engine::MeasurementScenario& scenario);

}  // namespace qsp::io

#endif  // QSP_SCENARIO_IO_HPP_
