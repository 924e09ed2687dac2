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

#include "qsp/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qsp::io {

using linalg::Complex;
using linalg::Projector;
using linalg::StateVector;
using nlohmann::ordered_json;

namespace {

double parse_real(const ordered_json& node, const std::string& where) {
  if (!node.is_number()) {
    throw ParseError(where + ": expected a number");
  }
  return node.get<double>();
}

Complex parse_complex(const ordered_json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 2) {
    throw ParseError(where + ": expected an [re, im] pair");
  }
  return Complex(parse_real(node[0], where + "[0]"), parse_real(node[1], where + "[1]"));
}

StateVector parse_vector(const ordered_json& node, int dim, const std::string& where) {
  if (!node.is_array()) {
    throw ParseError(where + ": expected a list of [re, im] pairs");
  }
  if (static_cast<int>(node.size()) != dim) {
    throw ParseError(where + ": has " + std::to_string(node.size()) +
                     " entries, expected dim = " + std::to_string(dim));
  }
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = parse_complex(node[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

const ordered_json& require_field(const ordered_json& node, const char* key,
                                  const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return node.at(key);
}

engine::TwoOutcomeMeasurement parse_measurement(const ordered_json& node, int dim,
                                                const std::string& name) {
  const ordered_json& outcomes = require_field(node, "outcomes", name);
  if (!outcomes.is_array() || outcomes.size() != 2 || !outcomes[0].is_string() ||
      !outcomes[1].is_string()) {
    throw ParseError(name + ".outcomes: expected two outcome labels");
  }
  const ordered_json& span = require_field(node, "first_span", name);
  if (!span.is_array() || span.empty()) {
    throw ParseError(name + ".first_span: expected a non-empty list of vectors");
  }
  std::vector<StateVector> vectors;
  vectors.reserve(span.size());
  for (size_t i = 0; i < span.size(); ++i) {
    vectors.push_back(
        parse_vector(span[i], dim, name + ".first_span[" + std::to_string(i) + "]"));
  }

  Projector first;
  try {
    first = linalg::projector_from_span(vectors);
  } catch (const linalg::RankDeficient& err) {
    throw linalg::ValidationError(name + ": first_span is not a valid eigenspace basis (" +
                                  err.what() + ")");
  }
  return engine::make_measurement(outcomes[0].get<std::string>(),
                                  outcomes[1].get<std::string>(), std::move(first));
}

ordered_json complex_json(const Complex& c) {
  return ordered_json::array({c.real(), c.imag()});
}

ordered_json vector_json(const StateVector& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < v.dim(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

ordered_json measurement_json(const engine::TwoOutcomeMeasurement& m) {
  ordered_json out;
  out["outcomes"] = ordered_json::array({m.labels[0], m.labels[1]});
  ordered_json span = ordered_json::array();
  for (const StateVector& b : linalg::span_basis(m.first)) span.push_back(vector_json(b));
  out["first_span"] = std::move(span);
  return out;
}

}  // namespace

engine::MeasurementScenario parse_scenario(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& err) {
    throw ParseError(std::string("scenario file: ") + err.what());
  }
  if (!root.is_object()) throw ParseError("scenario file: top level must be an object");

  const ordered_json& dim_node = require_field(root, "dim", "scenario");
  if (!dim_node.is_number_integer()) throw ParseError("dim: expected an integer");
  const int dim = dim_node.get<int>();
  if (dim < 1 || dim > kMaxDim) {
    throw ParseError("dim: must lie in [1, " + std::to_string(kMaxDim) + "], got " +
                     std::to_string(dim));
  }

  StateVector state = parse_vector(require_field(root, "state", "scenario"), dim, "state");

  const ordered_json& measurements = require_field(root, "measurements", "scenario");
  engine::MeasurementScenario scenario{
      std::move(state),
      parse_measurement(require_field(measurements, "gender", "measurements"), dim, "gender"),
      parse_measurement(require_field(measurements, "treatment", "measurements"), dim,
                        "treatment"),
      parse_measurement(require_field(measurements, "result", "measurements"), dim, "result")};
  engine::validate_scenario(scenario);
  return scenario;
}

engine::MeasurementScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const engine::MeasurementScenario& scenario) {
  ordered_json root;
  root["dim"] = scenario.state.dim();
  root["state"] = vector_json(scenario.state);
  ordered_json measurements;
  measurements["gender"] = measurement_json(scenario.gender);
  measurements["treatment"] = measurement_json(scenario.treatment);
  measurements["result"] = measurement_json(scenario.result);
  root["measurements"] = std::move(measurements);
  return root.dump(2) + "\n";
}

}  // namespace qsp::io
