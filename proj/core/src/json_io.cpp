// Copyright 2026 The dkibo Authors. All Rights Reserved.
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
// =============================================================================

#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dkibo::detail {

ObjectReader::ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw FieldError(path_.empty() ? "<root>" : path_, "expected an object");
}

std::string ObjectReader::child(const char* key) const {
  return path_.empty() ? std::string(key) : path_ + "." + key;
}

const Json& ObjectReader::require(const char* key) const {
  if (!j_.contains(key)) throw FieldError(child(key), "required field is missing");
  return j_.at(key);
}

const Json& ObjectReader::at(const char* key) const { return require(key); }

double ObjectReader::number(const char* key, std::optional<double> fallback) const {
  if (!j_.contains(key) && fallback) return *fallback;
  const Json& v = require(key);
  if (!v.is_number()) throw FieldError(child(key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FieldError(child(key), "expected a finite number");
  return d;
}

int ObjectReader::integer(const char* key, std::optional<int> fallback) const {
  if (!j_.contains(key) && fallback) return *fallback;
  const Json& v = require(key);
  if (!v.is_number_integer()) throw FieldError(child(key), "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max())
    throw FieldError(child(key), "integer out of range");
  return static_cast<int>(i);
}

std::uint64_t ObjectReader::unsigned_integer(const char* key,
                                             std::optional<std::uint64_t> fallback) const {
  if (!j_.contains(key) && fallback) return *fallback;
  const Json& v = require(key);
  if (!v.is_number_unsigned()) throw FieldError(child(key), "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool ObjectReader::boolean(const char* key, std::optional<bool> fallback) const {
  if (!j_.contains(key) && fallback) return *fallback;
  const Json& v = require(key);
  if (!v.is_boolean()) throw FieldError(child(key), "expected true or false");
  return v.get<bool>();
}

std::string ObjectReader::string(const char* key, std::optional<std::string> fallback) const {
  if (!j_.contains(key) && fallback) return *fallback;
  const Json& v = require(key);
  if (!v.is_string()) throw FieldError(child(key), "expected a string");
  return v.get<std::string>();
}

Vector ObjectReader::vector(const char* key) const {
  const Json& v = require(key);
  if (!v.is_array()) throw FieldError(child(key), "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number())
      throw FieldError(child(key) + "[" + std::to_string(k) + "]", "expected a number");
    out[static_cast<Eigen::Index>(k)] = v[k].get<double>();
  }
  return out;
}

void ObjectReader::only(std::initializer_list<const char*> keys) const {
  for (const auto& [key, value] : j_.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return key == k; });
    if (!known) throw FieldError(child(key.c_str()), "unknown field");
  }
}

Json to_json(const AcquisitionConfig& c) {
  return Json{{"kind", std::string(to_string(c.kind))},
              {"kappa", c.kappa},
              {"xi_offset", c.xi_offset},
              {"epsilon", c.epsilon},
              {"schedule", c.schedule_enabled}};
}

Json to_json(const RegressorSpec& r) {
  return Json{{"kind", std::string(to_string(r.kind))},
              {"n_estimators", r.n_estimators},
              {"max_depth", r.max_depth},
              {"learning_rate", r.learning_rate},
              {"bootstrap", r.bootstrap},
              {"min_samples_leaf", r.min_samples_leaf},
              {"max_features", r.max_features}};
}

Json to_json(const MaximizerOptions& m) {
  return Json{{"candidates", m.candidates},
              {"refine_starts", m.refine_starts},
              {"refine_evaluations", m.refine_evaluations},
              {"initial_step", m.initial_step}};
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) a.push_back(v[j]);
  return a;
}

void read_acquisition(const ObjectReader& r, AcquisitionConfig& out) {
  if (r.has("acquisition")) {
    const std::string name = r.string("acquisition");
    const auto kind = parse_acquisition_kind(name);
    if (!kind) throw FieldError(r.child("acquisition"), "unknown acquisition '" + name + "'");
    out.kind = *kind;
  }
  out.kappa = r.number("kappa", out.kappa);
  out.xi_offset = r.number("xi_offset", out.xi_offset);
  out.epsilon = r.number("epsilon", out.epsilon);
  out.schedule_enabled = r.boolean("schedule", out.schedule_enabled);
}

RegressorSpec read_regressor(const Json& j, const std::string& path) {
  auto parse_kind = [&](const std::string& name, const std::string& where) {
    const auto kind = parse_regressor_kind(name);
    if (!kind) throw FieldError(where, "unknown regressor '" + name + "'");
    return *kind;
  };
  if (j.is_string()) return RegressorSpec::defaults(parse_kind(j.get<std::string>(), path));
  ObjectReader r(j, path);
  r.only({"kind", "n_estimators", "max_depth", "learning_rate", "bootstrap", "min_samples_leaf",
          "max_features"});
  RegressorSpec spec = RegressorSpec::defaults(parse_kind(r.string("kind"), r.child("kind")));
  spec.n_estimators = r.integer("n_estimators", spec.n_estimators);
  spec.max_depth = r.integer("max_depth", spec.max_depth);
  spec.learning_rate = r.number("learning_rate", spec.learning_rate);
  spec.bootstrap = r.boolean("bootstrap", spec.bootstrap);
  spec.min_samples_leaf = r.integer("min_samples_leaf", spec.min_samples_leaf);
  spec.max_features = r.integer("max_features", spec.max_features);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw FieldError(path, e.what());
  }
  return spec;
}

void read_maximizer(const Json& j, const std::string& path, MaximizerOptions& out) {
  ObjectReader r(j, path);
  r.only({"candidates", "refine_starts", "refine_evaluations", "initial_step"});
  out.candidates = r.integer("candidates", out.candidates);
  out.refine_starts = r.integer("refine_starts", out.refine_starts);
  out.refine_evaluations = r.integer("refine_evaluations", out.refine_evaluations);
  out.initial_step = r.number("initial_step", out.initial_step);
  if (out.candidates < 1) throw FieldError(r.child("candidates"), "must be >= 1");
  if (out.refine_starts < 0) throw FieldError(r.child("refine_starts"), "must be >= 0");
  if (out.refine_evaluations < 0) throw FieldError(r.child("refine_evaluations"), "must be >= 0");
  if (!(out.initial_step > 0.0)) throw FieldError(r.child("initial_step"), "must be > 0");
}

}  // namespace dkibo::detail
