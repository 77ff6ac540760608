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

// JSON helpers shared by the experiment config and the state file.

#ifndef DKIBO_SRC_JSON_IO_HPP
#define DKIBO_SRC_JSON_IO_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dkibo/acquisition.hpp"
#include "dkibo/models.hpp"
#include "dkibo/space.hpp"

namespace dkibo::detail {

using Json = nlohmann::json;

/// Thrown with the dotted path of the offending field.
class FieldError : public std::runtime_error {
 public:
  FieldError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Typed access to one JSON object with field-path diagnostics.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path);

  bool has(const char* key) const { return j_.contains(key); }
  const Json& at(const char* key) const;
  std::string child(const char* key) const;

  double number(const char* key, std::optional<double> fallback = std::nullopt) const;
  int integer(const char* key, std::optional<int> fallback = std::nullopt) const;
  std::uint64_t unsigned_integer(const char* key,
                                 std::optional<std::uint64_t> fallback = std::nullopt) const;
  bool boolean(const char* key, std::optional<bool> fallback = std::nullopt) const;
  std::string string(const char* key, std::optional<std::string> fallback = std::nullopt) const;
  Vector vector(const char* key) const;

  /// Rejects keys outside the allowed set.
  void only(std::initializer_list<const char*> keys) const;

 private:
  const Json& require(const char* key) const;

  const Json& j_;
  std::string path_;
};

Json to_json(const AcquisitionConfig& c);
Json to_json(const RegressorSpec& r);
Json to_json(const MaximizerOptions& m);
Json to_json(const Vector& v);

/// Missing fields keep the values already in out.
void read_acquisition(const ObjectReader& r, AcquisitionConfig& out);
/// Accepts a kind name or an object with "kind" and optional overrides.
RegressorSpec read_regressor(const Json& j, const std::string& path);
void read_maximizer(const Json& j, const std::string& path, MaximizerOptions& out);

}  // namespace dkibo::detail

#endif  // DKIBO_SRC_JSON_IO_HPP
