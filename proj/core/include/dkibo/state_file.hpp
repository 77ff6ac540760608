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

#ifndef DKIBO_STATE_FILE_HPP
#define DKIBO_STATE_FILE_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dkibo/optimizer.hpp"

namespace dkibo {

enum class StateErrorCode {
  io,
  parse,
  schema_version,
  dimension_mismatch,
  out_of_bounds,
  non_finite,
  invalid_config,
};

std::string_view to_string(StateErrorCode code);

class StateError : public std::runtime_error {
 public:
  StateError(StateErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  StateErrorCode code() const { return code_; }

 private:
  StateErrorCode code_;
};

inline constexpr int kStateSchemaVersion = 1;

/// Whether the user's y values are to be maximized or minimized. The
/// campaign itself always maximizes.
enum class Goal { maximize, minimize };

/// An ask/tell session: the campaign plus how to map the user's y.
struct Session {
  Campaign campaign;
  Goal goal = Goal::maximize;
  std::optional<std::string> benchmark;  // informational

  double to_internal(double y) const { return goal == Goal::minimize ? -y : y; }
  double to_user(double y) const { return goal == Goal::minimize ? -y : y; }
};

std::string serialize_session(const Session& session);
/// Throws StateError (parse, schema_version or invalid_config).
Session parse_session(std::string_view text);

Session load_session(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over path.
void save_session(const std::filesystem::path& path, const Session& session);

/// Next point to evaluate; does not modify the session.
Vector suggest(const Session& session);

/// Records y (user convention) at x, or at the pending suggestion when x is
/// empty. An x within 1e-9 of the box width of the suggestion in every
/// coordinate counts as the suggestion itself, so values echoed back from a
/// printed suggestion replay the same trajectory as the in-process loop.
/// Throws StateError (dimension_mismatch, out_of_bounds, non_finite) and
/// leaves the session unchanged on error.
void observe(Session& session, const std::optional<Vector>& x, double y);

}  // namespace dkibo

#endif  // DKIBO_STATE_FILE_HPP
