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

#ifndef DKIBO_TOOLS_COMMANDS_HPP
#define DKIBO_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dkibo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kObjectiveError = 3,
  kStateError = 4,
  kIoError = 5,
};

/// Entry point of the dkibo tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dkibo::cli

#endif  // DKIBO_TOOLS_COMMANDS_HPP
