// Copyright 2026 The epsent Authors
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

// `epsent compute|sweep|verify|gen`, callable in-process so tests can drive
// it without spawning the binary.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epsent::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  /// Bad flags, unreadable or invalid input.
  kInvalid = 2,
  /// compute --strict on a solve that did not converge.
  kNotConverged = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `verify --only`, in execution order.
const std::vector<std::string>& check_names();

}  // namespace epsent::cli
