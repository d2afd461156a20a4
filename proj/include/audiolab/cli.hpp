// Copyright 2026 The audiolab Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace audiolab {

// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,    // bad flags, arguments or effect-chain syntax
  kExitIo = 3,       // unreadable/unwritable files, malformed containers
  kExitNumeric = 4,  // numeric or domain errors
};

// Runs one CLI invocation. `args` excludes the program name. Never throws.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace audiolab
