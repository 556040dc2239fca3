// Copyright 2026 The conbound Authors. All Rights Reserved.
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
#ifndef CONBOUND_CLI_HPP_
#define CONBOUND_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace conbound::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kDomain = 3,
  kIo = 4,
};

/// Environment variable consulted for the default --seed.
inline constexpr const char* kSeedEnv = "CONBOUND_SEED";

/// Decimal or 0x-prefixed hexadecimal; nullopt on anything else.
std::optional<std::uint64_t> parse_seed(std::string_view text);

/// Runs the command line. Results go to `out` (or the --out file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conbound::cli

#endif  // CONBOUND_CLI_HPP_
