// Copyright 2026 The eosim Authors
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

#include "eosim/config.hpp"

namespace eosim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitIntegrationFailure = 3;

// `eosim run|sweep|ideal ...`; argv[0] is the program name.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

}  // namespace eosim::cli
