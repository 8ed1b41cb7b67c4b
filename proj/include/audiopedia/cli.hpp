// Copyright 2026 The Audiopedia Toolkit Authors.
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

#ifndef AUDIOPEDIA_CLI_HPP_
#define AUDIOPEDIA_CLI_HPP_

#include <ostream>

namespace audiopedia {

// Exit codes: 0 success, 1 runtime failure (adapter/IO), 2 usage/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `audiopedia` tool:
//   ingest | synth | tts | link | retrieve | eval | ablate | report
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_CLI_HPP_
