// Copyright 2026 The PeerRank Authors.
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

#ifndef PEERRANK_CLI_H_
#define PEERRANK_CLI_H_

#include <string>
#include <vector>

namespace peerrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitInternal = 1;

// Entry point of the `peerrank` tool. Returns the process exit code:
// 0 on success, 2 for invalid input or configuration, 3 when a computation
// fails, 1 for anything unexpected.
int RunCli(int argc, const char* const* argv);
int RunCli(const std::vector<std::string>& args);

// Hex SHA-256 of a file's bytes. Throws ValidationError if unreadable.
std::string Sha256File(const std::string& path);

}  // namespace peerrank

#endif  // PEERRANK_CLI_H_
