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

#ifndef PEERRANK_PREFERENCES_H_
#define PEERRANK_PREFERENCES_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "peerrank/dataset.h"

namespace peerrank {

enum class Relation { kStrict, kTie };

// "better is preferred over worse" by one referee. For ties the two ids are
// stored in lexicographic order (better < worse).
struct PreferencePair {
  std::string better;
  std::string worse;
  Relation relation = Relation::kStrict;
  std::string referee_id;

  bool operator==(const PreferencePair&) const = default;
  auto operator<=>(const PreferencePair&) const = default;
};

// Papers reviewed by one referee, grouped by overall score. Groups are in
// ascending score order, so the last group holds the most preferred papers.
// Ids within a group are sorted.
struct PartialRanking {
  std::string referee_id;
  std::vector<std::vector<std::string>> groups;
};

PartialRanking ExtractPartialRanking(const Dataset& d,
                                     std::string_view referee_id);

// All C(k, 2) comparisons of every referee with k reviews, sorted by
// (referee_id, better, worse).
std::vector<PreferencePair> ExtractPreferencePairs(const Dataset& d);

enum class PairFilter { kKeepAll, kDropTies, kDropCrossTrack };

// Accepts "keep-all", "drop-ties", "drop-cross-track". Throws ConfigError.
PairFilter ParsePairFilter(std::string_view name);

// Track lookups go through `d`; it is only consulted for kDropCrossTrack.
std::vector<PreferencePair> FilterPairs(const std::vector<PreferencePair>& pairs,
                                        PairFilter filter, const Dataset& d);

size_t CountStrict(const std::vector<PreferencePair>& pairs);

// CSV: referee_id,better,worse,relation
void WritePairsCsv(const std::vector<PreferencePair>& pairs, std::ostream& out);

}  // namespace peerrank

#endif  // PEERRANK_PREFERENCES_H_
