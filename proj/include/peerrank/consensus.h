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

#ifndef PEERRANK_CONSENSUS_H_
#define PEERRANK_CONSENSUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "peerrank/preferences.h"
#include "peerrank/ranking.h"

namespace peerrank {

// count(a, b) = number of strict pairs asserting a ≻ b. Papers are the ids
// occurring in at least one pair, sorted.
class ViolationMatrix {
 public:
  // Throws ValidationError if `pairs` contains a tie.
  explicit ViolationMatrix(const std::vector<PreferencePair>& pairs);

  const std::vector<std::string>& papers() const { return papers_; }
  size_t size() const { return papers_.size(); }
  int64_t count(size_t a, size_t b) const { return counts_[a * papers_.size() + b]; }
  int64_t total() const { return total_; }
  // Wins minus losses of paper a over all pairs.
  int64_t NetWins(size_t a) const;

 private:
  std::vector<std::string> papers_;
  std::vector<int64_t> counts_;
  int64_t total_ = 0;
};

// Sum of count(a, b) over pairs where a is ranked below b. `order` lists
// indices into vm.papers() from best to worst and must be a permutation.
int64_t CountViolations(const std::vector<size_t>& order,
                        const ViolationMatrix& vm);
// Same, for paper ids. Throws ValidationError if not a permutation.
int64_t CountViolations(const std::vector<std::string>& order,
                        const ViolationMatrix& vm);

struct ConsensusConfig {
  double time_budget_seconds = 300.0;
  int restarts = 10;
  uint64_t seed = 0;

  void Validate() const;
};

enum class SearchStatus { kOptimal, kLocalOptimum, kBudgetExhausted };

std::string_view SearchStatusName(SearchStatus s);

struct SearchTrace {
  int64_t nodes_expanded = 0;
  int64_t incumbent_updates = 0;
  int64_t root_bound = 0;
  int64_t moves = 0;  // improving insertion moves (local search)
};

// Order of the compared papers plus the uncompared ones appended after them
// by paper_id. Utilities are n - position, so larger is better.
struct ConsensusResult {
  RankingResult ranking;
  SearchStatus status = SearchStatus::kOptimal;
  int64_t violations = 0;
  std::vector<std::string> uncompared;
  SearchTrace trace;
  // Violation count after each improving move (local search only).
  std::vector<int64_t> descent;
};

// Depth-first branch-and-bound over ranking prefixes. A node's bound is the
// violations committed by its prefix plus, for every unordered pair of
// undecided papers, min(count(a, b), count(b, a)). Children are expanded by
// descending net wins among the remaining papers.
ConsensusResult RankDcon(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& all_papers,
                         const ConsensusConfig& cfg);

// Best-improvement single-item insertion search from the net-wins order,
// followed by cfg.restarts searches from seeded random permutations.
ConsensusResult RankNcon(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& all_papers,
                         const ConsensusConfig& cfg);

}  // namespace peerrank

#endif  // PEERRANK_CONSENSUS_H_
