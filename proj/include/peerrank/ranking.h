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

#ifndef PEERRANK_RANKING_H_
#define PEERRANK_RANKING_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace peerrank {

// Per-paper utilities and the total order they induce. rank[i] is 1 for the
// best paper; equal utilities are ordered by paper_id ascending.
struct RankingResult {
  std::string method;
  std::vector<std::string> paper_ids;
  std::vector<double> utility;
  std::vector<int> rank;
  nlohmann::json config;
  // Optional per-row status column (consensus rankers).
  std::vector<std::string> row_status;

  // Paper ids from rank 1 downwards.
  std::vector<std::string> Order() const;
  std::map<std::string, double> UtilityMap() const;
  std::optional<double> UtilityOf(std::string_view paper_id) const;
};

RankingResult MakeRanking(std::string method, std::vector<std::string> paper_ids,
                          std::vector<double> utility,
                          nlohmann::json config = nlohmann::json::object());

// paper_id,utility,rank[,status]; rows in rank order. Utilities are printed
// with 17 significant digits so reruns are byte-identical.
void WriteRankingCsv(const RankingResult& r, std::ostream& out);

}  // namespace peerrank

#endif  // PEERRANK_RANKING_H_
