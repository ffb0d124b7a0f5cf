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

#include "peerrank/ranking.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "peerrank/errors.h"

namespace peerrank {

RankingResult MakeRanking(std::string method, std::vector<std::string> paper_ids,
                          std::vector<double> utility, nlohmann::json config) {
  if (paper_ids.size() != utility.size()) {
    throw ComputationError("ranking: ids and utilities differ in length");
  }
  RankingResult r;
  r.method = std::move(method);
  r.paper_ids = std::move(paper_ids);
  r.utility = std::move(utility);
  r.config = std::move(config);
  std::vector<size_t> order(r.paper_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (r.utility[a] != r.utility[b]) return r.utility[a] > r.utility[b];
    return r.paper_ids[a] < r.paper_ids[b];
  });
  r.rank.assign(order.size(), 0);
  for (size_t pos = 0; pos < order.size(); ++pos) {
    r.rank[order[pos]] = static_cast<int>(pos + 1);
  }
  return r;
}

std::vector<std::string> RankingResult::Order() const {
  std::vector<std::string> out(paper_ids.size());
  for (size_t i = 0; i < paper_ids.size(); ++i) out[rank[i] - 1] = paper_ids[i];
  return out;
}

std::map<std::string, double> RankingResult::UtilityMap() const {
  std::map<std::string, double> out;
  for (size_t i = 0; i < paper_ids.size(); ++i) out[paper_ids[i]] = utility[i];
  return out;
}

std::optional<double> RankingResult::UtilityOf(std::string_view paper_id) const {
  for (size_t i = 0; i < paper_ids.size(); ++i) {
    if (paper_ids[i] == paper_id) return utility[i];
  }
  return std::nullopt;
}

void WriteRankingCsv(const RankingResult& r, std::ostream& out) {
  const bool with_status = !r.row_status.empty();
  out << "paper_id,utility,rank" << (with_status ? ",status" : "") << '\n';
  std::vector<size_t> order(r.paper_ids.size());
  for (size_t i = 0; i < r.paper_ids.size(); ++i) order[r.rank[i] - 1] = i;
  char buf[32];
  for (size_t i : order) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.utility[i]);
    out << r.paper_ids[i] << ',' << buf << ',' << r.rank[i];
    if (with_status) out << ',' << r.row_status[i];
    out << '\n';
  }
}

}  // namespace peerrank
