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

#include "peerrank/preferences.h"

#include <algorithm>
#include <map>

#include "peerrank/errors.h"

namespace peerrank {

PartialRanking ExtractPartialRanking(const Dataset& d,
                                     std::string_view referee_id) {
  const auto& indices = d.ReviewsOfReferee(referee_id);
  std::map<double, std::vector<std::string>> by_score;
  for (size_t idx : indices) {
    const Review& r = d.reviews()[idx];
    by_score[r.overall_score].push_back(r.paper_id);
  }
  PartialRanking out;
  out.referee_id = std::string(referee_id);
  for (auto& [score, ids] : by_score) {
    std::sort(ids.begin(), ids.end());
    out.groups.push_back(std::move(ids));
  }
  return out;
}

std::vector<PreferencePair> ExtractPreferencePairs(const Dataset& d) {
  std::vector<PreferencePair> pairs;
  for (const std::string& referee : d.referees()) {
    const auto& indices = d.ReviewsOfReferee(referee);
    for (size_t i = 0; i < indices.size(); ++i) {
      const Review& a = d.reviews()[indices[i]];
      for (size_t j = i + 1; j < indices.size(); ++j) {
        const Review& b = d.reviews()[indices[j]];
        PreferencePair p;
        p.referee_id = referee;
        if (a.overall_score == b.overall_score) {
          p.relation = Relation::kTie;
          p.better = std::min(a.paper_id, b.paper_id);
          p.worse = std::max(a.paper_id, b.paper_id);
        } else if (a.overall_score > b.overall_score) {
          p.better = a.paper_id;
          p.worse = b.paper_id;
        } else {
          p.better = b.paper_id;
          p.worse = a.paper_id;
        }
        pairs.push_back(std::move(p));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PreferencePair& x, const PreferencePair& y) {
              return std::tie(x.referee_id, x.better, x.worse, x.relation) <
                     std::tie(y.referee_id, y.better, y.worse, y.relation);
            });
  return pairs;
}

PairFilter ParsePairFilter(std::string_view name) {
  if (name == "keep-all") return PairFilter::kKeepAll;
  if (name == "drop-ties") return PairFilter::kDropTies;
  if (name == "drop-cross-track") return PairFilter::kDropCrossTrack;
  throw ConfigError("unknown pair filter '" + std::string(name) + "'");
}

std::vector<PreferencePair> FilterPairs(const std::vector<PreferencePair>& pairs,
                                        PairFilter filter, const Dataset& d) {
  std::vector<PreferencePair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    switch (filter) {
      case PairFilter::kKeepAll:
        out.push_back(p);
        break;
      case PairFilter::kDropTies:
        if (p.relation == Relation::kStrict) out.push_back(p);
        break;
      case PairFilter::kDropCrossTrack:
        if (d.paper(p.better).track == d.paper(p.worse).track) {
          out.push_back(p);
        }
        break;
    }
  }
  return out;
}

size_t CountStrict(const std::vector<PreferencePair>& pairs) {
  return std::count_if(pairs.begin(), pairs.end(), [](const PreferencePair& p) {
    return p.relation == Relation::kStrict;
  });
}

void WritePairsCsv(const std::vector<PreferencePair>& pairs, std::ostream& out) {
  out << "referee_id,better,worse,relation\n";
  for (const auto& p : pairs) {
    out << p.referee_id << ',' << p.better << ',' << p.worse << ','
        << (p.relation == Relation::kTie ? "tie" : "strict") << '\n';
  }
}

}  // namespace peerrank
