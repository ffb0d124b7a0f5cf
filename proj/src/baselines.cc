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

#include "peerrank/baselines.h"

#include <algorithm>
#include <map>
#include <vector>

#include "peerrank/errors.h"

namespace peerrank {

std::string_view BaselineName(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::kMeanWeighted:
      return "mean-s-w";
    case BaselineMethod::kMedian:
      return "median-s";
    case BaselineMethod::kMajority:
      return "major-s";
  }
  return "unknown";
}

BaselineMethod ParseBaselineMethod(std::string_view name) {
  for (auto m : {BaselineMethod::kMeanWeighted, BaselineMethod::kMedian,
                 BaselineMethod::kMajority}) {
    if (BaselineName(m) == name) return m;
  }
  throw ConfigError("unknown baseline '" + std::string(name) + "'");
}

double WeightedMean(std::span<const double> scores,
                    std::span<const double> weights) {
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    num += weights[i] * scores[i];
    den += weights[i];
  }
  if (!(den > 0.0)) throw ComputationError("non-positive total confidence weight");
  return num / den;
}

double Median(std::span<const double> scores) {
  std::vector<double> s(scores.begin(), scores.end());
  std::sort(s.begin(), s.end());
  const size_t n = s.size();
  return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

double MajorityVote(std::span<const double> scores) {
  std::map<double, int> votes;
  for (double s : scores) ++votes[s];
  int top = 0;
  for (const auto& [unused, c] : votes) top = std::max(top, c);
  double mode = 0.0;
  int modes = 0;
  for (const auto& [s, c] : votes) {
    if (c == top) {
      mode = s;
      ++modes;
    }
  }
  if (modes == 1) return mode;
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

RankingResult RankBaseline(const Dataset& d, const BaselineSpec& spec) {
  std::vector<std::string> ids;
  std::vector<double> utility;
  for (size_t p = 0; p < d.papers().size(); ++p) {
    std::vector<double> scores;
    std::vector<double> weights;
    for (size_t idx : d.ReviewsOfPaper(p)) {
      const Review& r = d.reviews()[idx];
      scores.push_back(r.overall_score);
      weights.push_back(r.confidence.value_or(spec.missing_confidence_weight));
    }
    double u = 0.0;
    switch (spec.method) {
      case BaselineMethod::kMeanWeighted:
        try {
          u = WeightedMean(scores, weights);
        } catch (const ComputationError& e) {
          throw ComputationError("paper '" + d.papers()[p].paper_id +
                                 "': " + e.what());
        }
        break;
      case BaselineMethod::kMedian:
        u = Median(scores);
        break;
      case BaselineMethod::kMajority:
        u = MajorityVote(scores);
        break;
    }
    ids.push_back(d.papers()[p].paper_id);
    utility.push_back(u);
  }
  return MakeRanking(std::string(BaselineName(spec.method)), std::move(ids),
                     std::move(utility),
                     {{"method", BaselineName(spec.method)},
                      {"missing_confidence_weight",
                       spec.missing_confidence_weight}});
}

}  // namespace peerrank
