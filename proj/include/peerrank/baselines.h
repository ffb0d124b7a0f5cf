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

#ifndef PEERRANK_BASELINES_H_
#define PEERRANK_BASELINES_H_

#include <span>
#include <string>
#include <string_view>

#include "peerrank/dataset.h"
#include "peerrank/ranking.h"

namespace peerrank {

enum class BaselineMethod { kMeanWeighted, kMedian, kMajority };

std::string_view BaselineName(BaselineMethod m);  // "mean-s-w", ...
BaselineMethod ParseBaselineMethod(std::string_view name);  // ConfigError

struct BaselineSpec {
  BaselineMethod method = BaselineMethod::kMeanWeighted;
  // Weight of reviews without a confidence value.
  double missing_confidence_weight = 1.0;
};

// Σ c_i s_i / Σ c_i. Throws ComputationError on non-positive total weight.
double WeightedMean(std::span<const double> scores,
                    std::span<const double> weights);
// Mean of the two middle values for even counts.
double Median(std::span<const double> scores);
// Most frequent score; the plain mean when several scores tie for most votes.
double MajorityVote(std::span<const double> scores);

RankingResult RankBaseline(const Dataset& d, const BaselineSpec& spec);

}  // namespace peerrank

#endif  // PEERRANK_BASELINES_H_
