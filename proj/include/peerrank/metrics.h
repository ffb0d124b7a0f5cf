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

#ifndef PEERRANK_METRICS_H_
#define PEERRANK_METRICS_H_

#include <optional>
#include <span>
#include <vector>

namespace peerrank {

// 1-based ranks in ascending order of value; tied values share the average
// of the positions they occupy.
std::vector<double> AverageRanks(std::span<const double> values);

// Area under the ROC curve with positives = true, computed from the
// Mann-Whitney U statistic (ties count one half). nullopt when either class
// is empty.
std::optional<double> Auroc(std::span<const double> scores,
                            std::span<const bool> labels);

// Area under the precision-recall curve as step-wise average precision:
// Σ_t (R_t - R_{t-1}) P_t over distinct score thresholds t in descending
// order, so tied scores enter together. nullopt without positives.
std::optional<double> Prauc(std::span<const double> scores,
                            std::span<const bool> labels);

// Pearson correlation of average ranks. nullopt for fewer than two items or
// a constant input.
std::optional<double> Spearman(std::span<const double> x,
                               std::span<const double> y);

// Kendall's tau-b. nullopt for fewer than two items or a constant input.
std::optional<double> KendallTau(std::span<const double> x,
                                 std::span<const double> y);

}  // namespace peerrank

#endif  // PEERRANK_METRICS_H_
