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

#ifndef PEERRANK_GOLD_H_
#define PEERRANK_GOLD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "peerrank/dataset.h"
#include "peerrank/ranking.h"

namespace peerrank {

// Reference rankings for evaluation. Citation counts exist only for
// accepted papers; ncc(p) = cc(p) / Σ_{q in track(p)} cc(q).
struct GoldStandard {
  std::map<std::string, bool> acceptance;
  std::map<std::string, int64_t> citations_raw;
  std::map<std::string, double> citations_norm;
  std::map<std::string, std::string> track;
  // Latent quality; only known for synthetic data.
  std::map<std::string, double> true_utility;

  static GoldStandard FromDataset(
      const Dataset& d, const std::map<std::string, double>& true_utility = {});
};

// Throws LookupError for papers without citations and ComputationError when
// the track total is zero.
double Ncc(const GoldStandard& gold, std::string_view paper_id);

struct Effectiveness {
  std::optional<double> auroc;
  std::optional<double> prauc;
  std::optional<double> rho_raw;
  std::optional<double> rho_norm;
  // Against true utility, when the gold standard has it.
  std::optional<double> rho_true;
  size_t labeled = 0;
  size_t cited = 0;

  nlohmann::json ToJson() const;
};

// Metrics over `papers` (all gold-labeled papers when empty). Spearman
// correlations use only papers with citation data. Throws CoverageError if
// the ranking lacks an evaluated paper.
Effectiveness Evaluate(const RankingResult& result, const GoldStandard& gold,
                       const std::vector<std::string>& papers = {});

struct Split {
  std::vector<std::string> dev;
  std::vector<std::string> test;
  std::string id;
};

// Random split of the labeled papers, stratified jointly on acceptance and
// citation-rank quartile. Per-stratum dev counts follow largest-remainder
// allocation of round(dev_fraction · n). Strata with fewer than two papers
// are merged into a neighbouring quartile.
Split StratifiedSplit(const GoldStandard& gold, double dev_fraction,
                      uint64_t seed);

}  // namespace peerrank

#endif  // PEERRANK_GOLD_H_
