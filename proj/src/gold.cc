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

#include "peerrank/gold.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <span>

#include <spdlog/spdlog.h>

#include "peerrank/errors.h"
#include "peerrank/metrics.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

GoldStandard GoldStandard::FromDataset(
    const Dataset& d, const std::map<std::string, double>& true_utility) {
  GoldStandard g;
  std::map<std::string, int64_t> track_total;
  for (const Paper& p : d.papers()) {
    g.track[p.paper_id] = p.track;
    if (p.accepted) g.acceptance[p.paper_id] = *p.accepted;
    if (p.citation_count) {
      g.citations_raw[p.paper_id] = *p.citation_count;
      track_total[p.track] += *p.citation_count;
    }
  }
  for (const auto& [id, cc] : g.citations_raw) {
    const int64_t total = track_total[g.track[id]];
    if (total > 0) {
      g.citations_norm[id] =
          static_cast<double>(cc) / static_cast<double>(total);
    }
  }
  g.true_utility = true_utility;
  return g;
}

double Ncc(const GoldStandard& gold, std::string_view paper_id) {
  const std::string id(paper_id);
  auto it = gold.citations_raw.find(id);
  if (it == gold.citations_raw.end()) {
    throw LookupError("paper '" + id + "' has no citation count");
  }
  const std::string& track = gold.track.at(id);
  int64_t total = 0;
  for (const auto& [other, cc] : gold.citations_raw) {
    if (gold.track.at(other) == track) total += cc;
  }
  if (total == 0) {
    throw ComputationError("track '" + track + "' has zero citations");
  }
  return static_cast<double>(it->second) / static_cast<double>(total);
}

nlohmann::json Effectiveness::ToJson() const {
  return {{"auroc", OptionalJson(auroc)},     {"prauc", OptionalJson(prauc)},
          {"rho_raw", OptionalJson(rho_raw)}, {"rho_norm", OptionalJson(rho_norm)},
          {"rho_true", OptionalJson(rho_true)}, {"labeled", labeled},
          {"cited", cited}};
}

Effectiveness Evaluate(const RankingResult& result, const GoldStandard& gold,
                       const std::vector<std::string>& papers) {
  const auto utility = result.UtilityMap();
  std::vector<std::string> ids = papers;
  if (ids.empty()) {
    for (const auto& [id, unused] : gold.acceptance) ids.push_back(id);
  }
  auto utility_of = [&](const std::string& id) {
    auto it = utility.find(id);
    if (it == utility.end()) {
      throw CoverageError("ranking '" + result.method + "' lacks paper '" + id +
                          "'");
    }
    return it->second;
  };

  Effectiveness e;
  std::vector<double> scores;
  std::vector<char> labels;
  std::vector<double> cited_scores, raw, norm_scores, norm;
  std::vector<double> true_scores, truth;
  for (const auto& id : ids) {
    const double u = utility_of(id);
    if (auto it = gold.acceptance.find(id); it != gold.acceptance.end()) {
      scores.push_back(u);
      labels.push_back(it->second);
    }
    if (auto it = gold.citations_raw.find(id); it != gold.citations_raw.end()) {
      cited_scores.push_back(u);
      raw.push_back(static_cast<double>(it->second));
    }
    if (auto it = gold.citations_norm.find(id); it != gold.citations_norm.end()) {
      norm_scores.push_back(u);
      norm.push_back(it->second);
    }
    if (auto it = gold.true_utility.find(id); it != gold.true_utility.end()) {
      true_scores.push_back(u);
      truth.push_back(it->second);
    }
  }
  // std::vector<bool> has no contiguous storage.
  std::unique_ptr<bool[]> label_buf(new bool[labels.size()]);
  for (size_t i = 0; i < labels.size(); ++i) label_buf[i] = labels[i] != 0;
  std::span<const bool> label_span(label_buf.get(), labels.size());
  e.labeled = labels.size();
  e.cited = raw.size();
  e.auroc = Auroc(scores, label_span);
  e.prauc = Prauc(scores, label_span);
  e.rho_raw = Spearman(cited_scores, raw);
  e.rho_norm = Spearman(norm_scores, norm);
  e.rho_true = Spearman(true_scores, truth);
  return e;
}

Split StratifiedSplit(const GoldStandard& gold, double dev_fraction,
                      uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw ConfigError("dev_fraction must lie in (0, 1)");
  }
  // Strata: 0 = rejected, 1 = accepted without citations, 2..5 = citation
  // quartiles (lowest first).
  std::vector<std::vector<std::string>> strata(6);
  std::vector<std::pair<int64_t, std::string>> cited;
  for (const auto& [id, accepted] : gold.acceptance) {
    if (!accepted) {
      strata[0].push_back(id);
    } else if (auto it = gold.citations_raw.find(id);
               it != gold.citations_raw.end()) {
      cited.emplace_back(it->second, id);
    } else {
      strata[1].push_back(id);
    }
  }
  std::sort(cited.begin(), cited.end());
  for (size_t i = 0; i < cited.size(); ++i) {
    strata[2 + (4 * i) / cited.size()].push_back(cited[i].second);
  }
  for (size_t q = 2; q < 6; ++q) {
    if (strata[q].empty() || strata[q].size() >= 2) continue;
    size_t target = q + 1;
    while (target < 6 && strata[target].empty()) ++target;
    if (target == 6) {
      target = q;
      while (target > 2 && strata[target - 1].empty()) --target;
      target = target > 2 ? target - 1 : q;
    }
    if (target == q) continue;
    spdlog::warn("split: citation quartile {} has {} paper(s); merging", q - 1,
                 strata[q].size());
    strata[target].insert(strata[target].end(), strata[q].begin(),
                          strata[q].end());
    strata[q].clear();
  }

  size_t total = 0;
  for (const auto& s : strata) total += s.size();
  const auto target =
      static_cast<size_t>(std::llround(dev_fraction * static_cast<double>(total)));
  std::vector<size_t> quota(strata.size());
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t s = 0; s < strata.size(); ++s) {
    const double exact = dev_fraction * static_cast<double>(strata[s].size());
    quota[s] = static_cast<size_t>(std::floor(exact));
    assigned += quota[s];
    remainders.emplace_back(-(exact - std::floor(exact)), s);
  }
  std::sort(remainders.begin(), remainders.end());
  for (size_t k = 0; assigned < target && k < remainders.size(); ++k) {
    const size_t s = remainders[k].second;
    if (quota[s] < strata[s].size()) {
      ++quota[s];
      ++assigned;
    }
  }

  Split out;
  Rng rng = MakeRng(seed, "split");
  for (size_t s = 0; s < strata.size(); ++s) {
    auto members = strata[s];
    std::sort(members.begin(), members.end());
    std::shuffle(members.begin(), members.end(), rng);
    for (size_t i = 0; i < members.size(); ++i) {
      (i < quota[s] ? out.dev : out.test).push_back(members[i]);
    }
  }
  std::sort(out.dev.begin(), out.dev.end());
  std::sort(out.test.begin(), out.test.end());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "stratified-dev%.2f-seed%llu", dev_fraction,
                static_cast<unsigned long long>(seed));
  out.id = buf;
  return out;
}

}  // namespace peerrank
