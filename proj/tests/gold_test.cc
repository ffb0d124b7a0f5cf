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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/oracles.h"
#include "peerrank/errors.h"
#include "peerrank/gold.h"
#include "peerrank/ranking.h"
#include "test_util.h"

namespace peerrank {
namespace {

using testing::MakePaper;
using testing::MakeReview;

GoldStandard HandGold() {
  GoldStandard g;
  g.acceptance = {{"a", true}, {"b", true}, {"c", false}, {"d", true}};
  g.citations_raw = {{"a", 10}, {"b", 90}, {"d", 5}};
  g.track = {{"a", "t1"}, {"b", "t1"}, {"c", "t1"}, {"d", "t2"}};
  return g;
}

TEST(NccTest, Arithmetic) {
  const GoldStandard g = HandGold();
  EXPECT_DOUBLE_EQ(Ncc(g, "a"), 0.1);
  EXPECT_DOUBLE_EQ(Ncc(g, "d"), 1.0);
  EXPECT_THROW(Ncc(g, "c"), LookupError);
  GoldStandard zero = g;
  zero.citations_raw["d"] = 0;
  EXPECT_THROW(Ncc(zero, "d"), ComputationError);
}

TEST(NccTest, SumsToOnePerTrack) {
  const auto data = testing::RandomInstance(5, 60, 40, 3, 1.0, 3);
  const auto g = GoldStandard::FromDataset(data.dataset);
  std::map<std::string, double> sums;
  for (const auto& [id, v] : g.citations_norm) sums[g.track.at(id)] += v;
  ASSERT_EQ(sums.size(), 3u);
  for (const auto& [track, s] : sums) EXPECT_NEAR(s, 1.0, 1e-9) << track;
  for (const auto& [id, unused] : g.citations_raw) {
    EXPECT_TRUE(g.acceptance.at(id));
  }
}

TEST(EvaluateTest, PerfectSeparatorAndCitationOrder) {
  const GoldStandard g = HandGold();
  const auto by_label = MakeRanking("m", {"a", "b", "c", "d"}, {1, 1, 0, 1});
  const auto e = Evaluate(by_label, g);
  EXPECT_DOUBLE_EQ(*e.auroc, 1.0);
  EXPECT_DOUBLE_EQ(*e.prauc, 1.0);
  EXPECT_EQ(e.labeled, 4u);
  EXPECT_EQ(e.cited, 3u);
  const auto by_cites = MakeRanking("m", {"a", "b", "c", "d"}, {10, 90, 0, 5});
  EXPECT_DOUBLE_EQ(*Evaluate(by_cites, g).rho_raw, 1.0);
  EXPECT_FALSE(Evaluate(by_cites, g).rho_true.has_value());
}

TEST(EvaluateTest, AurocMatchesPairCounting) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = testing::RandomInstance(seed, 10 + 4 * seed, 30, 3);
    const auto g = GoldStandard::FromDataset(data.dataset, data.true_utility);
    std::vector<std::string> ids;
    std::vector<double> u;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coarse(0, 4);
    for (const auto& [id, unused] : g.acceptance) {
      ids.push_back(id);
      u.push_back(coarse(rng) + data.true_utility.at(id));
    }
    const auto e = Evaluate(MakeRanking("m", ids, u), g);
    std::vector<bool> labels;
    for (const auto& id : ids) labels.push_back(g.acceptance.at(id));
    ASSERT_TRUE(e.auroc.has_value());
    EXPECT_NEAR(*e.auroc, oracle::PairCountAuroc(u, labels), 1e-12);
    EXPECT_GE(*e.prauc, 0.0);
    EXPECT_LE(*e.prauc, 1.0);
  }
}

TEST(EvaluateTest, MissingPaperIsCoverageError) {
  const auto r = MakeRanking("m", {"a", "b"}, {1, 2});
  EXPECT_THROW(Evaluate(r, HandGold()), CoverageError);
  EXPECT_NO_THROW(Evaluate(r, HandGold(), {"a", "b"}));
}

TEST(SplitTest, PartitionAndDeterminism) {
  const auto data = testing::RandomInstance(3, 100, 60, 3);
  const auto g = GoldStandard::FromDataset(data.dataset);
  const Split s = StratifiedSplit(g, 0.2, 7);
  std::set<std::string> dev(s.dev.begin(), s.dev.end());
  std::set<std::string> all(s.dev.begin(), s.dev.end());
  all.insert(s.test.begin(), s.test.end());
  EXPECT_EQ(all.size(), g.acceptance.size());
  for (const auto& id : s.test) EXPECT_FALSE(dev.contains(id));
  EXPECT_EQ(s.dev.size(), 20u);
  int accepted_dev = 0;
  for (const auto& id : s.dev) accepted_dev += g.acceptance.at(id);
  EXPECT_NEAR(accepted_dev, 5, 1);
  const Split again = StratifiedSplit(g, 0.2, 7);
  EXPECT_EQ(again.dev, s.dev);
  EXPECT_EQ(again.id, "stratified-dev0.20-seed7");
  EXPECT_NE(StratifiedSplit(g, 0.2, 8).dev, s.dev);
  EXPECT_THROW(StratifiedSplit(g, 1.0, 7), ConfigError);
}

TEST(SplitTest, AcceptanceRateBalancedAcrossSeeds) {
  const auto data = testing::RandomInstance(9, 150, 120, 3);
  const auto g = GoldStandard::FromDataset(data.dataset);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Split s = StratifiedSplit(g, 0.2, seed);
    auto rate = [&](const std::vector<std::string>& ids) {
      double acc = 0;
      for (const auto& id : ids) acc += g.acceptance.at(id);
      return acc / static_cast<double>(ids.size());
    };
    EXPECT_LT(std::abs(rate(s.dev) - rate(s.test)), 0.05) << seed;
  }
}

TEST(SplitTest, TinyQuartilesAreMerged) {
  GoldStandard g;
  for (int i = 0; i < 5; ++i) {
    const std::string id = "p" + std::to_string(i);
    g.acceptance[id] = true;
    g.citations_raw[id] = i;
    g.track[id] = "main";
  }
  const Split s = StratifiedSplit(g, 0.4, 1);
  EXPECT_EQ(s.dev.size() + s.test.size(), 5u);
  EXPECT_EQ(s.dev.size(), 2u);
}

TEST(GoldStandardTest, FromDataset) {
  const Dataset d = testing::ThreePaperDataset();
  const auto g = GoldStandard::FromDataset(d);
  EXPECT_EQ(g.acceptance.size(), 3u);
  EXPECT_EQ(g.citations_raw.size(), 2u);
  EXPECT_DOUBLE_EQ(g.citations_norm.at("a"), 0.25);
  EXPECT_DOUBLE_EQ(g.citations_norm.at("c"), 0.75);
}

}  // namespace
}  // namespace peerrank
