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

#include <sstream>

#include "gtest/gtest.h"
#include "oracles/oracles.h"
#include "peerrank/dataset.h"
#include "peerrank/errors.h"
#include "test_util.h"

namespace peerrank {
namespace {

using testing::MakePaper;
using testing::MakeReview;
using testing::SmallScale;

TEST(ScaleSpecTest, RejectsInvertedScales) {
  ScaleSpec s = SmallScale();
  s.overall_max = s.overall_min;
  EXPECT_THROW(s.Validate(), ValidationError);
  s = SmallScale();
  s.aspects[0].min = 5;
  EXPECT_THROW(s.Validate(), ValidationError);
}

TEST(ScaleSpecTest, JsonRoundTrip) {
  const ScaleSpec s = ScaleSpec::Acl2018();
  EXPECT_EQ(ScaleSpec::FromJson(s.ToJson()), s);
  EXPECT_EQ(s.aspects.size(), 6u);
  EXPECT_EQ(s.overall_max, 6);
}

TEST(DatasetTest, TwoPapersFourReviews) {
  const Dataset d({MakePaper("p1"), MakePaper("p2")},
                  {MakeReview("r1", "p1", "e1", 3), MakeReview("r2", "p1", "e2", 4),
                   MakeReview("r3", "p2", "e1", 2), MakeReview("r4", "p2", "e2", 5)},
                  SmallScale());
  EXPECT_EQ(d.papers().size(), 2u);
  EXPECT_EQ(d.reviews().size(), 4u);
  EXPECT_EQ(d.referees(), (std::vector<std::string>{"e1", "e2"}));
}

TEST(DatasetTest, RejectsEmptyPaperSet) {
  EXPECT_THROW(Dataset({}, {}, SmallScale()), ValidationError);
}

TEST(DatasetTest, RejectsDanglingPaper) {
  EXPECT_THROW(Dataset({MakePaper("p1")},
                       {MakeReview("r1", "p1", "e1", 3),
                        MakeReview("r2", "ghost", "e1", 3)},
                       SmallScale()),
               IntegrityError);
}

TEST(DatasetTest, RejectsDuplicateRefereePaper) {
  EXPECT_THROW(Dataset({MakePaper("p1")},
                       {MakeReview("r1", "p1", "e1", 3), MakeReview("r2", "p1", "e1", 4)},
                       SmallScale()),
               IntegrityError);
}

TEST(DatasetTest, RejectsDuplicateIds) {
  EXPECT_THROW(Dataset({MakePaper("p1"), MakePaper("p1")},
                       {MakeReview("r1", "p1", "e1", 3)}, SmallScale()),
               IntegrityError);
  EXPECT_THROW(Dataset({MakePaper("p1"), MakePaper("p2")},
                       {MakeReview("r1", "p1", "e1", 3), MakeReview("r1", "p2", "e1", 3)},
                       SmallScale()),
               IntegrityError);
}

TEST(DatasetTest, OutOfScaleNamesReview) {
  try {
    Dataset({MakePaper("p1")}, {MakeReview("bad-review", "p1", "e1", 7)},
            SmallScale());
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bad-review"), std::string::npos);
  }
  EXPECT_THROW(Dataset({MakePaper("p1")},
                       {MakeReview("r1", "p1", "e1", 3, 3.0, 0.0)}, SmallScale()),
               ValidationError);
}

TEST(DatasetTest, RejectsUnknownAndMissingAspects) {
  Review r = MakeReview("r1", "p1", "e1", 3);
  r.aspect_scores["bogus"] = 2;
  EXPECT_THROW(Dataset({MakePaper("p1")}, {r}, SmallScale()), ValidationError);
  r = MakeReview("r1", "p1", "e1", 3);
  r.aspect_scores.erase("clarity");
  EXPECT_THROW(Dataset({MakePaper("p1")}, {r}, SmallScale()), ValidationError);
}

TEST(DatasetTest, RejectsPaperWithoutReviews) {
  EXPECT_THROW(Dataset({MakePaper("p1"), MakePaper("p2")},
                       {MakeReview("r1", "p1", "e1", 3)}, SmallScale()),
               ValidationError);
}

TEST(DatasetTest, RejectsCitationsWithoutLabel) {
  EXPECT_THROW(Dataset({MakePaper("p1", std::nullopt, 5)},
                       {MakeReview("r1", "p1", "e1", 3)}, SmallScale()),
               ValidationError);
}

TEST(DatasetTest, RejectsNonPositiveConfidence) {
  EXPECT_THROW(Dataset({MakePaper("p1")}, {MakeReview("r1", "p1", "e1", 3, 0.0)},
                       SmallScale()),
               ValidationError);
}

TEST(DatasetTest, CanonicalOrderMakesEqual) {
  const Dataset a({MakePaper("x"), MakePaper("y")},
                  {MakeReview("r2", "y", "e1", 2), MakeReview("r1", "x", "e1", 3)},
                  SmallScale());
  const Dataset b({MakePaper("y"), MakePaper("x")},
                  {MakeReview("r1", "x", "e1", 3), MakeReview("r2", "y", "e1", 2)},
                  SmallScale());
  EXPECT_EQ(a, b);
}

TEST(PortfolioTest, ThreePapers) {
  const Dataset d({MakePaper("x"), MakePaper("y"), MakePaper("z")},
                  {MakeReview("r1", "x", "e1", 3), MakeReview("r2", "y", "e1", 2),
                   MakeReview("r3", "z", "e1", 5), MakeReview("r4", "z", "e2", 1)},
                  SmallScale());
  const auto p = GetRefereePortfolio(d, "e1");
  EXPECT_EQ(p.reviews.size(), 3u);
  EXPECT_EQ(p.papers, (std::vector<std::string>{"x", "y", "z"}));
  const auto single = GetRefereePortfolio(d, "e2");
  EXPECT_EQ(single.reviews.size(), 1u);
  EXPECT_EQ(single.papers, std::vector<std::string>{"z"});
  EXPECT_THROW(GetRefereePortfolio(d, "nobody"), LookupError);
}

TEST(DatasetIoTest, RoundTrip) {
  const auto data = testing::RandomInstance(5, 20, 10, 3);
  std::stringstream reviews, papers;
  WriteDataset(data.dataset, reviews, papers);
  const Dataset back = ParseDataset(reviews, papers, data.dataset.scale());
  EXPECT_EQ(back, data.dataset);
}

TEST(DatasetIoTest, ParseErrorNamesLine) {
  std::stringstream reviews(
      R"({"review_id":"r1","paper_id":"p1","referee_id":"e1","overall_score":3,"aspect_scores":{"clarity":3,"originality":3},"confidence":null,"sections":{}})"
      "\n{not json}\n");
  std::stringstream papers(R"({"paper_id":"p1","track":"main","accepted":null,"citation_count":null})");
  try {
    ParseDataset(reviews, papers, SmallScale(), "reviews.jsonl");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("reviews.jsonl:2"), std::string::npos);
  }
}

TEST(DatasetIoTest, MissingFieldIsParseError) {
  std::stringstream reviews(R"({"review_id":"r1","paper_id":"p1","overall_score":3})");
  std::stringstream papers(R"({"paper_id":"p1","track":"main"})");
  EXPECT_THROW(ParseDataset(reviews, papers, SmallScale()), ParseError);
}

TEST(DatasetStatsTest, MatchesTwoPassOracle) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = testing::RandomInstance(seed, 30 + seed, 12, 2 + seed % 3);
    const Dataset& d = data.dataset;
    std::vector<double> per_paper, per_referee;
    for (const auto& p : d.papers()) {
      double n = 0;
      for (const auto& r : d.reviews()) n += r.paper_id == p.paper_id;
      per_paper.push_back(n);
    }
    for (const auto& e : d.referees()) {
      double n = 0;
      for (const auto& r : d.reviews()) n += r.referee_id == e;
      per_referee.push_back(n);
    }
    const auto s = d.Stats();
    const auto pp = oracle::TwoPassStats(per_paper);
    const auto pr = oracle::TwoPassStats(per_referee);
    EXPECT_NEAR(s.reviews_per_paper_mean, pp.mean, 1e-12);
    EXPECT_NEAR(s.reviews_per_paper_sd, pp.sd, 1e-12);
    EXPECT_NEAR(s.reviews_per_referee_mean, pr.mean, 1e-12);
    EXPECT_NEAR(s.reviews_per_referee_sd, pr.sd, 1e-12);
  }
}

}  // namespace
}  // namespace peerrank
