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

#include <cmath>
#include <limits>
#include <sstream>

#include "gtest/gtest.h"
#include "peerrank/errors.h"
#include "peerrank/synthetic.h"
#include "peerrank/text_features.h"
#include "test_util.h"

namespace peerrank {
namespace {

TextFeatureTable Parse(const std::string& csv) {
  std::stringstream in(csv);
  return TextFeatureTable::Parse(in);
}

constexpr char kHeader[] =
    "paper_id,discourse:evaluation,discourse:nonarg,embed:summary_and_contributions:0,"
    "embed:summary_and_contributions:1,embedmean:summary_and_contributions:0,"
    "embedmean:summary_and_contributions:1,related:first_sentence_cosine\n";

TEST(TextColumnTest, ParsesFamilies) {
  const auto c = ParseTextColumn("embed:strengths:3");
  EXPECT_EQ(c.kind, TextColumnKind::kEmbed);
  EXPECT_EQ(c.label, "strengths");
  EXPECT_EQ(c.dimension, 3);
  EXPECT_EQ(ParseTextColumn("discourse:nonarg").kind, TextColumnKind::kDiscourse);
  EXPECT_EQ(ParseTextColumn(kRelatednessColumn).kind, TextColumnKind::kRelated);
  EXPECT_THROW(ParseTextColumn("readability:flesch"), SchemaError);
  EXPECT_THROW(ParseTextColumn("embed:summary:x"), SchemaError);
}

TEST(TextFeatureTableTest, AcceptsValidFile) {
  const auto t = Parse(std::string(kHeader) +
                       "p1,0.25,0.75,0.1,-0.2,0.3,0.4,0.9\n"
                       "p2,1,0,0,0,0,0,1\n");
  EXPECT_EQ(t.rows().size(), 2u);
  ASSERT_NE(t.Row("p1"), nullptr);
  EXPECT_DOUBLE_EQ((*t.Row("p1"))[1], 0.75);
  EXPECT_EQ(t.Row("p3"), nullptr);
}

TEST(TextFeatureTableTest, RejectsDiscourseNotSummingToOne) {
  EXPECT_THROW(Parse(std::string(kHeader) + "p1,0.25,0.70,0,0,0,0,1\n"), SchemaError);
  EXPECT_THROW(Parse(std::string(kHeader) + "p1,1.5,-0.5,0,0,0,0,1\n"), SchemaError);
}

TEST(TextFeatureTableTest, RejectsNonFinite) {
  EXPECT_THROW(Parse(std::string(kHeader) + "p1,0.5,0.5,nan,0,0,0,1\n"), SchemaError);
}

TEST(TextFeatureTableTest, RejectsBadShape) {
  EXPECT_THROW(Parse(std::string(kHeader) + "p1,0.5,0.5,0,0,0,1\n"), SchemaError);
  EXPECT_THROW(Parse("id,discourse:nonarg\np1,1\n"), SchemaError);
  EXPECT_THROW(Parse("paper_id,embed:s:0,embed:s:2\np1,0,0\n"), SchemaError);
  EXPECT_THROW(Parse("paper_id,discourse:nonarg,discourse:nonarg\np1,0.5,0.5\n"),
               SchemaError);
  EXPECT_THROW(Parse("paper_id,discourse:nonarg\np1,1\np1,1\n"), SchemaError);
}

TEST(TextFeatureTableTest, WriteParseRoundTrip) {
  const auto data = testing::RandomInstance(2, 12, 6, 3);
  const auto t = SyntheticTextFeatures(data.dataset, data.true_utility, {}, 9);
  std::stringstream out;
  t.Write(out);
  const auto back = TextFeatureTable::Parse(out);
  EXPECT_EQ(back, t);
}

TEST(TextFeatureTableTest, SyntheticFeaturesAreValid) {
  const auto data = testing::RandomInstance(8, 10, 5, 3);
  SyntheticTextConfig cfg;
  const auto t = SyntheticTextFeatures(data.dataset, data.true_utility, cfg, 3);
  EXPECT_EQ(t.rows().size(), 10u);
  const size_t expected = cfg.discourse_labels.size() + 1 +
                          2 * cfg.sections.size() * cfg.dimension + 1;
  EXPECT_EQ(t.columns().size(), expected);
  for (const auto& [id, row] : t.rows()) {
    double sum = 0;
    for (size_t i = 0; i < t.columns().size(); ++i) {
      if (t.columns()[i].kind == TextColumnKind::kDiscourse) sum += row[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace peerrank
