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

#ifndef PEERRANK_TEXT_FEATURES_H_
#define PEERRANK_TEXT_FEATURES_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace peerrank {

// Column families of the text-feature CSV produced by the offline
// featurizer:
//   discourse:<label>              label proportions (including nonarg)
//   embed:<section>:<i>            pooled section embedding, dimension i
//   embedmean:<section>:<i>        cross-review mean of section embeddings
//   related:first_sentence_cosine  mean first-sentence cosine similarity
enum class TextColumnKind { kDiscourse, kEmbed, kEmbedMean, kRelated };

struct TextColumn {
  std::string name;
  TextColumnKind kind;
  std::string label;    // discourse label or section name
  int dimension = -1;   // embedding index, -1 otherwise
};

inline constexpr std::string_view kRelatednessColumn =
    "related:first_sentence_cosine";
inline constexpr std::string_view kSummarySection = "summary_and_contributions";

// Throws SchemaError for names outside the four families.
TextColumn ParseTextColumn(std::string_view name);

class TextFeatureTable {
 public:
  TextFeatureTable() = default;
  // Validates column names, row widths, finiteness, and that discourse
  // proportions sum to one. Throws SchemaError.
  TextFeatureTable(std::vector<std::string> columns,
                   std::map<std::string, std::vector<double>> rows);

  static TextFeatureTable Parse(std::istream& in,
                                const std::string& source = "text-features");
  static TextFeatureTable Load(const std::string& path);
  void Write(std::ostream& out) const;
  void Save(const std::string& path) const;

  const std::vector<TextColumn>& columns() const { return columns_; }
  const std::map<std::string, std::vector<double>>& rows() const { return rows_; }
  const std::vector<double>* Row(std::string_view paper_id) const;

  bool operator==(const TextFeatureTable& other) const {
    return rows_ == other.rows_ && ColumnNames() == other.ColumnNames();
  }
  std::vector<std::string> ColumnNames() const;

 private:
  std::vector<TextColumn> columns_;
  std::map<std::string, std::vector<double>> rows_;
};

}  // namespace peerrank

#endif  // PEERRANK_TEXT_FEATURES_H_
