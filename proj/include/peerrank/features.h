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

#ifndef PEERRANK_FEATURES_H_
#define PEERRANK_FEATURES_H_

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "peerrank/dataset.h"
#include "peerrank/text_features.h"

namespace peerrank {

// Blocks appear in feature vectors in this enum's order.
enum class FeatureBlock {
  kScoreStats,
  kScoreConcat,
  kDiscourse,
  kEmbedSections,
  kEmbedSectionMeans,
  kEmbedRelatedness,
};

std::string_view BlockName(FeatureBlock block);
FeatureBlock ParseFeatureBlock(std::string_view name);  // throws ConfigError
bool IsEmbeddingBlock(FeatureBlock block);

struct FeatureConfig {
  std::set<FeatureBlock> blocks;
  // Blocks standardized across papers. Defaults to the non-embedding blocks.
  std::set<FeatureBlock> normalized;
  // Restricts the embedding blocks to these sections; empty keeps all.
  std::vector<std::string> sections;

  bool Enabled(FeatureBlock b) const { return blocks.contains(b); }
  bool Normalized(FeatureBlock b) const { return normalized.contains(b); }
  bool NeedsText() const;
  void Validate() const;

  // Scores plus all embedding blocks; no discourse.
  static FeatureConfig AcceptOpt();
  // Summary-section embeddings plus discourse.
  static FeatureConfig CiteOpt();
  static FeatureConfig ScoresOnly();
  // Default normalization for a set of blocks.
  static FeatureConfig WithBlocks(std::set<FeatureBlock> blocks);

  nlohmann::json ToJson() const;
  static FeatureConfig FromJson(const nlohmann::json& j);
  // "accept-opt", "cite-opt", "scores-only" or "custom:<json file>".
  static FeatureConfig FromName(const std::string& name);
};

struct FeatureLayout {
  struct Block {
    FeatureBlock kind;
    std::vector<std::string> columns;

    bool operator==(const Block&) const = default;
  };
  std::vector<Block> blocks;

  size_t Dimension() const;
  std::vector<std::string> ColumnNames() const;
  bool operator==(const FeatureLayout&) const = default;
};

struct FeatureVector {
  std::string paper_id;
  std::vector<double> values;
  std::shared_ptr<const FeatureLayout> layout;
};

// Per-paper vectors under one layout; row i belongs to paper_ids()[i].
class FeatureSet {
 public:
  FeatureSet(std::shared_ptr<const FeatureLayout> layout,
             std::vector<std::string> paper_ids, Eigen::MatrixXd values);

  const FeatureLayout& layout() const { return *layout_; }
  std::shared_ptr<const FeatureLayout> shared_layout() const { return layout_; }
  const std::vector<std::string>& paper_ids() const { return paper_ids_; }
  const Eigen::MatrixXd& values() const { return values_; }
  size_t size() const { return paper_ids_.size(); }

  std::optional<size_t> Row(std::string_view paper_id) const;
  FeatureVector Vector(std::string_view paper_id) const;  // throws LookupError
  // Keeps only the given papers, in the given order.
  FeatureSet Subset(const std::vector<std::string>& paper_ids) const;

 private:
  std::shared_ptr<const FeatureLayout> layout_;
  std::vector<std::string> paper_ids_;
  Eigen::MatrixXd values_;
  std::unordered_map<std::string, size_t> index_;
};

// Score vector of one review: overall score followed by aspects in scale
// order.
std::vector<double> ReviewScoreVector(const Dataset& d, const Review& r);

// Mean, population sd, min, max for the overall score and each aspect.
std::vector<double> ScoreStatistics(const Dataset& d, std::string_view paper_id);

// Review score vectors ordered by review_id, padded to `slots` reviews with
// the paper's mean score vector.
std::vector<double> ScoreConcatenation(const Dataset& d,
                                       std::string_view paper_id, size_t slots);

// Statistics followed by the concatenation padded to the dataset-wide
// maximum review count.
std::vector<double> ScoreFeatures(const Dataset& d, std::string_view paper_id);

// Mean cosine similarity over all unordered pairs. Fewer than two vectors
// yields 1.0; a zero vector throws ComputationError.
double RelatednessFeature(std::span<const std::vector<double>> embeddings);

// Standardizes each column to zero mean and unit population variance.
// Constant columns become zero.
void StandardizeColumns(Eigen::Ref<Eigen::MatrixXd> block);

// Builds vectors for every paper in the dataset. Throws CoverageError when
// text features are required but missing for a paper, SchemaError when the
// table lacks a requested block.
FeatureSet AssembleFeatures(const Dataset& d, const FeatureConfig& cfg,
                            const TextFeatureTable* text);

}  // namespace peerrank

#endif  // PEERRANK_FEATURES_H_
