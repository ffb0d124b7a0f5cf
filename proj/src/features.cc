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

#include "peerrank/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "peerrank/errors.h"

namespace peerrank {
namespace {

constexpr FeatureBlock kAllBlocks[] = {
    FeatureBlock::kScoreStats,    FeatureBlock::kScoreConcat,
    FeatureBlock::kDiscourse,     FeatureBlock::kEmbedSections,
    FeatureBlock::kEmbedSectionMeans, FeatureBlock::kEmbedRelatedness,
};

std::optional<TextColumnKind> TextKindOf(FeatureBlock block) {
  switch (block) {
    case FeatureBlock::kDiscourse:
      return TextColumnKind::kDiscourse;
    case FeatureBlock::kEmbedSections:
      return TextColumnKind::kEmbed;
    case FeatureBlock::kEmbedSectionMeans:
      return TextColumnKind::kEmbedMean;
    case FeatureBlock::kEmbedRelatedness:
      return TextColumnKind::kRelated;
    default:
      return std::nullopt;
  }
}

std::vector<std::string> ScoreNames(const ScaleSpec& scale) {
  std::vector<std::string> names = {"overall"};
  for (const auto& a : scale.aspects) names.push_back(a.name);
  return names;
}

}  // namespace

std::string_view BlockName(FeatureBlock block) {
  switch (block) {
    case FeatureBlock::kScoreStats:
      return "score-stats";
    case FeatureBlock::kScoreConcat:
      return "score-concat";
    case FeatureBlock::kDiscourse:
      return "discourse";
    case FeatureBlock::kEmbedSections:
      return "embed-sections";
    case FeatureBlock::kEmbedSectionMeans:
      return "embed-section-means";
    case FeatureBlock::kEmbedRelatedness:
      return "embed-relatedness";
  }
  return "unknown";
}

FeatureBlock ParseFeatureBlock(std::string_view name) {
  for (FeatureBlock b : kAllBlocks) {
    if (BlockName(b) == name) return b;
  }
  throw ConfigError("unknown feature block '" + std::string(name) + "'");
}

bool IsEmbeddingBlock(FeatureBlock block) {
  return block == FeatureBlock::kEmbedSections ||
         block == FeatureBlock::kEmbedSectionMeans ||
         block == FeatureBlock::kEmbedRelatedness;
}

bool FeatureConfig::NeedsText() const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [](FeatureBlock b) { return TextKindOf(b).has_value(); });
}

void FeatureConfig::Validate() const {
  if (blocks.empty()) throw ConfigError("feature config enables no blocks");
}

FeatureConfig FeatureConfig::WithBlocks(std::set<FeatureBlock> blocks) {
  FeatureConfig cfg;
  cfg.blocks = std::move(blocks);
  for (FeatureBlock b : cfg.blocks) {
    if (!IsEmbeddingBlock(b)) cfg.normalized.insert(b);
  }
  return cfg;
}

FeatureConfig FeatureConfig::AcceptOpt() {
  return WithBlocks({FeatureBlock::kScoreStats, FeatureBlock::kScoreConcat,
                     FeatureBlock::kEmbedSections,
                     FeatureBlock::kEmbedSectionMeans,
                     FeatureBlock::kEmbedRelatedness});
}

FeatureConfig FeatureConfig::CiteOpt() {
  FeatureConfig cfg =
      WithBlocks({FeatureBlock::kDiscourse, FeatureBlock::kEmbedSections,
                  FeatureBlock::kEmbedSectionMeans});
  cfg.sections = {std::string(kSummarySection)};
  return cfg;
}

FeatureConfig FeatureConfig::ScoresOnly() {
  return WithBlocks({FeatureBlock::kScoreStats, FeatureBlock::kScoreConcat});
}

nlohmann::json FeatureConfig::ToJson() const {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (FeatureBlock b : blocks) j["blocks"].push_back(BlockName(b));
  j["normalize"] = nlohmann::json::array();
  for (FeatureBlock b : normalized) j["normalize"].push_back(BlockName(b));
  j["sections"] = sections;
  return j;
}

FeatureConfig FeatureConfig::FromJson(const nlohmann::json& j) {
  std::set<FeatureBlock> blocks;
  try {
    for (const auto& name : j.at("blocks")) {
      blocks.insert(ParseFeatureBlock(name.get<std::string>()));
    }
    FeatureConfig cfg = WithBlocks(std::move(blocks));
    if (j.contains("normalize")) {
      cfg.normalized.clear();
      for (const auto& name : j.at("normalize")) {
        cfg.normalized.insert(ParseFeatureBlock(name.get<std::string>()));
      }
    }
    if (j.contains("sections")) {
      cfg.sections = j.at("sections").get<std::vector<std::string>>();
    }
    cfg.Validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed feature config: ") + e.what());
  }
}

FeatureConfig FeatureConfig::FromName(const std::string& name) {
  if (name == "accept-opt") return AcceptOpt();
  if (name == "cite-opt") return CiteOpt();
  if (name == "scores-only") return ScoresOnly();
  if (name.starts_with("custom:")) {
    const std::string path = name.substr(7);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open feature config " + path);
    try {
      return FromJson(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("malformed feature config " + path + ": " + e.what());
    }
  }
  throw ConfigError("unknown feature config '" + name + "'");
}

size_t FeatureLayout::Dimension() const {
  size_t d = 0;
  for (const auto& b : blocks) d += b.columns.size();
  return d;
}

std::vector<std::string> FeatureLayout::ColumnNames() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) {
    out.insert(out.end(), b.columns.begin(), b.columns.end());
  }
  return out;
}

FeatureSet::FeatureSet(std::shared_ptr<const FeatureLayout> layout,
                       std::vector<std::string> paper_ids,
                       Eigen::MatrixXd values)
    : layout_(std::move(layout)),
      paper_ids_(std::move(paper_ids)),
      values_(std::move(values)) {
  if (static_cast<size_t>(values_.rows()) != paper_ids_.size() ||
      static_cast<size_t>(values_.cols()) != layout_->Dimension()) {
    throw SchemaError("feature matrix shape does not match layout");
  }
  for (size_t i = 0; i < paper_ids_.size(); ++i) {
    if (!index_.emplace(paper_ids_[i], i).second) {
      throw SchemaError("duplicate feature row for paper '" + paper_ids_[i] +
                        "'");
    }
  }
}

std::optional<size_t> FeatureSet::Row(std::string_view paper_id) const {
  auto it = index_.find(std::string(paper_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureVector FeatureSet::Vector(std::string_view paper_id) const {
  auto row = Row(paper_id);
  if (!row) {
    throw LookupError("no feature vector for paper '" + std::string(paper_id) +
                      "'");
  }
  FeatureVector v;
  v.paper_id = std::string(paper_id);
  v.values.resize(values_.cols());
  for (Eigen::Index c = 0; c < values_.cols(); ++c) {
    v.values[c] = values_(*row, c);
  }
  v.layout = layout_;
  return v;
}

FeatureSet FeatureSet::Subset(const std::vector<std::string>& paper_ids) const {
  Eigen::MatrixXd sub(paper_ids.size(), values_.cols());
  for (size_t i = 0; i < paper_ids.size(); ++i) {
    auto row = Row(paper_ids[i]);
    if (!row) {
      throw LookupError("no feature vector for paper '" + paper_ids[i] + "'");
    }
    sub.row(i) = values_.row(*row);
  }
  return FeatureSet(layout_, paper_ids, std::move(sub));
}

std::vector<double> ReviewScoreVector(const Dataset& d, const Review& r) {
  std::vector<double> v = {r.overall_score};
  for (const auto& a : d.scale().aspects) v.push_back(r.aspect_scores.at(a.name));
  return v;
}

std::vector<double> ScoreStatistics(const Dataset& d,
                                    std::string_view paper_id) {
  const auto& indices = d.ReviewsOfPaper(paper_id);
  const size_t width = 1 + d.scale().aspects.size();
  std::vector<std::vector<double>> columns(width);
  for (size_t idx : indices) {
    auto v = ReviewScoreVector(d, d.reviews()[idx]);
    for (size_t k = 0; k < width; ++k) columns[k].push_back(v[k]);
  }
  std::vector<double> out;
  out.reserve(4 * width);
  for (const auto& col : columns) {
    const double n = static_cast<double>(col.size());
    double mean = 0.0;
    for (double x : col) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : col) ss += (x - mean) * (x - mean);
    out.push_back(mean);
    out.push_back(std::sqrt(ss / n));
    out.push_back(*std::min_element(col.begin(), col.end()));
    out.push_back(*std::max_element(col.begin(), col.end()));
  }
  return out;
}

std::vector<double> ScoreConcatenation(const Dataset& d,
                                       std::string_view paper_id,
                                       size_t slots) {
  const auto& indices = d.ReviewsOfPaper(paper_id);
  const size_t width = 1 + d.scale().aspects.size();
  std::vector<double> out;
  out.reserve(slots * width);
  std::vector<double> mean(width, 0.0);
  for (size_t idx : indices) {
    auto v = ReviewScoreVector(d, d.reviews()[idx]);
    for (size_t k = 0; k < width; ++k) mean[k] += v[k];
    out.insert(out.end(), v.begin(), v.end());
  }
  for (double& m : mean) m /= static_cast<double>(indices.size());
  for (size_t s = indices.size(); s < slots; ++s) {
    out.insert(out.end(), mean.begin(), mean.end());
  }
  out.resize(slots * width);
  return out;
}

std::vector<double> ScoreFeatures(const Dataset& d, std::string_view paper_id) {
  auto out = ScoreStatistics(d, paper_id);
  auto concat = ScoreConcatenation(d, paper_id, d.MaxReviewsPerPaper());
  out.insert(out.end(), concat.begin(), concat.end());
  return out;
}

double RelatednessFeature(std::span<const std::vector<double>> embeddings) {
  if (embeddings.size() < 2) return 1.0;
  std::vector<double> norms;
  for (const auto& e : embeddings) {
    if (e.size() != embeddings[0].size()) {
      throw ComputationError("relatedness: embedding dimensions differ");
    }
    double n = 0.0;
    for (double x : e) n += x * x;
    if (n == 0.0) throw ComputationError("relatedness: zero embedding vector");
    norms.push_back(std::sqrt(n));
  }
  double total = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < embeddings.size(); ++i) {
    for (size_t j = i + 1; j < embeddings.size(); ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < embeddings[i].size(); ++k) {
        dot += embeddings[i][k] * embeddings[j][k];
      }
      total += dot / (norms[i] * norms[j]);
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

void StandardizeColumns(Eigen::Ref<Eigen::MatrixXd> block) {
  const double n = static_cast<double>(block.rows());
  if (block.rows() == 0) return;
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    auto col = block.col(c);
    const double mean = col.sum() / n;
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / n);
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
      col.setZero();
    } else {
      col /= sd;
    }
  }
}

FeatureSet AssembleFeatures(const Dataset& d, const FeatureConfig& cfg,
                            const TextFeatureTable* text) {
  cfg.Validate();
  if (cfg.NeedsText() && text == nullptr) {
    throw CoverageError(
        "feature config requires a text-feature file but none was given");
  }
  const auto score_names = ScoreNames(d.scale());
  const size_t slots = d.MaxReviewsPerPaper();

  auto layout = std::make_shared<FeatureLayout>();
  // Source column indices into the text table, per text block.
  std::vector<std::vector<size_t>> text_sources;
  for (FeatureBlock b : kAllBlocks) {
    if (!cfg.Enabled(b)) continue;
    FeatureLayout::Block block{b, {}};
    std::vector<size_t> sources;
    if (b == FeatureBlock::kScoreStats) {
      for (const auto& s : score_names) {
        for (const char* stat : {"mean", "sd", "min", "max"}) {
          block.columns.push_back(s + ":" + stat);
        }
      }
    } else if (b == FeatureBlock::kScoreConcat) {
      for (size_t slot = 0; slot < slots; ++slot) {
        for (const auto& s : score_names) {
          block.columns.push_back("review" + std::to_string(slot) + ":" + s);
        }
      }
    } else {
      const TextColumnKind kind = *TextKindOf(b);
      const bool filtered =
          !cfg.sections.empty() && (kind == TextColumnKind::kEmbed ||
                                    kind == TextColumnKind::kEmbedMean);
      for (size_t i = 0; i < text->columns().size(); ++i) {
        const TextColumn& c = text->columns()[i];
        if (c.kind != kind) continue;
        if (filtered && std::find(cfg.sections.begin(), cfg.sections.end(),
                                  c.label) == cfg.sections.end()) {
          continue;
        }
        block.columns.push_back(c.name);
        sources.push_back(i);
      }
      if (block.columns.empty()) {
        throw SchemaError("text-feature file has no columns for block '" +
                          std::string(BlockName(b)) + "'");
      }
    }
    text_sources.push_back(std::move(sources));
    layout->blocks.push_back(std::move(block));
  }

  const size_t n = d.papers().size();
  Eigen::MatrixXd values(n, layout->Dimension());
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) {
    const std::string& pid = d.papers()[i].paper_id;
    ids.push_back(pid);
    const std::vector<double>* row = nullptr;
    if (cfg.NeedsText()) {
      row = text->Row(pid);
      if (row == nullptr) {
        throw CoverageError("text-feature file has no row for paper '" + pid +
                            "'");
      }
    }
    Eigen::Index col = 0;
    for (size_t bi = 0; bi < layout->blocks.size(); ++bi) {
      const auto& block = layout->blocks[bi];
      std::vector<double> part;
      if (block.kind == FeatureBlock::kScoreStats) {
        part = ScoreStatistics(d, pid);
      } else if (block.kind == FeatureBlock::kScoreConcat) {
        part = ScoreConcatenation(d, pid, slots);
      } else {
        for (size_t src : text_sources[bi]) part.push_back((*row)[src]);
      }
      for (double x : part) values(i, col++) = x;
    }
  }

  Eigen::Index offset = 0;
  for (const auto& block : layout->blocks) {
    const auto width = static_cast<Eigen::Index>(block.columns.size());
    if (cfg.Normalized(block.kind)) {
      StandardizeColumns(values.middleCols(offset, width));
    }
    offset += width;
  }
  return FeatureSet(std::move(layout), std::move(ids), std::move(values));
}

}  // namespace peerrank
