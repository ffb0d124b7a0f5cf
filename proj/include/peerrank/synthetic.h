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

#ifndef PEERRANK_SYNTHETIC_H_
#define PEERRANK_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "peerrank/dataset.h"
#include "peerrank/text_features.h"

namespace peerrank {

// Desk-scale peer-review generator. Each paper has a latent quality
// u ~ N(0, 1); referee e adds a calibration offset b_e ~ N(0, bias_spread²)
// (in overall-scale points) to every overall score it gives:
//
//   overall = clip(round(c + s·(u + ε) + b_e)),   ε ~ N(0, score_noise²)
//
// with c the scale midpoint and s a quarter of its range. Aspect latents mix
// u with a paper-specific factor and carry no referee offset.
struct SyntheticConfig {
  size_t paper_count = 150;
  size_t referee_count = 120;
  size_t reviews_per_paper = 3;
  size_t max_load = 8;
  size_t track_count = 1;
  double bias_spread = 1.0;
  double score_noise = 0.3;
  double aspect_loading = 0.8;
  double aspect_noise = 0.3;
  double acceptance_quota = 0.25;
  double committee_noise = 0.3;
  double citation_base = 10.0;
  double citation_slope = 1.0;
  double citation_noise = 0.5;
  ScaleSpec scale = ScaleSpec::Acl2018();

  // Throws ConfigError, including when referee_count · max_load cannot
  // cover every review slot.
  void Validate() const;
  nlohmann::json ToJson() const;
  static SyntheticConfig FromJson(const nlohmann::json& j);
};

struct SyntheticData {
  Dataset dataset;
  std::map<std::string, double> true_utility;
};

SyntheticData GenerateSynthetic(const SyntheticConfig& cfg, uint64_t seed);

// Stand-in for the offline text featurizer. Per review and section, a
// vector signal·u·d_s + N(0, I) with a fixed unit direction d_s, pooled
// over a random sentence count; first sentences are noisy copies of the
// summary vector; discourse label logits shift linearly with u.
struct SyntheticTextConfig {
  std::vector<std::string> sections = {
      std::string(kSummarySection), "strengths", "weaknesses", "questions",
      "additional_comments"};
  std::vector<std::string> discourse_labels = {"evaluation", "request", "fact",
                                               "reference", "quote"};
  int dimension = 8;
  double signal = 1.0;
  double discourse_signal = 0.5;
};

TextFeatureTable SyntheticTextFeatures(
    const Dataset& d, const std::map<std::string, double>& true_utility,
    const SyntheticTextConfig& cfg, uint64_t seed);

}  // namespace peerrank

#endif  // PEERRANK_SYNTHETIC_H_
