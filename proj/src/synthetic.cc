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

#include "peerrank/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "peerrank/errors.h"
#include "peerrank/features.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

std::string PaddedId(char prefix, size_t i, size_t total) {
  size_t width = 1;
  for (size_t t = total; t >= 10; t /= 10) ++width;
  std::string digits = std::to_string(i);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

double RoundClip(double x, int lo, int hi) {
  return std::clamp(std::round(x), static_cast<double>(lo),
                    static_cast<double>(hi));
}

// Least-loaded referee assignment with random tie-breaking.
std::vector<std::vector<size_t>> AssignReferees(const SyntheticConfig& cfg,
                                                Rng& rng) {
  std::vector<size_t> load(cfg.referee_count, 0);
  std::vector<std::vector<size_t>> assigned(cfg.paper_count);
  std::vector<size_t> order(cfg.referee_count);
  std::iota(order.begin(), order.end(), 0);
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return load[a] < load[b]; });
    for (size_t k = 0; k < cfg.reviews_per_paper; ++k) {
      const size_t e = order[k];
      if (load[e] >= cfg.max_load) {
        throw ConfigError("synthetic referee assignment is infeasible");
      }
      ++load[e];
      assigned[p].push_back(e);
    }
  }
  return assigned;
}

std::vector<double> UnitDirection(int dim, Rng& rng) {
  std::normal_distribution<double> n01;
  std::vector<double> v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = n01(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace

void SyntheticConfig::Validate() const {
  scale.Validate();
  if (paper_count == 0) throw ConfigError("synthetic paper_count must be > 0");
  if (reviews_per_paper == 0) {
    throw ConfigError("synthetic reviews_per_paper must be > 0");
  }
  if (referee_count < reviews_per_paper) {
    throw ConfigError("fewer referees than reviews per paper");
  }
  if (referee_count * max_load < paper_count * reviews_per_paper) {
    throw ConfigError("referee slots (" + std::to_string(referee_count) + " x " +
                      std::to_string(max_load) + ") cannot cover " +
                      std::to_string(paper_count * reviews_per_paper) +
                      " reviews");
  }
  if (track_count == 0) throw ConfigError("synthetic track_count must be > 0");
  for (double v : {bias_spread, score_noise, aspect_noise, committee_noise,
                   citation_noise, citation_base}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("synthetic noise and spread values must be >= 0");
    }
  }
  if (!(aspect_loading >= 0.0 && aspect_loading <= 1.0)) {
    throw ConfigError("aspect_loading must lie in [0, 1]");
  }
  if (!(acceptance_quota >= 0.0 && acceptance_quota <= 1.0)) {
    throw ConfigError("acceptance_quota must lie in [0, 1]");
  }
}

nlohmann::json SyntheticConfig::ToJson() const {
  return {{"paper_count", paper_count},
          {"referee_count", referee_count},
          {"reviews_per_paper", reviews_per_paper},
          {"max_load", max_load},
          {"track_count", track_count},
          {"bias_spread", bias_spread},
          {"score_noise", score_noise},
          {"aspect_loading", aspect_loading},
          {"aspect_noise", aspect_noise},
          {"acceptance_quota", acceptance_quota},
          {"committee_noise", committee_noise},
          {"citation_base", citation_base},
          {"citation_slope", citation_slope},
          {"citation_noise", citation_noise},
          {"scale", scale.ToJson()}};
}

SyntheticConfig SyntheticConfig::FromJson(const nlohmann::json& j) {
  SyntheticConfig c;
  try {
    c.paper_count = j.value("paper_count", c.paper_count);
    c.referee_count = j.value("referee_count", c.referee_count);
    c.reviews_per_paper = j.value("reviews_per_paper", c.reviews_per_paper);
    c.max_load = j.value("max_load", c.max_load);
    c.track_count = j.value("track_count", c.track_count);
    c.bias_spread = j.value("bias_spread", c.bias_spread);
    c.score_noise = j.value("score_noise", c.score_noise);
    c.aspect_loading = j.value("aspect_loading", c.aspect_loading);
    c.aspect_noise = j.value("aspect_noise", c.aspect_noise);
    c.acceptance_quota = j.value("acceptance_quota", c.acceptance_quota);
    c.committee_noise = j.value("committee_noise", c.committee_noise);
    c.citation_base = j.value("citation_base", c.citation_base);
    c.citation_slope = j.value("citation_slope", c.citation_slope);
    c.citation_noise = j.value("citation_noise", c.citation_noise);
    if (j.contains("scale")) c.scale = ScaleSpec::FromJson(j.at("scale"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic config: ") + e.what());
  }
  return c;
}

SyntheticData GenerateSynthetic(const SyntheticConfig& cfg, uint64_t seed) {
  cfg.Validate();
  Rng rng = MakeRng(seed, "synthetic");
  std::normal_distribution<double> n01;
  const ScaleSpec& s = cfg.scale;

  std::vector<double> u(cfg.paper_count);
  for (double& x : u) x = n01(rng);
  std::vector<double> bias(cfg.referee_count);
  for (double& b : bias) b = cfg.bias_spread * n01(rng);
  // Paper-specific aspect factors.
  std::vector<std::vector<double>> aspect_latent(cfg.paper_count);
  const double unique = std::sqrt(1.0 - cfg.aspect_loading * cfg.aspect_loading);
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    for (size_t a = 0; a < s.aspects.size(); ++a) {
      aspect_latent[p].push_back(cfg.aspect_loading * u[p] + unique * n01(rng));
    }
  }
  const auto assignment = AssignReferees(cfg, rng);

  std::vector<Paper> papers(cfg.paper_count);
  std::map<std::string, double> truth;
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    papers[p].paper_id = PaddedId('p', p, cfg.paper_count);
    papers[p].track = "track-" + std::to_string(p % cfg.track_count);
    truth[papers[p].paper_id] = u[p];
  }

  const double center = 0.5 * (s.overall_min + s.overall_max);
  const double slope = 0.25 * (s.overall_max - s.overall_min);
  std::uniform_int_distribution<int> confidence(1, 5);
  std::vector<Review> reviews;
  const size_t total_reviews = cfg.paper_count * cfg.reviews_per_paper;
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    for (size_t e : assignment[p]) {
      Review r;
      r.review_id = PaddedId('r', reviews.size(), total_reviews);
      r.paper_id = papers[p].paper_id;
      r.referee_id = PaddedId('e', e, cfg.referee_count);
      r.overall_score =
          RoundClip(center + slope * (u[p] + cfg.score_noise * n01(rng)) + bias[e],
                    s.overall_min, s.overall_max);
      for (size_t a = 0; a < s.aspects.size(); ++a) {
        const AspectScale& scale = s.aspects[a];
        const double c = 0.5 * (scale.min + scale.max);
        const double k = 0.25 * (scale.max - scale.min);
        r.aspect_scores[scale.name] = RoundClip(
            c + k * (aspect_latent[p][a] + cfg.aspect_noise * n01(rng)),
            scale.min, scale.max);
      }
      r.confidence = confidence(rng);
      reviews.push_back(std::move(r));
    }
  }

  // Committee decision: top quota by a noisy view of u.
  std::vector<double> committee(cfg.paper_count);
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    committee[p] = u[p] + cfg.committee_noise * n01(rng);
  }
  std::vector<size_t> order(cfg.paper_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return committee[a] != committee[b] ? committee[a] > committee[b] : a < b;
  });
  const auto accepted = static_cast<size_t>(
      std::llround(cfg.acceptance_quota * static_cast<double>(cfg.paper_count)));
  for (size_t k = 0; k < cfg.paper_count; ++k) {
    papers[order[k]].accepted = k < accepted;
  }
  for (size_t p = 0; p < cfg.paper_count; ++p) {
    const double noise = cfg.citation_noise * n01(rng);
    if (!*papers[p].accepted) continue;
    papers[p].citation_count = static_cast<int64_t>(std::llround(
        cfg.citation_base * std::exp(cfg.citation_slope * u[p] + noise)));
  }
  return {Dataset(std::move(papers), std::move(reviews), s), std::move(truth)};
}

TextFeatureTable SyntheticTextFeatures(
    const Dataset& d, const std::map<std::string, double>& true_utility,
    const SyntheticTextConfig& cfg, uint64_t seed) {
  if (cfg.dimension <= 0) throw ConfigError("text dimension must be > 0");
  if (cfg.sections.empty()) throw ConfigError("no text sections configured");
  Rng layout_rng = MakeRng(seed, "text-directions");
  std::vector<std::vector<double>> direction;
  for (size_t k = 0; k < cfg.sections.size(); ++k) {
    direction.push_back(UnitDirection(cfg.dimension, layout_rng));
  }
  std::vector<double> label_slope;
  std::normal_distribution<double> n01;
  for (size_t l = 0; l <= cfg.discourse_labels.size(); ++l) {
    label_slope.push_back(cfg.discourse_signal * n01(layout_rng));
  }

  std::vector<std::string> columns;
  for (const auto& l : cfg.discourse_labels) columns.push_back("discourse:" + l);
  columns.push_back("discourse:nonarg");
  for (const char* family : {"embed", "embedmean"}) {
    for (const auto& sec : cfg.sections) {
      for (int i = 0; i < cfg.dimension; ++i) {
        columns.push_back(std::string(family) + ":" + sec + ":" +
                          std::to_string(i));
      }
    }
  }
  columns.emplace_back(kRelatednessColumn);

  const size_t dim = static_cast<size_t>(cfg.dimension);
  const size_t labels = cfg.discourse_labels.size() + 1;
  std::map<std::string, std::vector<double>> rows;
  for (const Paper& paper : d.papers()) {
    auto it = true_utility.find(paper.paper_id);
    if (it == true_utility.end()) {
      throw CoverageError("no true utility for paper '" + paper.paper_id + "'");
    }
    const double u = it->second;
    const auto& idx = d.ReviewsOfPaper(paper.paper_id);
    std::vector<double> discourse(labels, 0.0);
    std::vector<std::vector<double>> pooled(cfg.sections.size(),
                                            std::vector<double>(dim, 0.0));
    std::vector<std::vector<double>> means = pooled;
    std::vector<double> weight(cfg.sections.size(), 0.0);
    std::vector<std::vector<double>> first;
    for (size_t i : idx) {
      Rng rng = MakeRng(seed ^ HashString(d.reviews()[i].review_id), "text");
      std::uniform_int_distribution<int> sentences(1, 6);
      for (size_t k = 0; k < cfg.sections.size(); ++k) {
        std::vector<double> v(dim);
        for (size_t j = 0; j < dim; ++j) {
          v[j] = cfg.signal * u * direction[k][j] + n01(rng);
        }
        const double n = sentences(rng);
        for (size_t j = 0; j < dim; ++j) {
          pooled[k][j] += n * v[j];
          means[k][j] += v[j] / static_cast<double>(idx.size());
        }
        weight[k] += n;
        if (k == 0) {
          std::vector<double> f(dim);
          for (size_t j = 0; j < dim; ++j) f[j] = v[j] + 0.5 * n01(rng);
          first.push_back(std::move(f));
        }
      }
      std::vector<double> logits(labels);
      double top = -1e300;
      for (size_t l = 0; l < labels; ++l) {
        logits[l] = label_slope[l] * u + 0.5 * n01(rng);
        top = std::max(top, logits[l]);
      }
      double z = 0.0;
      for (double& x : logits) z += (x = std::exp(x - top));
      for (size_t l = 0; l < labels; ++l) {
        discourse[l] += logits[l] / z / static_cast<double>(idx.size());
      }
    }
    std::vector<double> row = discourse;
    for (size_t k = 0; k < cfg.sections.size(); ++k) {
      for (size_t j = 0; j < dim; ++j) row.push_back(pooled[k][j] / weight[k]);
    }
    for (size_t k = 0; k < cfg.sections.size(); ++k) {
      row.insert(row.end(), means[k].begin(), means[k].end());
    }
    row.push_back(RelatednessFeature(first));
    rows.emplace(paper.paper_id, std::move(row));
  }
  return TextFeatureTable(std::move(columns), std::move(rows));
}

}  // namespace peerrank
