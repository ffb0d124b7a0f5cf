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

#include "peerrank/perturb.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "peerrank/errors.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

double RoundClip(double x, int lo, int hi) {
  return std::clamp(std::round(x), static_cast<double>(lo),
                    static_cast<double>(hi));
}

// ⌊α·n⌉ distinct elements of `ids`, drawn with `rng`.
std::vector<std::string> SampleFraction(std::vector<std::string> ids,
                                        double alpha, Rng& rng) {
  const auto k = static_cast<size_t>(
      std::llround(alpha * static_cast<double>(ids.size())));
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::min(k, ids.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::map<std::string, double> UniformWeights(
    const ScaleSpec& scale, const std::map<std::string, double>& fixed) {
  double fixed_total = 0.0;
  for (const auto& [name, w] : fixed) fixed_total += w;
  size_t free = 0;
  for (const auto& a : scale.aspects) free += fixed.count(a.name) == 0;
  std::map<std::string, double> weights = fixed;
  for (const auto& a : scale.aspects) {
    if (fixed.count(a.name) == 0) {
      weights[a.name] = (1.0 - fixed_total) / static_cast<double>(free);
    }
  }
  return weights;
}

std::string RequireAspect(const ScaleSpec& scale, std::string_view name) {
  if (scale.FindAspect(name) == nullptr) {
    throw ConfigError("scale has no aspect '" + std::string(name) + "'");
  }
  return std::string(name);
}

Dataset RefereeNoise(const Dataset& d, const PerturbationConfig& cfg) {
  if (cfg.sigma == 0.0) return d;
  Rng rng = MakeRng(cfg.seed, "perturb-referees");
  const auto affected = SampleFraction(d.referees(), cfg.alpha, rng);
  std::vector<Review> reviews = d.reviews();
  std::normal_distribution<double> noise(0.0, cfg.sigma);
  const ScaleSpec& s = d.scale();
  for (const auto& referee : affected) {
    for (size_t i : d.ReviewsOfReferee(referee)) {
      Review& r = reviews[i];
      r.overall_score = RoundClip(r.overall_score + noise(rng), s.overall_min,
                                  s.overall_max);
      for (const auto& a : s.aspects) {
        double& v = r.aspect_scores.at(a.name);
        v = RoundClip(v + noise(rng), a.min, a.max);
      }
    }
  }
  return Dataset(d.papers(), std::move(reviews), s);
}

Dataset Commensuration(const Dataset& d, const PerturbationConfig& cfg) {
  Rng rng = MakeRng(cfg.seed, "perturb-referees");
  const auto affected = SampleFraction(d.referees(), cfg.alpha, rng);
  const ScaleSpec& s = d.scale();
  double lo = 0.0, hi = 0.0;
  for (const auto& a : s.aspects) {
    auto it = cfg.weights.find(a.name);
    const double w = it == cfg.weights.end() ? 0.0 : it->second;
    lo += w * a.min;
    hi += w * a.max;
  }
  const double gain = (s.overall_max - s.overall_min) / (hi - lo);
  std::normal_distribution<double> noise(0.0, cfg.commensuration_noise);
  std::vector<Review> reviews = d.reviews();
  for (const auto& referee : affected) {
    for (size_t i : d.ReviewsOfReferee(referee)) {
      Review& r = reviews[i];
      double sum = 0.0;
      for (const auto& [name, w] : cfg.weights) sum += w * r.aspect_scores.at(name);
      if (cfg.commensuration_noise > 0.0) sum += noise(rng);
      r.overall_score = RoundClip(s.overall_min + gain * (sum - lo),
                                  s.overall_min, s.overall_max);
    }
  }
  return Dataset(d.papers(), std::move(reviews), s);
}

Dataset Subsample(const Dataset& d, const PerturbationConfig& cfg) {
  const auto& all = d.reviews();
  const auto target = static_cast<size_t>(
      std::llround(cfg.alpha * static_cast<double>(all.size())));
  std::vector<size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = MakeRng(cfg.seed, "perturb-reviews");
  std::shuffle(order.begin(), order.end(), rng);

  std::map<std::string, size_t> remaining;
  for (const auto& r : all) ++remaining[r.paper_id];
  std::vector<char> keep(all.size(), 1);
  size_t removed = 0;
  for (size_t i : order) {
    if (removed == target) break;
    size_t& left = remaining[all[i].paper_id];
    if (left <= 1) continue;
    --left;
    keep[i] = 0;
    ++removed;
  }
  std::vector<Review> reviews;
  reviews.reserve(all.size() - removed);
  for (size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) reviews.push_back(all[i]);
  }
  return Dataset(d.papers(), std::move(reviews), d.scale());
}

}  // namespace

std::string_view PerturbationKindName(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kRefereeNoise:
      return "referee-noise";
    case PerturbationKind::kCommensuration:
      return "commensuration";
    case PerturbationKind::kReviewSubsample:
      return "review-subsample";
  }
  return "?";
}

PerturbationKind ParsePerturbationKind(std::string_view name) {
  for (auto k : {PerturbationKind::kRefereeNoise,
                 PerturbationKind::kCommensuration,
                 PerturbationKind::kReviewSubsample}) {
    if (PerturbationKindName(k) == name) return k;
  }
  throw ConfigError("unknown perturbation kind '" + std::string(name) + "'");
}

void PerturbationConfig::Validate(const ScaleSpec& scale) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("perturbation alpha must lie in (0, 1)");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("perturbation sigma must be non-negative");
  }
  if (kind != PerturbationKind::kCommensuration) return;
  if (!(commensuration_noise >= 0.0)) {
    throw ConfigError("commensuration noise must be non-negative");
  }
  if (weights.empty()) throw ConfigError("commensuration needs aspect weights");
  double total = 0.0;
  for (const auto& [name, w] : weights) {
    RequireAspect(scale, name);
    if (!(w >= 0.0)) {
      throw ConfigError("weight of aspect '" + name + "' is negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("commensuration weights must sum to 1");
  }
}

nlohmann::json PerturbationConfig::ToJson() const {
  nlohmann::json j = {{"kind", PerturbationKindName(kind)},
                      {"name", name},
                      {"sigma", sigma},
                      {"alpha", alpha},
                      {"seed", seed}};
  if (kind == PerturbationKind::kCommensuration) {
    j["weights"] = weights;
    j["commensuration_noise"] = commensuration_noise;
  }
  return j;
}

PerturbationConfig PerturbationConfig::FromJson(const nlohmann::json& j) {
  PerturbationConfig c;
  try {
    c.kind = ParsePerturbationKind(j.at("kind").get<std::string>());
    c.name = j.value("name", std::string(PerturbationKindName(c.kind)));
    c.sigma = j.value("sigma", c.sigma);
    c.alpha = j.value("alpha", c.alpha);
    c.seed = j.value("seed", c.seed);
    c.commensuration_noise =
        j.value("commensuration_noise", c.commensuration_noise);
    if (j.contains("weights")) {
      c.weights = j.at("weights").get<std::map<std::string, double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("perturbation config: ") + e.what());
  }
  return c;
}

PerturbationConfig PerturbationConfig::RefereeNoise(double sigma, double alpha,
                                                    uint64_t seed) {
  PerturbationConfig c;
  c.kind = PerturbationKind::kRefereeNoise;
  c.sigma = sigma;
  c.alpha = alpha;
  c.seed = seed;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "noise-s%g-a%g", sigma, alpha);
  c.name = buf;
  return c;
}

PerturbationConfig PerturbationConfig::ReviewSubsample(double alpha,
                                                       uint64_t seed) {
  PerturbationConfig c;
  c.kind = PerturbationKind::kReviewSubsample;
  c.alpha = alpha;
  c.seed = seed;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "subsample-a%g", alpha);
  c.name = buf;
  return c;
}

PerturbationConfig PerturbationConfig::CommEq(const ScaleSpec& scale,
                                              double alpha, uint64_t seed) {
  PerturbationConfig c;
  c.kind = PerturbationKind::kCommensuration;
  c.name = "comm-eq";
  c.alpha = alpha;
  c.seed = seed;
  c.weights = UniformWeights(scale, {});
  return c;
}

PerturbationConfig PerturbationConfig::CommRead(const ScaleSpec& scale,
                                                double alpha, uint64_t seed,
                                                double readability_weight) {
  PerturbationConfig c = CommEq(scale, alpha, seed);
  c.name = "comm-read";
  c.weights = UniformWeights(
      scale, {{RequireAspect(scale, "readability"), readability_weight}});
  return c;
}

PerturbationConfig PerturbationConfig::CommCon(const ScaleSpec& scale,
                                               double alpha, uint64_t seed) {
  PerturbationConfig c = CommEq(scale, alpha, seed);
  c.name = "comm-con";
  c.weights = UniformWeights(scale, {{RequireAspect(scale, "originality"), 0.0}});
  return c;
}

Dataset Perturb(const Dataset& d, const PerturbationConfig& cfg) {
  cfg.Validate(d.scale());
  switch (cfg.kind) {
    case PerturbationKind::kRefereeNoise:
      return RefereeNoise(d, cfg);
    case PerturbationKind::kCommensuration:
      return Commensuration(d, cfg);
    case PerturbationKind::kReviewSubsample:
      return Subsample(d, cfg);
  }
  throw ConfigError("unknown perturbation kind");
}

}  // namespace peerrank
