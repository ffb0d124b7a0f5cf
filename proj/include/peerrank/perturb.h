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

#ifndef PEERRANK_PERTURB_H_
#define PEERRANK_PERTURB_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "peerrank/dataset.h"

namespace peerrank {

enum class PerturbationKind { kRefereeNoise, kCommensuration, kReviewSubsample };

std::string_view PerturbationKindName(PerturbationKind kind);
PerturbationKind ParsePerturbationKind(std::string_view name);  // ConfigError

struct PerturbationConfig {
  PerturbationKind kind = PerturbationKind::kRefereeNoise;
  std::string name;
  // Score noise for referee-noise.
  double sigma = 0.0;
  // Fraction of referees (noise, commensuration) or reviews (subsample).
  double alpha = 0.3;
  // Aspect weights for commensuration.
  std::map<std::string, double> weights;
  double commensuration_noise = 0.5;
  uint64_t seed = 0;

  // Throws ConfigError; aspect names are checked against `scale`.
  void Validate(const ScaleSpec& scale) const;

  nlohmann::json ToJson() const;
  static PerturbationConfig FromJson(const nlohmann::json& j);

  static PerturbationConfig RefereeNoise(double sigma, double alpha,
                                         uint64_t seed = 0);
  static PerturbationConfig ReviewSubsample(double alpha, uint64_t seed = 0);
  // Uniform weights over every aspect.
  static PerturbationConfig CommEq(const ScaleSpec& scale, double alpha,
                                   uint64_t seed = 0);
  // `readability_weight` on readability, the rest shared uniformly.
  static PerturbationConfig CommRead(const ScaleSpec& scale, double alpha,
                                     uint64_t seed = 0,
                                     double readability_weight = 0.5);
  // Originality dropped, the rest uniform.
  static PerturbationConfig CommCon(const ScaleSpec& scale, double alpha,
                                    uint64_t seed = 0);
};

// Returns a perturbed copy. Referee-noise with sigma = 0 returns the input
// unchanged. Every emitted score is rounded and clipped to the scale.
Dataset Perturb(const Dataset& d, const PerturbationConfig& cfg);

}  // namespace peerrank

#endif  // PEERRANK_PERTURB_H_
