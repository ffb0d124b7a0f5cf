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

// Independent reference implementations used to check the library. They
// follow textbook definitions directly and favour clarity over speed.

#ifndef PEERRANK_TESTS_ORACLES_ORACLES_H_
#define PEERRANK_TESTS_ORACLES_ORACLES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "peerrank/preferences.h"

namespace peerrank::oracle {

// Minimum number of violated strict pairs over every permutation of
// `papers`.
int64_t BruteForceKemeny(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& papers);

// Violated strict pairs for a given order (best first).
int64_t Violations(const std::vector<PreferencePair>& pairs,
                   const std::vector<std::string>& order);

// Fraction of (positive, negative) pairs where the positive scores higher,
// ties counting one half.
double PairCountAuroc(const std::vector<double>& scores,
                      const std::vector<bool>& labels);

// Σ (R_t - R_{t-1}) P_t over every distinct score threshold t.
double ThresholdAveragePrecision(const std::vector<double>& scores,
                                 const std::vector<bool>& labels);

// Spearman correlation via explicit average ranks.
double SpearmanByDefinition(const std::vector<double>& x,
                            const std::vector<double>& y);

double KendallTauB(const std::vector<double>& x, const std::vector<double>& y);

struct SampleStats {
  double mean = 0.0;
  double sd = 0.0;
};
SampleStats TwoPassStats(const std::vector<double>& v);

// Krippendorff's alpha (ordinal) from pairwise value comparisons.
double KrippendorffPairwise(const std::vector<std::vector<double>>& units);

// Mode of the exact dense GP-preference posterior (Laplace / Newton) with a
// Matérn-3/2 kernel over the rows of `x`. `index` maps paper ids to rows.
Eigen::VectorXd DenseGpPreferenceMode(
    const Eigen::MatrixXd& x, const std::map<std::string, int>& index,
    const std::vector<PreferencePair>& pairs, double length_scale,
    double noise_scale);

}  // namespace peerrank::oracle

#endif  // PEERRANK_TESTS_ORACLES_ORACLES_H_
