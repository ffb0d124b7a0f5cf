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

#include "peerrank/agreement.h"

#include <algorithm>

#include <Eigen/Dense>

namespace peerrank {

std::optional<double> KrippendorffOrdinal(
    const std::vector<std::vector<double>>& units) {
  std::vector<double> values;
  for (const auto& unit : units) {
    if (unit.size() >= 2) values.insert(values.end(), unit.begin(), unit.end());
  }
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const auto v = static_cast<Eigen::Index>(values.size());
  auto index_of = [&](double x) {
    return std::lower_bound(values.begin(), values.end(), x) - values.begin();
  };

  Eigen::MatrixXd coincidence = Eigen::MatrixXd::Zero(v, v);
  for (const auto& unit : units) {
    const size_t m = unit.size();
    if (m < 2) continue;
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        coincidence(index_of(unit[i]), index_of(unit[j])) +=
            1.0 / static_cast<double>(m - 1);
      }
    }
  }
  const Eigen::VectorXd marginal = coincidence.rowwise().sum();
  const double n = marginal.sum();

  // Ordinal distance: squared count of coincidences between two values,
  // counting the endpoints by half.
  Eigen::MatrixXd delta2 = Eigen::MatrixXd::Zero(v, v);
  for (Eigen::Index c = 0; c < v; ++c) {
    for (Eigen::Index k = c + 1; k < v; ++k) {
      const double span = marginal.segment(c, k - c + 1).sum() -
                          0.5 * (marginal(c) + marginal(k));
      delta2(c, k) = delta2(k, c) = span * span;
    }
  }
  const double observed = (coincidence.array() * delta2.array()).sum();
  const double expected =
      ((marginal * marginal.transpose()).array() * delta2.array()).sum();
  if (expected <= 0.0) return std::nullopt;
  return 1.0 - (n - 1.0) * observed / expected;
}

std::optional<double> OverallScoreAgreement(const Dataset& d) {
  std::vector<std::vector<double>> units(d.papers().size());
  for (size_t p = 0; p < d.papers().size(); ++p) {
    for (size_t i : d.ReviewsOfPaper(p)) {
      units[p].push_back(d.reviews()[i].overall_score);
    }
  }
  return KrippendorffOrdinal(units);
}

}  // namespace peerrank
