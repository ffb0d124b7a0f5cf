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

#include "peerrank/kernel.h"

#include <cmath>
#include <string>

#include "peerrank/errors.h"

namespace peerrank {

std::string_view KernelName(KernelType type) {
  switch (type) {
    case KernelType::kMatern32:
      return "matern32";
    case KernelType::kMatern52:
      return "matern52";
    case KernelType::kSquaredExponential:
      return "squared-exponential";
  }
  return "unknown";
}

KernelType ParseKernelType(std::string_view name) {
  for (KernelType t : {KernelType::kMatern32, KernelType::kMatern52,
                       KernelType::kSquaredExponential}) {
    if (KernelName(t) == name) return t;
  }
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

double KernelSpec::FromDistance(double r) const {
  const double s = r / length_scale;
  switch (type) {
    case KernelType::kMatern32: {
      const double a = std::sqrt(3.0) * s;
      return (1.0 + a) * std::exp(-a);
    }
    case KernelType::kMatern52: {
      const double a = std::sqrt(5.0) * s;
      return (1.0 + a + a * a / 3.0) * std::exp(-a);
    }
    case KernelType::kSquaredExponential:
      return std::exp(-0.5 * s * s);
  }
  return 0.0;
}

double KernelEval(const KernelSpec& k, std::span<const double> a,
                  std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("kernel inputs differ in dimension (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  double ss = 0.0;
  for (size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return k.FromDistance(std::sqrt(ss));
}

Eigen::MatrixXd KernelMatrix(const KernelSpec& k, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols()) {
    throw ValidationError("kernel inputs differ in dimension");
  }
  Eigen::MatrixXd out(x.rows(), y.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.rows(); ++j) {
      out(i, j) = k.FromDistance((x.row(i) - y.row(j)).norm());
    }
  }
  return out;
}

}  // namespace peerrank
