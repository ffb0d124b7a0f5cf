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

#ifndef PEERRANK_KERNEL_H_
#define PEERRANK_KERNEL_H_

#include <span>
#include <string_view>

#include <Eigen/Core>

namespace peerrank {

enum class KernelType { kMatern32, kMatern52, kSquaredExponential };

std::string_view KernelName(KernelType type);
KernelType ParseKernelType(std::string_view name);  // throws ConfigError

// Stationary kernels with unit output variance: k(a, a) = 1.
struct KernelSpec {
  KernelType type = KernelType::kMatern32;
  double length_scale = 1.0;

  // Kernel value as a function of Euclidean distance.
  double FromDistance(double r) const;
};

// Throws ValidationError on dimension mismatch.
double KernelEval(const KernelSpec& k, std::span<const double> a,
                  std::span<const double> b);

// Cross-covariance between the rows of x and the rows of y.
Eigen::MatrixXd KernelMatrix(const KernelSpec& k, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXd& y);

}  // namespace peerrank

#endif  // PEERRANK_KERNEL_H_
