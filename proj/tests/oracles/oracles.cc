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

#include "oracles/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace peerrank::oracle {
namespace {

constexpr double kPi = 3.14159265358979323846;

double LogPhi(double z) {
  if (z > -35.0) return std::log(0.5 * std::erfc(-z / std::sqrt(2.0)));
  // Leading terms of the asymptotic tail expansion.
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * kPi) +
         std::log(1.0 - 1.0 / z2 + 3.0 / (z2 * z2));
}

// φ(z) / Φ(z)
double InverseMills(double z) {
  const double log_pdf = -0.5 * z * z - 0.5 * std::log(2.0 * kPi);
  return std::exp(log_pdf - LogPhi(z));
}

double Matern32(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                double length_scale) {
  double r2 = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) r2 += (a(k) - b(k)) * (a(k) - b(k));
  const double s = std::sqrt(3.0) * std::sqrt(r2) / length_scale;
  return (1.0 + s) * std::exp(-s);
}

std::vector<double> RanksByCounting(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) less += 1.0;
      if (j != i && v[j] == v[i]) equal += 1.0;
    }
    r[i] = 1.0 + less + 0.5 * equal;
  }
  return r;
}

}  // namespace

int64_t Violations(const std::vector<PreferencePair>& pairs,
                   const std::vector<std::string>& order) {
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  int64_t v = 0;
  for (const auto& p : pairs) {
    if (p.relation != Relation::kStrict) continue;
    if (pos.at(p.better) > pos.at(p.worse)) ++v;
  }
  return v;
}

int64_t BruteForceKemeny(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& papers) {
  std::vector<std::string> perm = papers;
  std::sort(perm.begin(), perm.end());
  int64_t best = std::numeric_limits<int64_t>::max();
  do {
    best = std::min(best, Violations(pairs, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double PairCountAuroc(const std::vector<double>& scores,
                      const std::vector<bool>& labels) {
  double credit = 0.0, count = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      count += 1.0;
      if (scores[i] > scores[j]) credit += 1.0;
      if (scores[i] == scores[j]) credit += 0.5;
    }
  }
  return credit / count;
}

double ThresholdAveragePrecision(const std::vector<double>& scores,
                                 const std::vector<bool>& labels) {
  std::vector<double> thresholds = scores;
  std::sort(thresholds.rbegin(), thresholds.rend());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  double positives = 0.0;
  for (bool l : labels) positives += l;
  double ap = 0.0, last_recall = 0.0;
  for (double t : thresholds) {
    double tp = 0.0, fp = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] < t) continue;
      (labels[i] ? tp : fp) += 1.0;
    }
    const double recall = tp / positives;
    ap += (recall - last_recall) * (tp / (tp + fp));
    last_recall = recall;
  }
  return ap;
}

double SpearmanByDefinition(const std::vector<double>& x,
                            const std::vector<double>& y) {
  const auto rx = RanksByCounting(x);
  const auto ry = RanksByCounting(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double KendallTauB(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0.0, discordant = 0.0, tied_x = 0.0, tied_y = 0.0, n0 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = i + 1; j < x.size(); ++j) {
      n0 += 1.0;
      if (x[i] == x[j]) tied_x += 1.0;
      if (y[i] == y[j]) tied_y += 1.0;
      const double s = (x[i] - x[j]) * (y[i] - y[j]);
      if (s > 0) concordant += 1.0;
      if (s < 0) discordant += 1.0;
    }
  }
  return (concordant - discordant) / std::sqrt((n0 - tied_x) * (n0 - tied_y));
}

SampleStats TwoPassStats(const std::vector<double>& v) {
  SampleStats s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

double KrippendorffPairwise(const std::vector<std::vector<double>>& units) {
  // Pairable values and their frequencies.
  std::vector<double> all;
  for (const auto& u : units) {
    if (u.size() >= 2) all.insert(all.end(), u.begin(), u.end());
  }
  const double n = static_cast<double>(all.size());
  std::map<double, double> freq;
  for (double v : all) freq[v] += 1.0;
  auto delta = [&](double c, double k) {
    if (c == k) return 0.0;
    const double lo = std::min(c, k), hi = std::max(c, k);
    double between = 0.0;
    for (const auto& [v, f] : freq) {
      if (v >= lo && v <= hi) between += f;
    }
    const double d = between - 0.5 * (freq[lo] + freq[hi]);
    return d * d;
  };
  double observed = 0.0;
  for (const auto& u : units) {
    if (u.size() < 2) continue;
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      for (size_t j = 0; j < u.size(); ++j) {
        if (i != j) s += delta(u[i], u[j]);
      }
    }
    observed += s / static_cast<double>(u.size() - 1);
  }
  observed /= n;
  double expected = 0.0;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = 0; j < all.size(); ++j) {
      if (i != j) expected += delta(all[i], all[j]);
    }
  }
  expected /= n * (n - 1.0);
  return 1.0 - observed / expected;
}

Eigen::VectorXd DenseGpPreferenceMode(
    const Eigen::MatrixXd& x, const std::map<std::string, int>& index,
    const std::vector<PreferencePair>& pairs, double length_scale,
    double noise_scale) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = Matern32(x.row(i).transpose(), x.row(j).transpose(), length_scale);
    }
  }
  k.diagonal().array() += 1e-6;
  const Eigen::MatrixXd k_inv = k.inverse();

  struct Obs {
    int a, b;
    double w;
  };
  std::vector<Obs> obs;
  for (const auto& p : pairs) {
    const int a = index.at(p.better), b = index.at(p.worse);
    if (p.relation == Relation::kStrict) {
      obs.push_back({a, b, 1.0});
    } else {
      obs.push_back({a, b, 0.5});
      obs.push_back({b, a, 0.5});
    }
  }
  const double s = std::sqrt(2.0) * noise_scale;
  auto objective = [&](const Eigen::VectorXd& f) {
    double v = -0.5 * f.dot(k_inv * f);
    for (const auto& o : obs) v += o.w * LogPhi((f(o.a) - f(o.b)) / s);
    return v;
  };

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd grad = -k_inv * f;
    Eigen::MatrixXd neg_hess = k_inv;
    for (const auto& o : obs) {
      const double z = (f(o.a) - f(o.b)) / s;
      const double lambda = InverseMills(z);
      const double d1 = o.w * lambda / s;
      const double d2 = o.w * lambda * (lambda + z) / (s * s);
      grad(o.a) += d1;
      grad(o.b) -= d1;
      neg_hess(o.a, o.a) += d2;
      neg_hess(o.b, o.b) += d2;
      neg_hess(o.a, o.b) -= d2;
      neg_hess(o.b, o.a) -= d2;
    }
    Eigen::VectorXd step = neg_hess.ldlt().solve(grad);
    const double before = objective(f);
    double t = 1.0;
    while (objective(f + t * step) < before && t > 1e-8) t *= 0.5;
    f += t * step;
    if ((t * step).norm() < 1e-12) break;
  }
  return f;
}

}  // namespace peerrank::oracle
