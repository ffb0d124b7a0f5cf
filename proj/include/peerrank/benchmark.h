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

#ifndef PEERRANK_BENCHMARK_H_
#define PEERRANK_BENCHMARK_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "peerrank/baselines.h"
#include "peerrank/consensus.h"
#include "peerrank/dataset.h"
#include "peerrank/features.h"
#include "peerrank/gold.h"
#include "peerrank/gppl.h"
#include "peerrank/perturb.h"
#include "peerrank/preferences.h"
#include "peerrank/ranking.h"
#include "peerrank/text_features.h"

namespace peerrank {

enum class MethodKind { kGppl, kDcon, kNcon, kBaseline };

// One ranking method with its full configuration.
struct MethodSpec {
  std::string name;
  MethodKind kind = MethodKind::kBaseline;
  FeatureConfig features = FeatureConfig::AcceptOpt();
  GpplConfig gppl;
  ConsensusConfig consensus;
  BaselineSpec baseline;
  PairFilter pair_filter = PairFilter::kKeepAll;

  // "gppl", "dcon", "ncon", "mean-s-w", "median-s" or "major-s" with
  // default settings. Throws ConfigError.
  static MethodSpec Named(const std::string& method);
  nlohmann::json ToJson() const;
  static MethodSpec FromJson(const nlohmann::json& j);
};

// Resolves text features for a (possibly perturbed) dataset; may return
// null when none are available.
using TextFeatureProvider =
    std::function<std::shared_ptr<const TextFeatureTable>(const Dataset&)>;

// Applies one method. Consensus methods always drop tie pairs. The seed
// replaces the method's own seed.
RankingResult RunMethod(const MethodSpec& method, const Dataset& d,
                        const TextFeatureTable* text, uint64_t seed);

struct ScenarioSpec {
  std::string name = "original";
  // Absent for the unperturbed dataset.
  std::optional<PerturbationConfig> perturbation;

  nlohmann::json ToJson() const;
  static ScenarioSpec FromJson(const nlohmann::json& j);
};

struct BenchmarkConfig {
  std::vector<MethodSpec> methods;
  // The unperturbed scenario always runs first and need not be listed.
  std::vector<ScenarioSpec> scenarios;
  int runs = 5;
  uint64_t seed = 0;
  // Papers held out for development; metrics use the rest. 0 evaluates on
  // every labeled paper.
  double dev_fraction = 0.2;
  // 0 uses PEERRANK_THREADS, then the hardware concurrency.
  int threads = 0;

  void Validate() const;  // throws ConfigError
  nlohmann::json ToJson() const;
  static BenchmarkConfig FromJson(const nlohmann::json& j);
  static BenchmarkConfig Load(const std::string& path);
};

// Mean and sample standard deviation over the successful runs.
struct MetricSummary {
  std::vector<double> values;
  double mean = 0.0;
  double sd = 0.0;

  static MetricSummary Of(std::vector<double> values);
  nlohmann::json ToJson() const;
};

struct ReportCell {
  std::string scenario;
  std::string method;
  // auroc, prauc, rho_raw, rho_norm, rho_true and, for perturbed scenarios,
  // consistency = Spearman ρ between original and perturbed utilities.
  std::map<std::string, MetricSummary> metrics;
  std::vector<std::string> failures;
  // Per-run effectiveness, in run order; absent entries failed.
  std::vector<std::optional<Effectiveness>> runs;
};

struct EvaluationReport {
  int run_count = 0;
  std::string split_id;
  nlohmann::json config;
  // Scenario order as configured, methods sorted by name.
  std::vector<ReportCell> cells;

  const ReportCell* Find(const std::string& scenario,
                         const std::string& method) const;
  nlohmann::json ToJson() const;
  // Restores cells and metric summaries; per-run effectiveness is dropped.
  static EvaluationReport FromJson(const nlohmann::json& j);
  // One row per cell with mean and sd columns for each metric.
  void WriteTableCsv(std::ostream& out) const;
};

int ResolveThreadCount(int requested);

EvaluationReport RunBenchmark(const Dataset& d, const GoldStandard& gold,
                              const BenchmarkConfig& cfg,
                              const TextFeatureProvider& text = nullptr);

// Review sub-sampling scenarios named "removed-<fraction>".
std::vector<ScenarioSpec> EfficiencyScenarios(
    const std::vector<double>& fractions);

// Line chart of `metric` means against the fraction of removed reviews, one
// line per method, from a report over EfficiencyScenarios (plus the
// unperturbed scenario at fraction 0).
void WriteEfficiencySvg(const EvaluationReport& report,
                        const std::string& metric, std::ostream& out);

}  // namespace peerrank

#endif  // PEERRANK_BENCHMARK_H_
