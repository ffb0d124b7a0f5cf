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

// Acceptance gate: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "oracles/oracles.h"
#include "peerrank/benchmark.h"
#include "peerrank/consensus.h"
#include "peerrank/features.h"
#include "peerrank/gold.h"
#include "peerrank/gppl.h"
#include "peerrank/metrics.h"
#include "peerrank/perturb.h"
#include "peerrank/preferences.h"
#include "peerrank/synthetic.h"

namespace peerrank {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(const std::string& name, double limit_seconds,
            const std::function<Outcome()>& check) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && elapsed >= limit_seconds) {
    o.pass = false;
    o.detail += "; over time limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %s [%.2fs", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), elapsed);
  if (limit_seconds > 0) std::printf(" / limit %.0fs", limit_seconds);
  std::printf("]\n");
  std::fflush(stdout);
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

SyntheticData SmallSynthetic(uint64_t seed, size_t papers, size_t referees,
                             size_t per_paper) {
  SyntheticConfig cfg;
  cfg.paper_count = papers;
  cfg.referee_count = referees;
  cfg.reviews_per_paper = per_paper;
  cfg.max_load = (papers * per_paper + referees - 1) / referees + 2;
  return GenerateSynthetic(cfg, seed);
}

std::vector<std::string> PaperIds(const Dataset& d) {
  std::vector<std::string> ids;
  for (const auto& p : d.papers()) ids.push_back(p.paper_id);
  return ids;
}

// Per-referee strictly increasing maps onto a wider integer scale.
Dataset MonotoneTransform(const Dataset& d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-50, 50), slope(0.5, 10), cubic(0, 2);
  std::map<std::string, std::array<double, 3>> maps;
  for (const auto& e : d.referees()) maps[e] = {offset(rng), slope(rng), cubic(rng)};
  ScaleSpec wide = d.scale();
  wide.overall_min = -1000;
  wide.overall_max = 1000;
  std::vector<Review> reviews = d.reviews();
  for (auto& r : reviews) {
    const auto& [a, b, c] = maps[r.referee_id];
    const double s = r.overall_score;
    r.overall_score = std::round(a + b * s + c * s * s * s);
  }
  return Dataset(d.papers(), reviews, wide);
}

Outcome PreferenceExtraction() {
  std::vector<SyntheticData> data;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    data.push_back(SmallSynthetic(seed, 20 + seed % 40, 10 + seed % 15, 2 + seed % 3));
  }
  std::vector<Dataset> transformed;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    transformed.push_back(MonotoneTransform(data[seed].dataset, seed));
  }
  const auto start = Clock::now();
  int count_ok = 0, invariant_ok = 0;
  for (size_t i = 0; i < data.size(); ++i) {
    const Dataset& d = data[i].dataset;
    size_t expected = 0;
    for (const auto& e : d.referees()) {
      const size_t k = d.ReviewsOfReferee(e).size();
      expected += k * (k - 1) / 2;
    }
    const auto pairs = ExtractPreferencePairs(d);
    count_ok += pairs.size() == expected;
    invariant_ok += pairs == ExtractPreferencePairs(transformed[i]);
  }
  const double t = std::chrono::duration<double>(Clock::now() - start).count();
  return {count_ok == 100 && invariant_ok == 100 && t < 1.0,
          Fmt("pair counts exact %d/100, monotone invariance %d/100, extraction %.3fs",
              count_ok, invariant_ok, t)};
}

std::vector<PreferencePair> StrictPairs(const Dataset& d) {
  return FilterPairs(ExtractPreferencePairs(d), PairFilter::kDropTies, d);
}

Outcome KemenyOracle() {
  int dcon_exact = 0, dcon_total = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = SmallSynthetic(1000 + seed, 4 + seed % 5, 4, 3);
    const auto pairs = StrictPairs(data.dataset);
    if (pairs.empty()) continue;
    ConsensusConfig cfg;
    cfg.time_budget_seconds = 1e9;
    const auto r = RankDcon(pairs, PaperIds(data.dataset), cfg);
    const auto best = oracle::BruteForceKemeny(pairs, ViolationMatrix(pairs).papers());
    ++dcon_total;
    dcon_exact += r.status == SearchStatus::kOptimal && r.violations == best;
  }
  int ncon_match = 0, ncon_better = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto data = SmallSynthetic(2000 + seed, 4 + seed % 5, 4, 3);
    const auto pairs = StrictPairs(data.dataset);
    const auto best = pairs.empty()
                          ? 0
                          : oracle::BruteForceKemeny(pairs, ViolationMatrix(pairs).papers());
    ConsensusConfig cfg;
    cfg.seed = seed;
    const auto r = pairs.empty() ? ConsensusResult{} : RankNcon(pairs, PaperIds(data.dataset), cfg);
    ncon_match += r.violations == best;
    ncon_better += r.violations < best;
  }
  return {dcon_total == 20 && dcon_exact == 20 && ncon_match >= 40 && ncon_better == 0,
          Fmt("DCON exact %d/%d; NCON optimal %d/50, better than optimum %d", dcon_exact,
              dcon_total, ncon_match, ncon_better)};
}

Outcome GpplDenseOracle() {
  double worst = 1.0;
  int ok = 0;
  std::string taus;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = SmallSynthetic(3000 + seed, 15 + seed % 16, 20, 3);
    const auto features =
        AssembleFeatures(data.dataset, FeatureConfig::ScoresOnly(), nullptr);
    const auto pairs = ExtractPreferencePairs(data.dataset);
    GpplConfig cfg;
    cfg.seed = seed;
    const auto model = FitGppl(features, pairs, cfg);
    std::map<std::string, int> index;
    for (size_t i = 0; i < features.size(); ++i) {
      index[features.paper_ids()[i]] = static_cast<int>(i);
    }
    const Eigen::VectorXd mode = oracle::DenseGpPreferenceMode(
        features.values(), index, pairs, cfg.kernel.length_scale, cfg.noise_scale);
    const double tau = *KendallTau(
        model.training_ranking().utility,
        std::vector<double>(mode.data(), mode.data() + mode.size()));
    worst = std::min(worst, tau);
    ok += tau >= 0.9;
    taus += Fmt("%s%.3f", taus.empty() ? "" : " ", tau);
  }
  return {ok == 10, Fmt("tau >= 0.9 on %d/10 (min %.3f): %s", ok, worst, taus.c_str())};
}

Outcome GradientCheck() {
  const auto data = SmallSynthetic(42, 5, 4, 3);
  const auto features =
      AssembleFeatures(data.dataset, FeatureConfig::ScoresOnly(), nullptr);
  const auto pairs = ExtractPreferencePairs(data.dataset);
  GpplConfig cfg;
  cfg.kernel.length_scale = 5.0;
  const GpplProblem problem = PrepareGpplProblem(features, pairs, cfg);
  const ElboObjective& obj = problem.objective;
  const Eigen::Index m = obj.dimension();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  Eigen::VectorXd mean(m);
  for (Eigen::Index i = 0; i < m; ++i) mean(i) = n01(rng);
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = 0.3 * n01(rng);
  const Eigen::MatrixXd cov = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(m, m);
  const double h = 1e-5;

  const Eigen::VectorXd analytic = obj.MeanGradient(mean, cov);
  Eigen::VectorXd numeric(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd up = mean, down = mean;
    up(i) += h;
    down(i) -= h;
    numeric(i) = (obj.Value(up, cov) - obj.Value(down, cov)) / (2 * h);
  }
  const double mean_err = (analytic - numeric).norm() / numeric.norm();

  std::vector<size_t> all(obj.size());
  std::iota(all.begin(), all.end(), 0);
  const auto g = obj.Gradients(obj.ObservationMoments(mean, cov), all, 1.0);
  const Eigen::MatrixXd gc =
      g.g_cov + 0.5 * (cov.inverse() - Eigen::MatrixXd::Identity(m, m));
  double err = 0, ref = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      Eigen::MatrixXd up = cov, down = cov;
      up(i, j) += h;
      down(i, j) -= h;
      if (i != j) {
        up(j, i) += h;
        down(j, i) -= h;
      }
      const double fd = (obj.Value(mean, up) - obj.Value(mean, down)) / (2 * h);
      const double an = i == j ? gc(i, i) : 2 * gc(i, j);
      err += (fd - an) * (fd - an);
      ref += fd * fd;
    }
  }
  const double cov_err = std::sqrt(err / ref);
  return {m == 5 && mean_err < 1e-4 && cov_err < 1e-4,
          Fmt("%ld inducing points; relative error mean %.2e, covariance %.2e",
              static_cast<long>(m), mean_err, cov_err)};
}

Outcome MetricOracles() {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  int instances = 0;
  for (int n = 2; n <= 50; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      std::uniform_int_distribution<int> level(1, rep % 2 ? 4 : 1000);
      std::bernoulli_distribution coin(0.3);
      std::vector<double> x, y;
      std::vector<bool> labels;
      for (int i = 0; i < n; ++i) {
        x.push_back(level(rng));
        y.push_back(level(rng) + 0.5 * x.back());
        labels.push_back(coin(rng));
      }
      labels[0] = true;
      labels[1] = false;
      auto buf = std::make_unique<bool[]>(n);
      for (int i = 0; i < n; ++i) buf[i] = labels[i];
      const std::span<const bool> lab(buf.get(), n);
      worst = std::max(worst, std::abs(*Auroc(x, lab) - oracle::PairCountAuroc(x, labels)));
      worst = std::max(
          worst, std::abs(*Prauc(x, lab) - oracle::ThresholdAveragePrecision(x, labels)));
      if (auto s = Spearman(x, y)) {
        worst = std::max(worst, std::abs(*s - oracle::SpearmanByDefinition(x, y)));
      }
      ++instances;
    }
  }
  return {worst <= 1e-12,
          Fmt("%d instances with 2..50 papers, max deviation %.2e", instances, worst)};
}

// Shared synthetic benchmark for the effectiveness, fairness and efficiency
// criteria: five seeded 150-paper datasets.
struct SeedResult {
  EvaluationReport report;
  Dataset subsampled;
  size_t unpaired_after_subsample = 0;
  bool gppl_total_after_subsample = false;
};

constexpr double kNoiseSigma = 1.0;
constexpr double kNoiseAlpha = 0.6;
constexpr double kRemoved = 0.6;
const std::vector<std::string> kEfficiencyMethods = {"gppl", "major-s", "mean-s-w",
                                                     "median-s", "ncon"};

std::vector<SeedResult> RunSyntheticBenchmarks() {
  std::vector<SeedResult> out;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const SyntheticConfig sc;  // 150 papers, bias spread 1.0
    const auto data = GenerateSynthetic(sc, seed);
    const auto gold = GoldStandard::FromDataset(data.dataset, data.true_utility);
    BenchmarkConfig cfg;
    for (const auto& name : kEfficiencyMethods) cfg.methods.push_back(MethodSpec::Named(name));
    ScenarioSpec noise;
    noise.name = "noise";
    noise.perturbation = PerturbationConfig::RefereeNoise(kNoiseSigma, kNoiseAlpha);
    cfg.scenarios = {noise, EfficiencyScenarios({kRemoved}).front()};
    cfg.runs = 1;
    cfg.seed = seed;
    const auto truth = data.true_utility;
    auto provider = [truth, seed](const Dataset& d) {
      return std::make_shared<const TextFeatureTable>(
          SyntheticTextFeatures(d, truth, {}, seed));
    };
    SeedResult r{RunBenchmark(data.dataset, gold, cfg, provider), data.dataset};

    auto pc = PerturbationConfig::ReviewSubsample(kRemoved, seed);
    r.subsampled = Perturb(data.dataset, pc);
    std::set<std::string> paired;
    const auto pairs = ExtractPreferencePairs(r.subsampled);
    for (const auto& p : pairs) {
      paired.insert(p.better);
      paired.insert(p.worse);
    }
    r.unpaired_after_subsample = r.subsampled.papers().size() - paired.size();
    const auto text = SyntheticTextFeatures(r.subsampled, truth, {}, seed);
    const auto ranking =
        RunMethod(MethodSpec::Named("gppl"), r.subsampled, &text, seed);
    bool total = ranking.paper_ids.size() == r.subsampled.papers().size();
    for (double u : ranking.utility) total &= std::isfinite(u);
    r.gppl_total_after_subsample = total;
    out.push_back(std::move(r));
  }
  return out;
}

double Metric(const EvaluationReport& r, const std::string& scenario,
              const std::string& method, const std::string& metric) {
  const ReportCell* c = r.Find(scenario, method);
  if (c == nullptr || !c->metrics.contains(metric)) return std::nan("");
  return c->metrics.at(metric).mean;
}

Outcome Table2Direction(const std::vector<SeedResult>& results) {
  int wins = 0;
  double gppl_auroc = 0, mean_auroc = 0;
  std::string detail;
  for (const auto& r : results) {
    const double g_rho = Metric(r.report, "original", "gppl", "rho_true");
    const double m_rho = Metric(r.report, "original", "mean-s-w", "rho_true");
    const double g_auc = Metric(r.report, "original", "gppl", "auroc");
    const double m_auc = Metric(r.report, "original", "mean-s-w", "auroc");
    wins += g_rho > m_rho;
    gppl_auroc += g_auc / results.size();
    mean_auroc += m_auc / results.size();
    detail += Fmt(" [rho %.3f vs %.3f, auroc %.3f vs %.3f]", g_rho, m_rho, g_auc, m_auc);
  }
  const double gap = std::abs(gppl_auroc - mean_auroc);
  return {wins >= 4 && gap <= 0.05,
          Fmt("gppl rho_true > mean-s-w in %d/5; mean |dAUROC| %.4f (gppl %.4f, "
              "mean-s-w %.4f);",
              wins, gap, gppl_auroc, mean_auroc) +
              detail};
}

Outcome Fairness(const std::vector<SeedResult>& results) {
  int no_larger = 0;
  std::map<std::string, double> consistency;
  std::string detail;
  for (const auto& r : results) {
    const double g_drop = Metric(r.report, "original", "gppl", "rho_true") -
                          Metric(r.report, "noise", "gppl", "rho_true");
    const double m_drop = Metric(r.report, "original", "mean-s-w", "rho_true") -
                          Metric(r.report, "noise", "mean-s-w", "rho_true");
    no_larger += g_drop <= m_drop;
    detail += Fmt(" [drop %.3f vs %.3f]", g_drop, m_drop);
    for (const char* m : {"gppl", "mean-s-w", "median-s", "major-s"}) {
      consistency[m] += Metric(r.report, "noise", m, "consistency") / results.size();
    }
  }
  bool consistent = true;
  std::string cons;
  for (const auto& [m, v] : consistency) {
    consistent &= v > 0.9;
    cons += Fmt(" %s %.3f", m.c_str(), v);
  }
  return {no_larger >= 4 && consistent,
          Fmt("gppl drop <= mean-s-w drop in %d/5; mean consistency:", no_larger) +
              cons + ";" + detail};
}

Outcome Efficiency(const std::vector<SeedResult>& results) {
  bool coverage = true, total = true;
  size_t unpaired = 0;
  for (const auto& r : results) {
    for (const auto& p : r.subsampled.papers()) {
      coverage &= !r.subsampled.ReviewsOfPaper(p.paper_id).empty();
    }
    total &= r.gppl_total_after_subsample;
    unpaired += r.unpaired_after_subsample;
  }
  bool drops = true;
  std::string detail;
  const std::string removed = EfficiencyScenarios({kRemoved}).front().name;
  for (const auto& m : kEfficiencyMethods) {
    for (const char* metric : {"auroc", "rho_true"}) {
      double full = 0, sub = 0;
      for (const auto& r : results) {
        full += Metric(r.report, "original", m, metric) / results.size();
        sub += Metric(r.report, removed, m, metric) / results.size();
      }
      drops &= sub < full;
      detail += Fmt(" %s:%s %.3f->%.3f", m.c_str(), metric, full, sub);
    }
  }
  return {coverage && total && drops,
          Fmt("every paper keeps a review: %s; gppl total ranking: %s (%zu papers "
              "outside all pairs); all metrics drop: %s;",
              coverage ? "yes" : "no", total ? "yes" : "no", unpaired,
              drops ? "yes" : "no") +
              detail};
}

Outcome PerturbationContracts() {
  SyntheticConfig cfg;
  cfg.paper_count = 2500;
  cfg.referee_count = 1000;
  cfg.reviews_per_paper = 4;
  cfg.max_load = 12;
  const Dataset d = GenerateSynthetic(cfg, 9).dataset;
  size_t reviews = 0, out_of_scale = 0;
  auto scan = [&](const Dataset& p) {
    const ScaleSpec& s = p.scale();
    for (const auto& r : p.reviews()) {
      ++reviews;
      out_of_scale += r.overall_score < s.overall_min || r.overall_score > s.overall_max;
      for (const auto& a : s.aspects) {
        const double v = r.aspect_scores.at(a.name);
        out_of_scale += v < a.min || v > a.max;
      }
    }
  };
  scan(Perturb(d, PerturbationConfig::RefereeNoise(3.0, 0.6, 1)));
  scan(Perturb(d, PerturbationConfig::CommRead(d.scale(), 0.6, 2)));
  bool identity = true;
  for (double alpha : {0.3, 0.6}) {
    identity &= Perturb(d, PerturbationConfig::RefereeNoise(0.0, alpha, 3)) == d;
  }
  return {reviews >= 10000 && out_of_scale == 0 && identity,
          Fmt("%zu perturbed reviews, %zu out-of-scale scores; sigma=0 identity: %s",
              reviews, out_of_scale, identity ? "yes" : "no")};
}

}  // namespace
}  // namespace peerrank

int main() {
  using namespace peerrank;
  spdlog::set_level(spdlog::level::err);
  Report("preference-extraction", 60, PreferenceExtraction);
  Report("kemeny-oracle", 120, KemenyOracle);
  Report("gppl-dense-oracle", 300, GpplDenseOracle);
  Report("gradient-check", 0, GradientCheck);
  Report("metric-oracles", 0, MetricOracles);

  std::vector<SeedResult> results;
  Report("table2-directional", 600, [&] {
    results = RunSyntheticBenchmarks();
    return Table2Direction(results);
  });
  Report("fairness", 0, [&] { return Fairness(results); });
  Report("efficiency", 0, [&] { return Efficiency(results); });
  Report("perturbation-contracts", 0, PerturbationContracts);
  std::printf("%d criterion/criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
