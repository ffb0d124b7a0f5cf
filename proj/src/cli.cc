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

#include "peerrank/cli.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "peerrank/agreement.h"
#include "peerrank/benchmark.h"
#include "peerrank/errors.h"
#include "peerrank/gold.h"
#include "peerrank/perturb.h"
#include "peerrank/preferences.h"
#include "peerrank/synthetic.h"

#ifndef PEERRANK_VERSION
#define PEERRANK_VERSION "0.0.0"
#endif

namespace peerrank {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
}

std::ofstream OpenOutput(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  return out;
}

// Bookkeeping for one command invocation.
class Run {
 public:
  Run(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)),
        argv_(std::move(argv)),
        started_(UtcNow()) {}

  void Input(const std::string& path) {
    if (!path.empty()) inputs_[path] = Sha256File(path);
  }
  void Output(const std::string& path) { outputs_.push_back(path); }
  void Seed(uint64_t seed) { seed_ = seed; }
  json& config() { return config_; }

  // Writes <output>.manifest.json beside every output file.
  void WriteManifests() const {
    json outputs = json::object();
    for (const auto& o : outputs_) outputs[o] = Sha256File(o);
    json m = {{"command", command_},
              {"argv", argv_},
              {"tool_version", PEERRANK_VERSION},
              {"config", config_},
              {"inputs", inputs_},
              {"outputs", outputs},
              {"started_at", started_},
              {"finished_at", UtcNow()}};
    m["seed"] = seed_ ? json(*seed_) : json(nullptr);
    for (const auto& o : outputs_) {
      std::ofstream out = OpenOutput(o + ".manifest.json");
      out << m.dump(2) << '\n';
    }
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string started_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
  std::optional<uint64_t> seed_;
  json config_ = json::object();
};

struct DatasetArgs {
  std::string reviews;
  std::string papers;
  std::string scale;

  void Register(CLI::App* app) {
    app->add_option("--reviews", reviews, "reviews file (JSON lines)")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--papers", papers, "papers file (JSON lines)")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--scale", scale, "scale spec JSON (default: ACL-2018)")
        ->check(CLI::ExistingFile);
  }

  Dataset Load(Run& run) const {
    run.Input(reviews);
    run.Input(papers);
    run.Input(scale);
    const ScaleSpec s = scale.empty() ? ScaleSpec::Acl2018() : ScaleSpec::Load(scale);
    run.config()["scale"] = s.ToJson();
    return LoadDataset(reviews, papers, s);
  }
};

std::map<std::string, double> LoadTruth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::map<std::string, double> truth;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (n == 1 || line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(path, n, "expected two columns");
    try {
      truth[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(path, n, "malformed utility");
    }
  }
  return truth;
}

void WriteTruth(const std::map<std::string, double>& truth, std::ostream& out) {
  out << "paper_id,true_utility\n";
  char buf[64];
  for (const auto& [id, u] : truth) {
    std::snprintf(buf, sizeof(buf), "%.17g", u);
    out << id << ',' << buf << '\n';
  }
}

void PrintStats(const Dataset& d, std::optional<double> alpha, std::ostream& out) {
  const DatasetStats s = d.Stats();
  char buf[128];
  out << "papers                " << s.papers << '\n'
      << "reviews               " << s.reviews << '\n'
      << "referees              " << s.referees << '\n';
  std::snprintf(buf, sizeof(buf), "reviews per paper     %.2f +- %.2f\n",
                s.reviews_per_paper_mean, s.reviews_per_paper_sd);
  out << buf;
  std::snprintf(buf, sizeof(buf), "reviews per referee   %.2f +- %.2f\n",
                s.reviews_per_referee_mean, s.reviews_per_referee_sd);
  out << buf;
  if (alpha) {
    std::snprintf(buf, sizeof(buf), "krippendorff alpha    %.4f (ordinal, overall)\n",
                  *alpha);
    out << buf;
  } else {
    out << "krippendorff alpha    undefined\n";
  }
}

int Dispatch(CLI::App& app, const std::vector<std::string>& argv) {
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off");
  app.require_subcommand(1);

  // ingest
  DatasetArgs ingest_data;
  std::string ingest_out;
  CLI::App* ingest = app.add_subcommand("ingest", "validate a dataset and print statistics");
  ingest_data.Register(ingest);
  ingest->add_option("--out", ingest_out, "write the summary as JSON");

  // pairs
  DatasetArgs pairs_data;
  std::string pairs_filter = "keep-all", pairs_out;
  CLI::App* pairs = app.add_subcommand("pairs", "export preference pairs");
  pairs_data.Register(pairs);
  pairs->add_option("--filter", pairs_filter, "keep-all|drop-ties|drop-cross-track");
  pairs->add_option("--out", pairs_out, "pairs CSV")->required();

  // rank
  DatasetArgs rank_data;
  std::string rank_method = "gppl", rank_features, rank_feature_config = "accept-opt",
              rank_method_config, rank_out, rank_model_out;
  uint64_t rank_seed = 0;
  CLI::App* rank = app.add_subcommand("rank", "rank papers with one method");
  rank_data.Register(rank);
  rank->add_option("--method", rank_method,
                   "gppl|dcon|ncon|mean-s-w|median-s|major-s");
  rank->add_option("--feature-config", rank_feature_config,
                   "accept-opt|cite-opt|scores-only|custom:<file>");
  rank->add_option("--features", rank_features, "text-feature CSV");
  rank->add_option("--method-config", rank_method_config,
                   "JSON method spec merged over the defaults");
  rank->add_option("--seed", rank_seed);
  rank->add_option("--out", rank_out, "ranking CSV")->required();
  rank->add_option("--model-out", rank_model_out, "save the fitted GPPL model");

  // synth
  std::string synth_config, synth_out;
  uint64_t synth_seed = 0;
  int synth_dim = 8;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--config", synth_config, "generator JSON")->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_seed);
  synth->add_option("--text-dim", synth_dim, "embedding dimension per section");
  synth->add_option("--out", synth_out, "output directory")->required();

  // perturb
  DatasetArgs perturb_data;
  std::string perturb_config, perturb_kind, perturb_out;
  double perturb_sigma = 1.0, perturb_alpha = 0.3;
  std::optional<uint64_t> perturb_seed;
  CLI::App* perturb = app.add_subcommand("perturb", "apply a noise, bias or sub-sampling scenario");
  perturb_data.Register(perturb);
  perturb->add_option("--perturbation", perturb_config, "perturbation JSON")
      ->check(CLI::ExistingFile);
  perturb->add_option("--kind", perturb_kind,
                      "referee-noise|review-subsample|comm-eq|comm-read|comm-con");
  perturb->add_option("--sigma", perturb_sigma);
  perturb->add_option("--alpha", perturb_alpha);
  perturb->add_option("--seed", perturb_seed);
  perturb->add_option("--out", perturb_out, "output directory")->required();

  // benchmark
  DatasetArgs bench_data;
  std::string bench_scenario, bench_features, bench_truth, bench_out, bench_table;
  std::optional<uint64_t> bench_seed;
  std::optional<int> bench_runs, bench_threads;
  CLI::App* bench = app.add_subcommand("benchmark", "run an evaluation scenario");
  bench_data.Register(bench);
  bench->add_option("--scenario", bench_scenario, "scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--features", bench_features, "text-feature CSV")
      ->check(CLI::ExistingFile);
  bench->add_option("--truth", bench_truth, "true utilities CSV (synthetic data)")
      ->check(CLI::ExistingFile);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--runs", bench_runs);
  bench->add_option("--threads", bench_threads);
  bench->add_option("--out", bench_out, "report JSON")->required();
  bench->add_option("--table", bench_table, "report table CSV");

  // plot-efficiency
  std::string plot_report, plot_metric = "auroc", plot_out;
  CLI::App* plot = app.add_subcommand("plot-efficiency", "plot a metric against removed reviews");
  plot->add_option("--report", plot_report, "report JSON")->required()->check(CLI::ExistingFile);
  plot->add_option("--metric", plot_metric);
  plot->add_option("--out", plot_out, "SVG file")->required();

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));
  std::vector<std::string> args(argv.begin() + 1, argv.end());

  if (*ingest) {
    Run run("ingest", args);
    const Dataset d = ingest_data.Load(run);
    const auto alpha = OverallScoreAgreement(d);
    PrintStats(d, alpha, std::cout);
    if (!ingest_out.empty()) {
      json summary = d.Stats().ToJson();
      summary["krippendorff_alpha"] = alpha ? json(*alpha) : json(nullptr);
      OpenOutput(ingest_out) << summary.dump(2) << '\n';
      run.Output(ingest_out);
      run.WriteManifests();
    }
    return kExitOk;
  }

  if (*pairs) {
    Run run("pairs", args);
    const Dataset d = pairs_data.Load(run);
    const PairFilter filter = ParsePairFilter(pairs_filter);
    run.config()["filter"] = pairs_filter;
    const auto p = FilterPairs(ExtractPreferencePairs(d), filter, d);
    {
      std::ofstream out = OpenOutput(pairs_out);
      WritePairsCsv(p, out);
    }
    spdlog::info("pairs: {} ({} strict)", p.size(), CountStrict(p));
    run.Output(pairs_out);
    run.WriteManifests();
    return kExitOk;
  }

  if (*rank) {
    Run run("rank", args);
    const Dataset d = rank_data.Load(run);
    json spec = {{"method", rank_method}, {"feature_config", rank_feature_config}};
    if (!rank_method_config.empty()) {
      run.Input(rank_method_config);
      spec.update(ReadJsonFile(rank_method_config));
    }
    const MethodSpec method = MethodSpec::FromJson(spec);
    std::optional<TextFeatureTable> text;
    if (!rank_features.empty()) {
      run.Input(rank_features);
      text = TextFeatureTable::Load(rank_features);
    } else if (method.kind == MethodKind::kGppl && method.features.NeedsText()) {
      throw CoverageError("feature config '" + rank_feature_config +
                          "' needs a text-feature file (--features)");
    }
    run.config()["method"] = method.ToJson();
    run.Seed(rank_seed);
    RankingResult result;
    if (method.kind == MethodKind::kGppl && !rank_model_out.empty()) {
      const FeatureSet features =
          AssembleFeatures(d, method.features, text ? &*text : nullptr);
      GpplConfig cfg = method.gppl;
      cfg.seed = rank_seed;
      const GpplModel model = FitGppl(
          features, FilterPairs(ExtractPreferencePairs(d), method.pair_filter, d), cfg);
      result = model.training_ranking();
      result.method = method.name;
      const fs::path model_path(rank_model_out);
      if (model_path.has_parent_path()) fs::create_directories(model_path.parent_path());
      model.Save(rank_model_out);
      run.Output(rank_model_out);
    } else {
      result = RunMethod(method, d, text ? &*text : nullptr, rank_seed);
    }
    {
      std::ofstream out = OpenOutput(rank_out);
      WriteRankingCsv(result, out);
    }
    run.Output(rank_out);
    run.WriteManifests();
    spdlog::info("rank: {} papers ranked by {}", result.paper_ids.size(), method.name);
    return kExitOk;
  }

  if (*synth) {
    Run run("synth", args);
    SyntheticConfig cfg;
    if (!synth_config.empty()) {
      run.Input(synth_config);
      cfg = SyntheticConfig::FromJson(ReadJsonFile(synth_config));
    }
    run.config()["generator"] = cfg.ToJson();
    run.config()["text_dimension"] = synth_dim;
    run.Seed(synth_seed);
    const SyntheticData data = GenerateSynthetic(cfg, synth_seed);
    SyntheticTextConfig text_cfg;
    text_cfg.dimension = synth_dim;
    const TextFeatureTable text =
        SyntheticTextFeatures(data.dataset, data.true_utility, text_cfg, synth_seed);
    const fs::path dir(synth_out);
    fs::create_directories(dir);
    const std::string reviews = (dir / "reviews.jsonl").string();
    const std::string papers = (dir / "papers.jsonl").string();
    const std::string scale = (dir / "scale.json").string();
    const std::string truth = (dir / "truth.csv").string();
    const std::string features = (dir / "text_features.csv").string();
    WriteDataset(data.dataset, reviews, papers);
    OpenOutput(scale) << cfg.scale.ToJson().dump(2) << '\n';
    {
      std::ofstream out = OpenOutput(truth);
      WriteTruth(data.true_utility, out);
    }
    text.Save(features);
    for (const auto& p : {reviews, papers, scale, truth, features}) run.Output(p);
    run.WriteManifests();
    PrintStats(data.dataset, OverallScoreAgreement(data.dataset), std::cout);
    return kExitOk;
  }

  if (*perturb) {
    Run run("perturb", args);
    const Dataset d = perturb_data.Load(run);
    PerturbationConfig cfg;
    if (!perturb_config.empty()) {
      run.Input(perturb_config);
      cfg = PerturbationConfig::FromJson(ReadJsonFile(perturb_config));
    } else if (perturb_kind == "referee-noise") {
      cfg = PerturbationConfig::RefereeNoise(perturb_sigma, perturb_alpha);
    } else if (perturb_kind == "review-subsample") {
      cfg = PerturbationConfig::ReviewSubsample(perturb_alpha);
    } else if (perturb_kind == "comm-eq") {
      cfg = PerturbationConfig::CommEq(d.scale(), perturb_alpha);
    } else if (perturb_kind == "comm-read") {
      cfg = PerturbationConfig::CommRead(d.scale(), perturb_alpha);
    } else if (perturb_kind == "comm-con") {
      cfg = PerturbationConfig::CommCon(d.scale(), perturb_alpha);
    } else {
      throw ConfigError("perturb needs --perturbation or a known --kind");
    }
    if (perturb_seed) cfg.seed = *perturb_seed;
    run.config()["perturbation"] = cfg.ToJson();
    run.Seed(cfg.seed);
    const Dataset out = Perturb(d, cfg);
    const fs::path dir(perturb_out);
    fs::create_directories(dir);
    const std::string reviews = (dir / "reviews.jsonl").string();
    const std::string papers = (dir / "papers.jsonl").string();
    WriteDataset(out, reviews, papers);
    run.Output(reviews);
    run.Output(papers);
    run.WriteManifests();
    PrintStats(out, OverallScoreAgreement(out), std::cout);
    return kExitOk;
  }

  if (*bench) {
    Run run("benchmark", args);
    const Dataset d = bench_data.Load(run);
    run.Input(bench_scenario);
    BenchmarkConfig cfg = BenchmarkConfig::Load(bench_scenario);
    if (bench_seed) cfg.seed = *bench_seed;
    if (bench_runs) cfg.runs = *bench_runs;
    if (bench_threads) cfg.threads = *bench_threads;
    std::map<std::string, double> truth;
    if (!bench_truth.empty()) {
      run.Input(bench_truth);
      truth = LoadTruth(bench_truth);
    }
    TextFeatureProvider provider;
    if (!bench_features.empty()) {
      run.Input(bench_features);
      auto table = std::make_shared<const TextFeatureTable>(
          TextFeatureTable::Load(bench_features));
      provider = [table](const Dataset&) { return table; };
    }
    run.config()["benchmark"] = cfg.ToJson();
    run.Seed(cfg.seed);
    const EvaluationReport report =
        RunBenchmark(d, GoldStandard::FromDataset(d, truth), cfg, provider);
    OpenOutput(bench_out) << report.ToJson().dump(2) << '\n';
    run.Output(bench_out);
    if (!bench_table.empty()) {
      std::ofstream out = OpenOutput(bench_table);
      report.WriteTableCsv(out);
      run.Output(bench_table);
    }
    run.WriteManifests();
    report.WriteTableCsv(std::cout);
    return kExitOk;
  }

  if (*plot) {
    Run run("plot-efficiency", args);
    run.Input(plot_report);
    run.config()["metric"] = plot_metric;
    const EvaluationReport report = EvaluationReport::FromJson(ReadJsonFile(plot_report));
    {
      std::ofstream out = OpenOutput(plot_out);
      WriteEfficiencySvg(report, plot_metric, out);
    }
    run.Output(plot_out);
    run.WriteManifests();
    return kExitOk;
  }
  return kExitValidation;
}

}  // namespace

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

int RunCli(const std::vector<std::string>& args) {
  if (!spdlog::get("peerrank")) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("peerrank"));
  }
  CLI::App app{"Rank peer-reviewed submissions from review scores and texts."};
  app.set_version_flag("--version", PEERRANK_VERSION);
  try {
    return Dispatch(app, args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int RunCli(int argc, const char* const* argv) {
  return RunCli(std::vector<std::string>(argv, argv + argc));
}

}  // namespace peerrank
