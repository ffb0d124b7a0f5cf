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

#include "peerrank/benchmark.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "peerrank/errors.h"
#include "peerrank/metrics.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

using nlohmann::json;

constexpr const char* kMetricNames[] = {"auroc",   "prauc",    "rho_raw",
                                        "rho_norm", "rho_true", "consistency"};

std::string_view PairFilterName(PairFilter f) {
  switch (f) {
    case PairFilter::kKeepAll:
      return "keep-all";
    case PairFilter::kDropTies:
      return "drop-ties";
    case PairFilter::kDropCrossTrack:
      return "drop-cross-track";
  }
  return "?";
}

std::string_view MethodKindName(const MethodSpec& m) {
  switch (m.kind) {
    case MethodKind::kGppl:
      return "gppl";
    case MethodKind::kDcon:
      return "dcon";
    case MethodKind::kNcon:
      return "ncon";
    case MethodKind::kBaseline:
      return BaselineName(m.baseline.method);
  }
  return "?";
}

std::vector<PreferencePair> ConsensusPairs(const MethodSpec& m,
                                           const Dataset& d) {
  auto pairs = FilterPairs(ExtractPreferencePairs(d), PairFilter::kDropTies, d);
  if (m.pair_filter == PairFilter::kDropCrossTrack) {
    pairs = FilterPairs(pairs, PairFilter::kDropCrossTrack, d);
  }
  return pairs;
}

std::string FormatFraction(double f) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", f);
  return buf;
}

}  // namespace

MethodSpec MethodSpec::Named(const std::string& method) {
  MethodSpec m;
  m.name = method;
  if (method == "gppl") {
    m.kind = MethodKind::kGppl;
  } else if (method == "dcon") {
    m.kind = MethodKind::kDcon;
  } else if (method == "ncon") {
    m.kind = MethodKind::kNcon;
  } else {
    m.kind = MethodKind::kBaseline;
    m.baseline.method = ParseBaselineMethod(method);
  }
  return m;
}

json MethodSpec::ToJson() const {
  json j = {{"name", name}, {"method", MethodKindName(*this)}};
  switch (kind) {
    case MethodKind::kGppl:
      j["feature_config"] = features.ToJson();
      j["gppl"] = gppl.ToJson();
      j["pair_filter"] = PairFilterName(pair_filter);
      break;
    case MethodKind::kDcon:
    case MethodKind::kNcon:
      j["consensus"] = {{"time_budget_seconds", consensus.time_budget_seconds},
                        {"restarts", consensus.restarts}};
      j["pair_filter"] = PairFilterName(pair_filter);
      break;
    case MethodKind::kBaseline:
      j["missing_confidence_weight"] = baseline.missing_confidence_weight;
      break;
  }
  return j;
}

MethodSpec MethodSpec::FromJson(const json& j) {
  if (j.is_string()) return Named(j.get<std::string>());
  try {
    MethodSpec m = Named(j.at("method").get<std::string>());
    m.name = j.value("name", m.name);
    if (j.contains("feature_config")) {
      const json& f = j.at("feature_config");
      m.features = f.is_string() ? FeatureConfig::FromName(f.get<std::string>())
                                 : FeatureConfig::FromJson(f);
    }
    if (j.contains("gppl")) m.gppl = GpplConfig::FromJson(j.at("gppl"));
    if (j.contains("pair_filter")) {
      m.pair_filter = ParsePairFilter(j.at("pair_filter").get<std::string>());
    }
    if (j.contains("consensus")) {
      const json& c = j.at("consensus");
      m.consensus.time_budget_seconds =
          c.value("time_budget_seconds", m.consensus.time_budget_seconds);
      m.consensus.restarts = c.value("restarts", m.consensus.restarts);
    }
    m.baseline.missing_confidence_weight = j.value(
        "missing_confidence_weight", m.baseline.missing_confidence_weight);
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("method spec: ") + e.what());
  }
}

RankingResult RunMethod(const MethodSpec& method, const Dataset& d,
                        const TextFeatureTable* text, uint64_t seed) {
  std::vector<std::string> ids;
  for (const Paper& p : d.papers()) ids.push_back(p.paper_id);
  RankingResult result;
  switch (method.kind) {
    case MethodKind::kGppl: {
      const FeatureSet features = AssembleFeatures(d, method.features, text);
      const auto pairs =
          FilterPairs(ExtractPreferencePairs(d), method.pair_filter, d);
      GpplConfig cfg = method.gppl;
      cfg.seed = seed;
      result = FitGppl(features, pairs, cfg).training_ranking();
      break;
    }
    case MethodKind::kDcon:
    case MethodKind::kNcon: {
      ConsensusConfig cfg = method.consensus;
      cfg.seed = seed;
      const auto pairs = ConsensusPairs(method, d);
      result = method.kind == MethodKind::kDcon
                   ? RankDcon(pairs, ids, cfg).ranking
                   : RankNcon(pairs, ids, cfg).ranking;
      break;
    }
    case MethodKind::kBaseline:
      result = RankBaseline(d, method.baseline);
      break;
  }
  result.method = method.name;
  return result;
}

json ScenarioSpec::ToJson() const {
  json j = {{"name", name}};
  j["perturbation"] = perturbation ? perturbation->ToJson() : json(nullptr);
  return j;
}

ScenarioSpec ScenarioSpec::FromJson(const json& j) {
  ScenarioSpec s;
  try {
    if (j.contains("perturbation") && !j.at("perturbation").is_null()) {
      s.perturbation = PerturbationConfig::FromJson(j.at("perturbation"));
    }
    s.name = j.value("name", s.perturbation ? s.perturbation->name
                                            : std::string("original"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return s;
}

void BenchmarkConfig::Validate() const {
  if (methods.empty()) throw ConfigError("benchmark lists no methods");
  if (runs < 1) throw ConfigError("benchmark runs must be >= 1");
  if (!(dev_fraction >= 0.0 && dev_fraction < 1.0)) {
    throw ConfigError("dev_fraction must lie in [0, 1)");
  }
  std::set<std::string> names;
  for (const auto& m : methods) {
    if (!names.insert(m.name).second) {
      throw ConfigError("duplicate method name '" + m.name + "'");
    }
    if (m.kind == MethodKind::kGppl) {
      m.features.Validate();
      m.gppl.Validate();
    }
  }
  std::set<std::string> scenario_names = {"original"};
  for (const auto& s : scenarios) {
    if (!scenario_names.insert(s.name).second) {
      throw ConfigError("duplicate scenario name '" + s.name + "'");
    }
  }
}

json BenchmarkConfig::ToJson() const {
  json j = {{"runs", runs},
            {"seed", seed},
            {"dev_fraction", dev_fraction},
            {"methods", json::array()},
            {"scenarios", json::array()}};
  for (const auto& m : methods) j["methods"].push_back(m.ToJson());
  for (const auto& s : scenarios) j["scenarios"].push_back(s.ToJson());
  return j;
}

BenchmarkConfig BenchmarkConfig::FromJson(const json& j) {
  BenchmarkConfig c;
  try {
    c.runs = j.value("runs", c.runs);
    c.seed = j.value("seed", c.seed);
    c.dev_fraction = j.value("dev_fraction", c.dev_fraction);
    c.threads = j.value("threads", c.threads);
    for (const auto& m : j.at("methods")) c.methods.push_back(MethodSpec::FromJson(m));
    if (j.contains("scenarios")) {
      for (const auto& s : j.at("scenarios")) {
        c.scenarios.push_back(ScenarioSpec::FromJson(s));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario file: ") + e.what());
  }
  return c;
}

BenchmarkConfig BenchmarkConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  return FromJson(j);
}

MetricSummary MetricSummary::Of(std::vector<double> values) {
  MetricSummary s;
  s.values = std::move(values);
  const double n = static_cast<double>(s.values.size());
  if (s.values.empty()) return s;
  // Shifted by the first value so identical runs give exactly sd 0.
  const double shift = s.values.front();
  double offset = 0.0;
  for (double v : s.values) offset += v - shift;
  s.mean = shift + offset / n;
  if (s.values.size() > 1) {
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

json MetricSummary::ToJson() const {
  return {{"mean", mean}, {"sd", sd}, {"n", values.size()}, {"values", values}};
}

const ReportCell* EvaluationReport::Find(const std::string& scenario,
                                         const std::string& method) const {
  for (const auto& c : cells) {
    if (c.scenario == scenario && c.method == method) return &c;
  }
  return nullptr;
}

json EvaluationReport::ToJson() const {
  json results = json::array();
  for (const auto& c : cells) {
    json metrics = json::object();
    for (const auto& [name, summary] : c.metrics) metrics[name] = summary.ToJson();
    json runs = json::array();
    for (const auto& r : c.runs) runs.push_back(r ? r->ToJson() : json(nullptr));
    results.push_back({{"scenario", c.scenario},
                       {"method", c.method},
                       {"metrics", metrics},
                       {"failures", c.failures},
                       {"runs", runs}});
  }
  return {{"run_count", run_count},
          {"split_id", split_id},
          {"config", config},
          {"results", results}};
}

EvaluationReport EvaluationReport::FromJson(const json& j) {
  EvaluationReport r;
  try {
    r.run_count = j.at("run_count").get<int>();
    r.split_id = j.value("split_id", "");
    r.config = j.value("config", json::object());
    for (const auto& c : j.at("results")) {
      ReportCell cell;
      cell.scenario = c.at("scenario").get<std::string>();
      cell.method = c.at("method").get<std::string>();
      for (const auto& [name, m] : c.at("metrics").items()) {
        cell.metrics[name] = MetricSummary::Of(m.at("values").get<std::vector<double>>());
      }
      cell.failures = c.value("failures", std::vector<std::string>{});
      r.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("evaluation report: ") + e.what());
  }
  return r;
}

void EvaluationReport::WriteTableCsv(std::ostream& out) const {
  out << "scenario,method,runs";
  for (const char* m : kMetricNames) out << ',' << m << "_mean," << m << "_sd";
  out << '\n';
  char buf[64];
  for (const auto& c : cells) {
    size_t ok = 0;
    for (const auto& r : c.runs) ok += r.has_value();
    if (c.runs.empty()) {
      for (const auto& [name, m] : c.metrics) ok = std::max(ok, m.values.size());
    }
    out << c.scenario << ',' << c.method << ',' << ok;
    for (const char* m : kMetricNames) {
      auto it = c.metrics.find(m);
      if (it == c.metrics.end() || it->second.values.empty()) {
        out << ",,";
        continue;
      }
      std::snprintf(buf, sizeof(buf), ",%.4f,%.4f", it->second.mean,
                    it->second.sd);
      out << buf;
    }
    out << '\n';
  }
}

int ResolveThreadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PEERRANK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EvaluationReport RunBenchmark(const Dataset& d, const GoldStandard& gold,
                              const BenchmarkConfig& cfg,
                              const TextFeatureProvider& text) {
  cfg.Validate();
  std::vector<ScenarioSpec> scenarios = {ScenarioSpec{}};
  scenarios.insert(scenarios.end(), cfg.scenarios.begin(), cfg.scenarios.end());
  for (const auto& s : scenarios) {
    if (s.perturbation) s.perturbation->Validate(d.scale());
  }
  std::vector<MethodSpec> methods = cfg.methods;
  std::sort(methods.begin(), methods.end(),
            [](const MethodSpec& a, const MethodSpec& b) { return a.name < b.name; });

  EvaluationReport report;
  report.run_count = cfg.runs;
  report.config = cfg.ToJson();
  std::vector<std::string> evaluated;
  if (cfg.dev_fraction > 0.0) {
    Split split = StratifiedSplit(gold, cfg.dev_fraction, cfg.seed);
    evaluated = std::move(split.test);
    report.split_id = split.id;
  } else {
    report.split_id = "all-labeled";
  }

  const size_t runs = static_cast<size_t>(cfg.runs);
  const size_t ns = scenarios.size();
  const size_t nm = methods.size();
  // Inputs per (run, scenario).
  std::vector<std::shared_ptr<const Dataset>> inputs(runs * ns);
  std::vector<std::shared_ptr<const TextFeatureTable>> texts(runs * ns);
  std::vector<std::string> input_errors(runs * ns);
  auto original = std::make_shared<const Dataset>(d);
  for (size_t r = 0; r < runs; ++r) {
    const uint64_t run_seed = DeriveSeed(cfg.seed, r);
    for (size_t s = 0; s < ns; ++s) {
      const size_t k = r * ns + s;
      try {
        if (scenarios[s].perturbation) {
          PerturbationConfig pc = *scenarios[s].perturbation;
          pc.seed = DeriveSeed(run_seed ^ pc.seed, HashString(scenarios[s].name));
          inputs[k] = std::make_shared<const Dataset>(Perturb(d, pc));
        } else {
          inputs[k] = original;
        }
        if (text) texts[k] = text(*inputs[k]);
      } catch (const std::exception& e) {
        input_errors[k] = e.what();
      }
    }
  }

  std::vector<std::optional<RankingResult>> rankings(runs * ns * nm);
  std::vector<std::string> errors(runs * ns * nm);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < rankings.size(); t = next++) {
      const size_t m = t % nm;
      const size_t k = t / nm;
      const size_t r = k / ns;
      if (!inputs[k]) {
        errors[t] = input_errors[k];
        continue;
      }
      const uint64_t seed =
          DeriveSeed(DeriveSeed(cfg.seed, r), HashString(methods[m].name));
      try {
        rankings[t] = RunMethod(methods[m], *inputs[k], texts[k].get(), seed);
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
  };
  const int threads = std::min<int>(ResolveThreadCount(cfg.threads),
                                    static_cast<int>(rankings.size()));
  spdlog::info("benchmark: {} run(s) x {} scenario(s) x {} method(s) on {} thread(s)",
               runs, ns, nm, threads);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (size_t s = 0; s < ns; ++s) {
    for (size_t m = 0; m < nm; ++m) {
      ReportCell cell;
      cell.scenario = scenarios[s].name;
      cell.method = methods[m].name;
      std::map<std::string, std::vector<double>> values;
      for (size_t r = 0; r < runs; ++r) {
        const size_t t = (r * ns + s) * nm + m;
        std::optional<Effectiveness> eff;
        if (rankings[t]) {
          try {
            eff = Evaluate(*rankings[t], gold, evaluated);
          } catch (const std::exception& e) {
            errors[t] = e.what();
          }
        }
        if (!eff) {
          const std::string msg = "run " + std::to_string(r) + ": " + errors[t];
          spdlog::warn("benchmark: {} / {} failed, {}", cell.scenario,
                       cell.method, msg);
          cell.failures.push_back(msg);
          cell.runs.emplace_back();
          continue;
        }
        auto add = [&](const char* name, const std::optional<double>& v) {
          if (v) values[name].push_back(*v);
        };
        add("auroc", eff->auroc);
        add("prauc", eff->prauc);
        add("rho_raw", eff->rho_raw);
        add("rho_norm", eff->rho_norm);
        add("rho_true", eff->rho_true);
        const size_t base = (r * ns) * nm + m;
        if (s > 0 && rankings[base]) {
          const auto before = rankings[base]->UtilityMap();
          std::vector<double> a, b;
          const auto& ids = rankings[t]->paper_ids;
          for (size_t i = 0; i < ids.size(); ++i) {
            auto it = before.find(ids[i]);
            if (it == before.end()) continue;
            a.push_back(it->second);
            b.push_back(rankings[t]->utility[i]);
          }
          add("consistency", Spearman(a, b));
        }
        cell.runs.push_back(std::move(eff));
      }
      for (auto& [name, v] : values) cell.metrics[name] = MetricSummary::Of(v);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::vector<ScenarioSpec> EfficiencyScenarios(
    const std::vector<double>& fractions) {
  std::vector<ScenarioSpec> out;
  for (double f : fractions) {
    if (f <= 0.0) continue;
    ScenarioSpec s;
    s.name = "removed-" + FormatFraction(f);
    s.perturbation = PerturbationConfig::ReviewSubsample(f);
    s.perturbation->name = s.name;
    out.push_back(std::move(s));
  }
  return out;
}

void WriteEfficiencySvg(const EvaluationReport& report,
                        const std::string& metric, std::ostream& out) {
  // fraction of removed reviews per scenario
  std::map<std::string, double> fraction = {{"original", 0.0}};
  for (const auto& s : report.config.value("scenarios", json::array())) {
    const json& p = s.value("perturbation", json(nullptr));
    if (!p.is_null() && p.value("kind", "") == "review-subsample") {
      fraction[s.at("name").get<std::string>()] = p.at("alpha").get<double>();
    }
  }
  std::map<std::string, std::vector<std::pair<double, double>>> lines;
  for (const auto& c : report.cells) {
    auto f = fraction.find(c.scenario);
    auto m = c.metrics.find(metric);
    if (f == fraction.end() || m == c.metrics.end() || m->second.values.empty()) {
      continue;
    }
    lines[c.method].emplace_back(f->second, m->second.mean);
  }
  double x_max = 0.0, y_min = 1e300, y_max = -1e300;
  for (auto& [name, pts] : lines) {
    std::sort(pts.begin(), pts.end());
    for (const auto& [x, y] : pts) {
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (lines.empty()) {
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max <= 0.0) x_max = 1.0;
  if (y_max - y_min < 1e-9) {
    y_min -= 0.05;
    y_max += 0.05;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 170, kTop = 40,
                   kBottom = 60;
  auto px = [&](double x) { return kLeft + x / x_max * (kW - kLeft - kRight); };
  auto py = [&](double y) {
    return kH - kBottom - (y - y_min) / (y_max - y_min) * (kH - kTop - kBottom);
  };
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"24\" font-size=\"14\">%s vs. fraction of "
                "removed reviews</text>\n",
                kLeft, metric.c_str());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                kLeft, kH - kBottom, kW - kRight, kH - kBottom, kLeft, kTop,
                kLeft, kH - kBottom);
  out << buf;
  for (int i = 0; i <= 4; ++i) {
    const double x = x_max * i / 4.0;
    const double y = y_min + (y_max - y_min) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%g\" text-anchor=\"middle\">%.2f</text>\n"
                  "<text x=\"%g\" y=\"%.1f\" text-anchor=\"end\">%.3f</text>\n",
                  px(x), kH - kBottom + 18, x, kLeft - 6, py(y) + 4, y);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">fraction of "
                "removed reviews</text>\n",
                (kLeft + kW - kRight) / 2, kH - 18);
  out << buf;
  size_t color = 0;
  for (const auto& [name, pts] : lines) {
    const char* c = kColors[color++ % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) {
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", px(x), py(y));
      out << buf;
    }
    out << "\"/>\n";
    for (const auto& [x, y] : pts) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"%s\"/>\n",
                    px(x), py(y), c);
      out << buf;
    }
    const double ly = kTop + 18.0 * static_cast<double>(color);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
                  "stroke-width=\"2\"/>\n<text x=\"%g\" y=\"%g\">",
                  kW - kRight + 15, ly, kW - kRight + 35, ly, c, kW - kRight + 40,
                  ly + 4);
    out << buf << name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace peerrank
