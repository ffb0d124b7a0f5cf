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

#include "peerrank/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "peerrank/errors.h"

namespace peerrank {
namespace {

using nlohmann::json;

std::pair<double, double> MeanAndSampleSd(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

const json& Require(const json& obj, const char* key, const std::string& src,
                    int line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(src, line, std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& src, int line) {
  const json& v = Require(obj, key, src, line);
  if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
    throw ParseError(src, line,
                     std::string("field '") + key + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

double RequireNumber(const json& v, const std::string& what,
                     const std::string& src, int line) {
  if (!v.is_number()) {
    throw ParseError(src, line, what + " must be a number");
  }
  double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(src, line, what + " must be finite");
  return x;
}

Review ParseReview(const json& obj, const std::string& src, int line) {
  if (!obj.is_object()) throw ParseError(src, line, "expected a JSON object");
  Review r;
  r.review_id = RequireString(obj, "review_id", src, line);
  r.paper_id = RequireString(obj, "paper_id", src, line);
  r.referee_id = RequireString(obj, "referee_id", src, line);
  r.overall_score =
      RequireNumber(Require(obj, "overall_score", src, line), "overall_score",
                    src, line);
  if (auto it = obj.find("aspect_scores"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) {
      throw ParseError(src, line, "aspect_scores must be an object");
    }
    for (const auto& [name, value] : it->items()) {
      r.aspect_scores[name] =
          RequireNumber(value, "aspect score '" + name + "'", src, line);
    }
  }
  if (auto it = obj.find("confidence"); it != obj.end() && !it->is_null()) {
    r.confidence = RequireNumber(*it, "confidence", src, line);
  }
  if (auto it = obj.find("sections"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError(src, line, "sections must be an object");
    for (const auto& [name, value] : it->items()) {
      if (!value.is_string()) {
        throw ParseError(src, line, "section '" + name + "' must be a string");
      }
      r.sections[name] = value.get<std::string>();
    }
  }
  return r;
}

Paper ParsePaper(const json& obj, const std::string& src, int line) {
  if (!obj.is_object()) throw ParseError(src, line, "expected a JSON object");
  Paper p;
  p.paper_id = RequireString(obj, "paper_id", src, line);
  if (auto it = obj.find("track"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(src, line, "track must be a string");
    p.track = it->get<std::string>();
  }
  if (auto it = obj.find("accepted"); it != obj.end() && !it->is_null()) {
    if (!it->is_boolean()) throw ParseError(src, line, "accepted must be a boolean");
    p.accepted = it->get<bool>();
  }
  if (auto it = obj.find("citation_count"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
      throw ParseError(src, line,
                       "citation_count must be a non-negative integer");
    }
    p.citation_count = it->get<int64_t>();
  }
  return p;
}

template <typename T, typename F>
std::vector<T> ParseLines(std::istream& in, const std::string& src, F parse) {
  std::vector<T> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(src, line, std::string("malformed JSON: ") + e.what());
    }
    out.push_back(parse(obj, src, line));
  }
  return out;
}

}  // namespace

void ScaleSpec::Validate() const {
  if (overall_min >= overall_max) {
    throw ValidationError("overall scale must satisfy min < max");
  }
  std::set<std::string> seen;
  for (const auto& a : aspects) {
    if (a.name.empty()) throw ValidationError("aspect with empty name");
    if (!seen.insert(a.name).second) {
      throw ValidationError("duplicate aspect '" + a.name + "'");
    }
    if (a.min >= a.max) {
      throw ValidationError("aspect '" + a.name + "' must satisfy min < max");
    }
  }
}

const AspectScale* ScaleSpec::FindAspect(std::string_view name) const {
  for (const auto& a : aspects) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<std::string> ScaleSpec::AspectNames() const {
  std::vector<std::string> names;
  for (const auto& a : aspects) names.push_back(a.name);
  return names;
}

json ScaleSpec::ToJson() const {
  json aspects_json = json::array();
  for (const auto& a : aspects) {
    aspects_json.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}});
  }
  return {{"overall", {{"min", overall_min}, {"max", overall_max}}},
          {"aspects", aspects_json}};
}

ScaleSpec ScaleSpec::FromJson(const json& j) {
  ScaleSpec s;
  try {
    s.overall_min = j.at("overall").at("min").get<int>();
    s.overall_max = j.at("overall").at("max").get<int>();
    if (j.contains("aspects")) {
      for (const auto& a : j.at("aspects")) {
        s.aspects.push_back({a.at("name").get<std::string>(),
                             a.at("min").get<int>(), a.at("max").get<int>()});
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scale spec: ") + e.what());
  }
  s.Validate();
  return s;
}

ScaleSpec ScaleSpec::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scale spec " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed scale spec " + path + ": " + e.what());
  }
  return FromJson(j);
}

ScaleSpec ScaleSpec::Acl2018() {
  ScaleSpec s;
  s.overall_min = 1;
  s.overall_max = 6;
  for (const char* name :
       {"originality", "soundness", "substance", "replicability",
        "meaningful_comparison", "readability"}) {
    s.aspects.push_back({name, 1, 5});
  }
  return s;
}

json DatasetStats::ToJson() const {
  return {{"papers", papers},
          {"reviews", reviews},
          {"referees", referees},
          {"reviews_per_paper", {{"mean", reviews_per_paper_mean},
                                 {"sd", reviews_per_paper_sd}}},
          {"reviews_per_referee", {{"mean", reviews_per_referee_mean},
                                   {"sd", reviews_per_referee_sd}}}};
}

Dataset::Dataset(std::vector<Paper> papers, std::vector<Review> reviews,
                 ScaleSpec scale)
    : papers_(std::move(papers)),
      reviews_(std::move(reviews)),
      scale_(std::move(scale)) {
  scale_.Validate();
  if (papers_.empty()) throw ValidationError("dataset contains no papers");

  std::sort(papers_.begin(), papers_.end(),
            [](const Paper& a, const Paper& b) { return a.paper_id < b.paper_id; });
  std::sort(reviews_.begin(), reviews_.end(),
            [](const Review& a, const Review& b) {
              return a.review_id < b.review_id;
            });

  for (size_t i = 0; i < papers_.size(); ++i) {
    const Paper& p = papers_[i];
    if (!paper_index_.emplace(p.paper_id, i).second) {
      throw IntegrityError("duplicate paper_id '" + p.paper_id + "'");
    }
    if (p.citation_count && !p.accepted) {
      throw ValidationError("paper '" + p.paper_id +
                            "' has a citation count but no acceptance label");
    }
  }

  paper_reviews_.resize(papers_.size());
  std::set<std::pair<std::string, std::string>> referee_paper;
  for (size_t i = 0; i < reviews_.size(); ++i) {
    const Review& r = reviews_[i];
    if (i > 0 && reviews_[i - 1].review_id == r.review_id) {
      throw IntegrityError("duplicate review_id '" + r.review_id + "'");
    }
    auto it = paper_index_.find(r.paper_id);
    if (it == paper_index_.end()) {
      throw IntegrityError("review '" + r.review_id +
                           "' references unknown paper '" + r.paper_id + "'");
    }
    if (!referee_paper.emplace(r.referee_id, r.paper_id).second) {
      throw IntegrityError("referee '" + r.referee_id +
                           "' reviewed paper '" + r.paper_id + "' twice");
    }
    if (r.overall_score < scale_.overall_min ||
        r.overall_score > scale_.overall_max) {
      throw ValidationError("review '" + r.review_id +
                            "': overall score out of scale");
    }
    for (const auto& [name, value] : r.aspect_scores) {
      const AspectScale* a = scale_.FindAspect(name);
      if (a == nullptr) {
        throw ValidationError("review '" + r.review_id +
                              "': unknown aspect '" + name + "'");
      }
      if (value < a->min || value > a->max) {
        throw ValidationError("review '" + r.review_id + "': aspect '" +
                              name + "' out of scale");
      }
    }
    if (r.aspect_scores.size() != scale_.aspects.size()) {
      throw ValidationError("review '" + r.review_id +
                            "': missing aspect scores");
    }
    if (r.confidence && !(*r.confidence > 0.0)) {
      throw ValidationError("review '" + r.review_id +
                            "': confidence must be positive");
    }
    paper_reviews_[it->second].push_back(i);
    referee_reviews_[r.referee_id].push_back(i);
  }

  for (size_t i = 0; i < papers_.size(); ++i) {
    if (paper_reviews_[i].empty()) {
      throw ValidationError("paper '" + papers_[i].paper_id +
                            "' has no reviews");
    }
  }
  for (const auto& [referee, unused] : referee_reviews_) {
    referees_.push_back(referee);
  }
}

const Paper& Dataset::paper(std::string_view paper_id) const {
  auto idx = PaperIndex(paper_id);
  if (!idx) throw LookupError("unknown paper '" + std::string(paper_id) + "'");
  return papers_[*idx];
}

std::optional<size_t> Dataset::PaperIndex(std::string_view paper_id) const {
  auto it = paper_index_.find(std::string(paper_id));
  if (it == paper_index_.end()) return std::nullopt;
  return it->second;
}

bool Dataset::HasReferee(std::string_view referee_id) const {
  return referee_reviews_.find(referee_id) != referee_reviews_.end();
}

const std::vector<size_t>& Dataset::ReviewsOfPaper(
    std::string_view paper_id) const {
  auto idx = PaperIndex(paper_id);
  if (!idx) throw LookupError("unknown paper '" + std::string(paper_id) + "'");
  return paper_reviews_[*idx];
}

const std::vector<size_t>& Dataset::ReviewsOfReferee(
    std::string_view referee) const {
  auto it = referee_reviews_.find(referee);
  if (it == referee_reviews_.end()) {
    throw LookupError("unknown referee '" + std::string(referee) + "'");
  }
  return it->second;
}

size_t Dataset::MaxReviewsPerPaper() const {
  size_t m = 0;
  for (const auto& r : paper_reviews_) m = std::max(m, r.size());
  return m;
}

DatasetStats Dataset::Stats() const {
  DatasetStats s;
  s.papers = papers_.size();
  s.reviews = reviews_.size();
  s.referees = referees_.size();
  std::vector<double> per_paper;
  for (const auto& r : paper_reviews_) per_paper.push_back(r.size());
  std::vector<double> per_referee;
  for (const auto& [unused, r] : referee_reviews_) per_referee.push_back(r.size());
  std::tie(s.reviews_per_paper_mean, s.reviews_per_paper_sd) =
      MeanAndSampleSd(per_paper);
  std::tie(s.reviews_per_referee_mean, s.reviews_per_referee_sd) =
      MeanAndSampleSd(per_referee);
  return s;
}

RefereePortfolio GetRefereePortfolio(const Dataset& d,
                                     std::string_view referee_id) {
  RefereePortfolio out;
  for (size_t idx : d.ReviewsOfReferee(referee_id)) {
    out.reviews.push_back(d.reviews()[idx]);
    out.papers.push_back(d.reviews()[idx].paper_id);
  }
  return out;
}

Dataset ParseDataset(std::istream& reviews, std::istream& papers,
                     const ScaleSpec& scale, const std::string& reviews_name,
                     const std::string& papers_name) {
  auto review_rows = ParseLines<Review>(reviews, reviews_name, ParseReview);
  auto paper_rows = ParseLines<Paper>(papers, papers_name, ParsePaper);
  return Dataset(std::move(paper_rows), std::move(review_rows), scale);
}

Dataset LoadDataset(const std::string& reviews_path,
                    const std::string& papers_path, const ScaleSpec& scale) {
  std::ifstream reviews(reviews_path);
  if (!reviews) throw ValidationError("cannot open " + reviews_path);
  std::ifstream papers(papers_path);
  if (!papers) throw ValidationError("cannot open " + papers_path);
  Dataset d = ParseDataset(reviews, papers, scale, reviews_path, papers_path);
  const DatasetStats s = d.Stats();
  spdlog::info(
      "loaded {} papers, {} reviews, {} referees; reviews/paper {:.2f}±{:.2f}, "
      "reviews/referee {:.2f}±{:.2f}",
      s.papers, s.reviews, s.referees, s.reviews_per_paper_mean,
      s.reviews_per_paper_sd, s.reviews_per_referee_mean,
      s.reviews_per_referee_sd);
  return d;
}

json ReviewToJson(const Review& r) {
  json aspects = json::object();
  for (const auto& [k, v] : r.aspect_scores) aspects[k] = v;
  json sections = json::object();
  for (const auto& [k, v] : r.sections) sections[k] = v;
  return {{"review_id", r.review_id},
          {"paper_id", r.paper_id},
          {"referee_id", r.referee_id},
          {"overall_score", r.overall_score},
          {"aspect_scores", aspects},
          {"confidence", r.confidence ? json(*r.confidence) : json(nullptr)},
          {"sections", sections}};
}

json PaperToJson(const Paper& p) {
  return {{"paper_id", p.paper_id},
          {"track", p.track},
          {"accepted", p.accepted ? json(*p.accepted) : json(nullptr)},
          {"citation_count",
           p.citation_count ? json(*p.citation_count) : json(nullptr)}};
}

void WriteDataset(const Dataset& d, std::ostream& reviews,
                  std::ostream& papers) {
  for (const Review& r : d.reviews()) reviews << ReviewToJson(r).dump() << '\n';
  for (const Paper& p : d.papers()) papers << PaperToJson(p).dump() << '\n';
}

void WriteDataset(const Dataset& d, const std::string& reviews_path,
                  const std::string& papers_path) {
  std::ofstream reviews(reviews_path);
  if (!reviews) throw ValidationError("cannot write " + reviews_path);
  std::ofstream papers(papers_path);
  if (!papers) throw ValidationError("cannot write " + papers_path);
  WriteDataset(d, reviews, papers);
}

}  // namespace peerrank
