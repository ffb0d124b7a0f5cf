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

#ifndef PEERRANK_DATASET_H_
#define PEERRANK_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace peerrank {

struct AspectScale {
  std::string name;
  int min = 1;
  int max = 5;

  bool operator==(const AspectScale&) const = default;
};

// Score bounds for one venue. Aspect order is the canonical order used by
// feature layouts.
struct ScaleSpec {
  int overall_min = 1;
  int overall_max = 6;
  std::vector<AspectScale> aspects;

  // Throws ValidationError when a scale is empty or inverted.
  void Validate() const;
  const AspectScale* FindAspect(std::string_view name) const;
  std::vector<std::string> AspectNames() const;

  nlohmann::json ToJson() const;
  static ScaleSpec FromJson(const nlohmann::json& j);
  static ScaleSpec Load(const std::string& path);

  // Six-point overall score and six five-point aspect scores.
  static ScaleSpec Acl2018();

  bool operator==(const ScaleSpec&) const = default;
};

struct Paper {
  std::string paper_id;
  std::string track;
  std::optional<bool> accepted;
  std::optional<int64_t> citation_count;

  bool operator==(const Paper&) const = default;
};

struct Review {
  std::string review_id;
  std::string paper_id;
  std::string referee_id;
  double overall_score = 0.0;
  std::map<std::string, double> aspect_scores;
  std::optional<double> confidence;
  std::map<std::string, std::string> sections;

  bool operator==(const Review&) const = default;
};

// Table-1-style descriptive statistics. Standard deviations use the sample
// (n - 1) convention.
struct DatasetStats {
  size_t papers = 0;
  size_t reviews = 0;
  size_t referees = 0;
  double reviews_per_paper_mean = 0.0;
  double reviews_per_paper_sd = 0.0;
  double reviews_per_referee_mean = 0.0;
  double reviews_per_referee_sd = 0.0;

  nlohmann::json ToJson() const;
};

// Immutable, validated collection of papers and reviews. Papers are stored
// sorted by paper_id and reviews by review_id, so two datasets built from the
// same records in any order compare equal.
class Dataset {
 public:
  // Validates every invariant; throws ValidationError subclasses.
  Dataset(std::vector<Paper> papers, std::vector<Review> reviews,
          ScaleSpec scale);

  const std::vector<Paper>& papers() const { return papers_; }
  const std::vector<Review>& reviews() const { return reviews_; }
  const ScaleSpec& scale() const { return scale_; }
  // Sorted referee ids.
  const std::vector<std::string>& referees() const { return referees_; }

  const Paper& paper(std::string_view paper_id) const;
  std::optional<size_t> PaperIndex(std::string_view paper_id) const;
  bool HasReferee(std::string_view referee_id) const;

  // Indices into reviews(), ordered by review_id.
  const std::vector<size_t>& ReviewsOfPaper(std::string_view paper_id) const;
  const std::vector<size_t>& ReviewsOfPaper(size_t paper_index) const {
    return paper_reviews_[paper_index];
  }
  // Indices into reviews(), ordered by review_id. Throws LookupError.
  const std::vector<size_t>& ReviewsOfReferee(std::string_view referee) const;

  size_t MaxReviewsPerPaper() const;
  DatasetStats Stats() const;

  bool operator==(const Dataset& other) const {
    return papers_ == other.papers_ && reviews_ == other.reviews_ &&
           scale_ == other.scale_;
  }

 private:
  std::vector<Paper> papers_;
  std::vector<Review> reviews_;
  ScaleSpec scale_;
  std::vector<std::string> referees_;
  std::unordered_map<std::string, size_t> paper_index_;
  std::vector<std::vector<size_t>> paper_reviews_;
  std::map<std::string, std::vector<size_t>, std::less<>> referee_reviews_;
};

// R_e and P_e for one referee; both ordered by review_id.
struct RefereePortfolio {
  std::vector<Review> reviews;
  std::vector<std::string> papers;
};

RefereePortfolio GetRefereePortfolio(const Dataset& d,
                                     std::string_view referee_id);

// Reads the line-delimited JSON interchange files. Logs the dataset
// statistics at info level.
Dataset LoadDataset(const std::string& reviews_path,
                    const std::string& papers_path, const ScaleSpec& scale);
Dataset ParseDataset(std::istream& reviews, std::istream& papers,
                     const ScaleSpec& scale,
                     const std::string& reviews_name = "reviews",
                     const std::string& papers_name = "papers");
void WriteDataset(const Dataset& d, const std::string& reviews_path,
                  const std::string& papers_path);
void WriteDataset(const Dataset& d, std::ostream& reviews,
                  std::ostream& papers);

nlohmann::json ReviewToJson(const Review& r);
nlohmann::json PaperToJson(const Paper& p);

}  // namespace peerrank

#endif  // PEERRANK_DATASET_H_
