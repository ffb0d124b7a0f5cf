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

#include "peerrank/text_features.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "peerrank/errors.h"

namespace peerrank {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& cell, const std::string& source,
                   int line) {
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw SchemaError(source + ":" + std::to_string(line) +
                      ": non-numeric value '" + cell + "'");
  }
  return value;
}

}  // namespace

TextColumn ParseTextColumn(std::string_view name) {
  TextColumn c;
  c.name = std::string(name);
  auto fail = [&]() {
    return SchemaError("unrecognized text-feature column '" + c.name + "'");
  };
  if (name == kRelatednessColumn) {
    c.kind = TextColumnKind::kRelated;
    return c;
  }
  if (name.starts_with("discourse:")) {
    c.kind = TextColumnKind::kDiscourse;
    c.label = std::string(name.substr(10));
    if (c.label.empty() || c.label.find(':') != std::string::npos) throw fail();
    return c;
  }
  std::string_view rest;
  if (name.starts_with("embedmean:")) {
    c.kind = TextColumnKind::kEmbedMean;
    rest = name.substr(10);
  } else if (name.starts_with("embed:")) {
    c.kind = TextColumnKind::kEmbed;
    rest = name.substr(6);
  } else {
    throw fail();
  }
  const size_t colon = rest.rfind(':');
  if (colon == std::string_view::npos || colon == 0) throw fail();
  c.label = std::string(rest.substr(0, colon));
  std::string_view index = rest.substr(colon + 1);
  auto [ptr, ec] =
      std::from_chars(index.data(), index.data() + index.size(), c.dimension);
  if (ec != std::errc() || ptr != index.data() + index.size() ||
      c.dimension < 0) {
    throw fail();
  }
  return c;
}

TextFeatureTable::TextFeatureTable(
    std::vector<std::string> columns,
    std::map<std::string, std::vector<double>> rows)
    : rows_(std::move(rows)) {
  std::set<std::string> seen;
  for (const auto& name : columns) {
    if (!seen.insert(name).second) {
      throw SchemaError("duplicate text-feature column '" + name + "'");
    }
    columns_.push_back(ParseTextColumn(name));
  }
  // Each embedding section must carry a contiguous 0..d-1 index range of the
  // same width in both families.
  std::map<std::pair<int, std::string>, std::set<int>> dims;
  for (const auto& c : columns_) {
    if (c.kind == TextColumnKind::kEmbed || c.kind == TextColumnKind::kEmbedMean) {
      dims[{static_cast<int>(c.kind), c.label}].insert(c.dimension);
    }
  }
  for (const auto& [key, indices] : dims) {
    if (*indices.rbegin() + 1 != static_cast<int>(indices.size())) {
      throw SchemaError("embedding section '" + key.second +
                        "' has non-contiguous dimensions");
    }
  }
  for (const auto& [paper, values] : rows_) {
    if (values.size() != columns_.size()) {
      throw SchemaError("row for paper '" + paper + "' has " +
                        std::to_string(values.size()) + " values, expected " +
                        std::to_string(columns_.size()));
    }
    double discourse_sum = 0.0;
    bool has_discourse = false;
    for (size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        throw SchemaError("non-finite value for paper '" + paper +
                          "' in column '" + columns_[i].name + "'");
      }
      if (columns_[i].kind == TextColumnKind::kDiscourse) {
        has_discourse = true;
        if (values[i] < 0.0 || values[i] > 1.0) {
          throw SchemaError("discourse proportion outside [0,1] for paper '" +
                            paper + "'");
        }
        discourse_sum += values[i];
      }
    }
    if (has_discourse && std::abs(discourse_sum - 1.0) > 1e-6) {
      throw SchemaError("discourse proportions for paper '" + paper +
                        "' do not sum to 1");
    }
  }
}

TextFeatureTable TextFeatureTable::Parse(std::istream& in,
                                         const std::string& source) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw SchemaError(source + ": empty file");
  auto header = SplitCsvLine(line);
  if (header.empty() || header[0] != "paper_id") {
    throw SchemaError(source + ": first column must be paper_id");
  }
  std::vector<std::string> columns(header.begin() + 1, header.end());
  std::map<std::string, std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw SchemaError(source + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, found " +
                        std::to_string(cells.size()));
    }
    std::vector<double> values;
    values.reserve(columns.size());
    for (size_t i = 1; i < cells.size(); ++i) {
      values.push_back(ParseDouble(cells[i], source, line_no));
    }
    if (!rows.emplace(cells[0], std::move(values)).second) {
      throw SchemaError(source + ":" + std::to_string(line_no) +
                        ": duplicate paper_id '" + cells[0] + "'");
    }
  }
  return TextFeatureTable(std::move(columns), std::move(rows));
}

TextFeatureTable TextFeatureTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open text-feature file " + path);
  return Parse(in, path);
}

void TextFeatureTable::Write(std::ostream& out) const {
  out << "paper_id";
  for (const auto& c : columns_) out << ',' << c.name;
  out << '\n';
  char buf[32];
  for (const auto& [paper, values] : rows_) {
    out << paper;
    for (double v : values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void TextFeatureTable::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  Write(out);
}

const std::vector<double>* TextFeatureTable::Row(
    std::string_view paper_id) const {
  auto it = rows_.find(std::string(paper_id));
  return it == rows_.end() ? nullptr : &it->second;
}

std::vector<std::string> TextFeatureTable::ColumnNames() const {
  std::vector<std::string> names;
  for (const auto& c : columns_) names.push_back(c.name);
  return names;
}

}  // namespace peerrank
