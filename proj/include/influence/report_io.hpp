#pragma once

#include <cmath>
#include <cstdio>
#include <iostream>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "influence/errors.hpp"
#include "influence/indices.hpp"
#include "influence/measures.hpp"

namespace influence {

/// On-disk report: one row per feature with the raw value, the normalized
/// value when present, and the 1-based rank. Feature indices and partition
/// blocks are 1-based in files; everything in memory stays 0-based.
struct ReportFile {
  std::string measure;
  std::vector<std::string> feature_names;
  std::vector<double> raw;
  std::optional<std::vector<double>> normalized;
  std::optional<std::vector<double>> stderrs;
  std::vector<std::vector<int>> partition_blocks;
  std::vector<int> negative_features;
  std::vector<long long> restricted_counts;
  double constant_c = 1.0;
  std::vector<int> ranking;

  const std::vector<double>& effective_values() const { return normalized ? *normalized : raw; }
};

namespace detail {

// shortest-form decimal that still distinguishes values at report precision
inline std::string format_number(double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

inline std::string format_blocks(const std::vector<std::vector<int>>& blocks) {
  std::ostringstream out;
  out << '[';
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    if (t) out << ',';
    out << '[';
    for (std::size_t i = 0; i < blocks[t].size(); ++i) {
      if (i) out << ',';
      out << blocks[t][i] + 1;
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace detail

inline ReportFile make_report(const InfluenceReport& r, std::vector<std::string> names) {
  return ReportFile{r.measure,
                    std::move(names),
                    r.raw,
                    r.normalized,
                    std::nullopt,
                    r.partition.blocks(),
                    [&] {
                      std::vector<int> negatives;
                      for (int l = 0; l < r.dep.k(); ++l)
                        if (r.dep.is_negative(l)) negatives.push_back(l);
                      return negatives;
                    }(),
                    r.restricted_counts,
                    r.constant_c,
                    r.ranking};
}

inline ReportFile make_report(const IndexVector& v, const Partition& p,
                              std::vector<std::string> names) {
  ReportFile report{v.method,
                    std::move(names),
                    v.values,
                    std::nullopt,
                    v.stderrs,
                    p.blocks(),
                    {},
                    {},
                    1.0,
                    {}};
  report.ranking = detail::ranking_of(v.values);
  return report;
}

inline void write_report_tsv(const ReportFile& r, std::ostream& out) {
  out << "# influence report\n";
  out << "# measure: " << r.measure << '\n';
  out << "# constant_C: " << detail::format_number(r.constant_c) << '\n';
  out << "# features: ";
  for (std::size_t l = 0; l < r.feature_names.size(); ++l)
    out << (l ? "," : "") << r.feature_names[l];
  out << '\n';
  out << "# partition: " << detail::format_blocks(r.partition_blocks) << '\n';
  if (!r.negative_features.empty()) {
    out << "# negative_features: ";
    for (std::size_t i = 0; i < r.negative_features.size(); ++i)
      out << (i ? "," : "") << r.negative_features[i] + 1;
    out << '\n';
  }
  if (!r.restricted_counts.empty()) {
    out << "# restricted_space: [";
    for (std::size_t t = 0; t < r.restricted_counts.size(); ++t)
      out << (t ? "," : "") << r.restricted_counts[t];
    out << "]\n";
  }

  std::vector<int> rank_of(r.feature_names.size(), 0);
  for (std::size_t pos = 0; pos < r.ranking.size(); ++pos) rank_of[r.ranking[pos]] = 1 + (int)pos;

  out << "feature\tname\traw\tnormalized\trank";
  if (r.stderrs) out << "\tstderr";
  out << '\n';
  for (std::size_t l = 0; l < r.feature_names.size(); ++l) {
    out << (l + 1) << '\t' << r.feature_names[l] << '\t' << detail::format_number(r.raw[l])
        << '\t' << (r.normalized ? detail::format_number((*r.normalized)[l]) : "-") << '\t'
        << rank_of[l];
    if (r.stderrs) out << '\t' << detail::format_number((*r.stderrs)[l]);
    out << '\n';
  }
}

inline void write_report_json(const ReportFile& r, std::ostream& out) {
  nlohmann::json j;
  j["measure"] = r.measure;
  j["method"] = r.measure;
  j["features"] = r.feature_names;
  j["values"] = r.raw;
  if (r.normalized)
    j["normalized"] = *r.normalized;
  else
    j["normalized"] = nullptr;
  if (r.stderrs) j["stderr"] = *r.stderrs;
  j["constant_C"] = r.constant_c;
  {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& block : r.partition_blocks) {
      nlohmann::json jb = nlohmann::json::array();
      for (int f : block) jb.push_back(f + 1);
      blocks.push_back(std::move(jb));
    }
    j["partition"] = std::move(blocks);
  }
  if (!r.negative_features.empty()) {
    nlohmann::json negatives = nlohmann::json::array();
    for (int f : r.negative_features) negatives.push_back(f + 1);
    j["negative_features"] = std::move(negatives);
  }
  if (!r.restricted_counts.empty()) j["restricted_space"] = r.restricted_counts;
  {
    nlohmann::json order = nlohmann::json::array();
    for (int f : r.ranking) order.push_back(f + 1);
    j["ranking"] = std::move(order);
  }
  out << j.dump(2) << '\n';
}

/// Reads the TSV form back; used by the comparison command.
inline ReportFile read_report_tsv(std::istream& in, const std::string& origin = "report") {
  ReportFile r;
  std::string line;
  bool header_seen = false;
  bool has_normalized_column = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "measure") r.measure = value;
      if (key == "features") {
        std::istringstream names(value);
        std::string name;
        while (std::getline(names, name, ',')) r.feature_names.push_back(name);
      }
      continue;
    }
    std::vector<std::string> cells;
    {
      std::istringstream fields(line);
      std::string cell;
      while (std::getline(fields, cell, '\t')) cells.push_back(cell);
    }
    if (!header_seen) {
      require(cells.size() >= 5 && cells[0] == "feature", errc::parse_error,
              origin + ": unexpected column header");
      header_seen = true;
      continue;
    }
    require(cells.size() >= 5, errc::parse_error, origin + ": short data row");
    try {
      r.raw.push_back(std::stod(cells[2]));
      if (cells[3] != "-") {
        if (!r.normalized) r.normalized.emplace();
        r.normalized->push_back(std::stod(cells[3]));
        has_normalized_column = true;
      } else {
        require(!has_normalized_column, errc::parse_error,
                origin + ": mixed normalized and '-' cells");
      }
    } catch (const std::exception&) {
      fail(errc::parse_error, origin + ": bad numeric cell");
    }
  }
  require(header_seen && !r.raw.empty(), errc::parse_error, origin + ": no data rows");
  require(r.feature_names.size() == r.raw.size(), errc::parse_error,
          origin + ": feature list does not match the data rows");
  r.ranking = detail::ranking_of(r.effective_values());
  return r;
}

inline void write_report(const ReportFile& r, const std::string& path, const std::string& format) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (path != "-") {
    file.open(path);
    require(file.good(), errc::parse_error, "cannot write '" + path + "'");
    out = &file;
  }
  if (format == "json")
    write_report_json(r, *out);
  else
    write_report_tsv(r, *out);
}

inline ReportFile read_report(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open '" + path + "'");
  return read_report_tsv(in, path);
}

}  // namespace influence
