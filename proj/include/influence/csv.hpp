#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"

namespace influence {

/// Column roles for CSV ingestion. Exactly one of `response_column` /
/// `predictions_path` provides the predicted response. An empty
/// `feature_columns` means: every column that is not the response, frequency
/// or ignored column is a feature, in file order.
struct CsvSchema {
  std::string response_column;
  std::string predictions_path;
  std::vector<std::string> feature_columns;
  std::string freq_column;
  std::vector<std::string> ignore_columns;
  // per-column |A_l| overrides; must cover every observed code
  std::map<std::string, int> state_count_overrides;
};

/// Loaded dataset plus the code dictionaries for columns that were not
/// integer-coded in the file (code -> original string, per column name).
struct LoadedDataset {
  Dataset dataset;
  std::map<std::string, std::vector<std::string>> dictionaries;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline bool is_integer_cell(const std::string& s) {
  if (s.empty() || s.size() > 9) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// Encodes one column: integer codes pass through, anything else is mapped by
// first appearance and recorded in the dictionary.
inline std::vector<int> encode_column(const std::string& name, const std::vector<std::string>& raw,
                                      std::map<std::string, std::vector<std::string>>& dicts) {
  bool all_integer = true;
  for (const auto& cell : raw)
    if (!is_integer_cell(cell)) {
      all_integer = false;
      break;
    }
  std::vector<int> codes;
  codes.reserve(raw.size());
  if (all_integer) {
    for (const auto& cell : raw) codes.push_back(std::stoi(cell));
    return codes;
  }
  std::unordered_map<std::string, int> index;
  auto& dict = dicts[name];
  for (const auto& cell : raw) {
    require(!cell.empty(), errc::parse_error, "empty cell in column '" + name + "'");
    auto [it, inserted] = index.emplace(cell, static_cast<int>(dict.size()));
    if (inserted) dict.push_back(cell);
    codes.push_back(it->second);
  }
  return codes;
}

}  // namespace detail

/// Reads a header CSV into a Dataset under the given column-role map.
/// Duplicate profiles with an identical response merge into multiplicities;
/// per-feature alphabet sizes default to max(2, max observed code + 1).
inline LoadedDataset load_dataset(const std::string& csv_path, const CsvSchema& schema) {
  const auto lines = detail::read_lines(csv_path);
  require(!lines.empty(), errc::empty_dataset, "'" + csv_path + "' is empty");
  const auto header = detail::split_csv_line(lines[0]);
  require(lines.size() > 1, errc::empty_dataset, "'" + csv_path + "' has no data rows");

  std::unordered_map<std::string, int> column_index;
  for (std::size_t c = 0; c < header.size(); ++c) {
    require(column_index.emplace(header[c], static_cast<int>(c)).second, errc::parse_error,
            "duplicate column '" + header[c] + "'");
  }
  auto find_column = [&](const std::string& name) {
    auto it = column_index.find(name);
    require(it != column_index.end(), errc::unknown_feature, "no column named '" + name + "'");
    return it->second;
  };

  const bool sidecar = !schema.predictions_path.empty();
  require(schema.response_column.empty() != !sidecar, errc::invalid_argument,
          "need exactly one of a response column or a predictions file");
  const int response_col = sidecar ? -1 : find_column(schema.response_column);
  const int freq_col = schema.freq_column.empty() ? -1 : find_column(schema.freq_column);

  std::vector<bool> excluded(header.size(), false);
  if (response_col >= 0) excluded[response_col] = true;
  if (freq_col >= 0) excluded[freq_col] = true;
  for (const auto& name : schema.ignore_columns) excluded[find_column(name)] = true;

  std::vector<int> feature_cols;
  if (schema.feature_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (!excluded[c]) feature_cols.push_back(static_cast<int>(c));
  } else {
    for (const auto& name : schema.feature_columns) {
      const int c = find_column(name);
      require(!excluded[c], errc::invalid_argument,
              "column '" + name + "' is both a feature and something else");
      feature_cols.push_back(c);
    }
  }
  require(!feature_cols.empty(), errc::invalid_argument, "no feature columns left");

  const std::size_t n = lines.size() - 1;
  std::vector<std::vector<std::string>> cells(header.size(), std::vector<std::string>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = detail::split_csv_line(lines[r + 1]);
    require(row.size() == header.size(), errc::parse_error,
            "row " + std::to_string(r + 2) + " has " + std::to_string(row.size()) +
                " cells, expected " + std::to_string(header.size()));
    for (std::size_t c = 0; c < header.size(); ++c) cells[c][r] = row[c];
  }

  std::map<std::string, std::vector<std::string>> dicts;
  const int k = static_cast<int>(feature_cols.size());
  std::vector<std::vector<int>> columns(k);
  FeatureSpace space;
  for (int l = 0; l < k; ++l) {
    const std::string& name = header[feature_cols[l]];
    columns[l] = detail::encode_column(name, cells[feature_cols[l]], dicts);
    int max_code = 0;
    for (int code : columns[l]) max_code = std::max(max_code, code);
    int states = std::max(2, max_code + 1);
    auto it = schema.state_count_overrides.find(name);
    if (it != schema.state_count_overrides.end()) {
      require(it->second >= max_code + 1, errc::parse_error,
              "state count override for '" + name + "' is below an observed code");
      states = it->second;
    }
    space.names.push_back(name);
    space.state_counts.push_back(states);
  }

  std::vector<int> labels;
  if (sidecar) {
    auto pred_lines = detail::read_lines(schema.predictions_path);
    if (pred_lines.size() == n + 1 && !detail::is_integer_cell(detail::trim(pred_lines[0])))
      pred_lines.erase(pred_lines.begin());
    require(pred_lines.size() == n, errc::parse_error,
            "predictions file has " + std::to_string(pred_lines.size()) + " rows, expected " +
                std::to_string(n));
    labels = detail::encode_column("y", pred_lines, dicts);
  } else {
    labels = detail::encode_column(schema.response_column, cells[response_col], dicts);
  }
  int max_label = 0;
  for (int y : labels) max_label = std::max(max_label, y);
  space.response_states = std::max(2, max_label + 1);

  std::vector<long long> freq;
  if (freq_col >= 0) {
    for (std::size_t r = 0; r < n; ++r) {
      const std::string& cell = cells[freq_col][r];
      require(detail::is_integer_cell(cell), errc::parse_error,
              "frequency cell '" + cell + "' in row " + std::to_string(r + 2));
      freq.push_back(std::stoll(cell));
      require(freq.back() >= 1, errc::parse_error,
              "frequency must be positive in row " + std::to_string(r + 2));
    }
  }

  std::vector<std::vector<int>> profiles(n, std::vector<int>(k));
  for (std::size_t r = 0; r < n; ++r)
    for (int l = 0; l < k; ++l) profiles[r][l] = columns[l][r];

  return LoadedDataset{Dataset(std::move(space), profiles, std::move(labels), std::move(freq)),
                       std::move(dicts)};
}

/// Canonical dump: columns feature_0..feature_{k-1}, y, freq.
inline void dump_dataset(const Dataset& d, std::ostream& out) {
  for (int l = 0; l < d.k(); ++l) out << "feature_" << l << ',';
  out << "y,freq\n";
  for (int i = 0; i < d.size(); ++i) {
    for (int v : d.profile(i)) out << v << ',';
    out << d.label(i) << ',' << d.freq(i) << '\n';
  }
}

inline void dump_dataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::parse_error, "cannot write '" + path + "'");
  dump_dataset(d, out);
}

/// Reads a canonical dump back (inverse of dump_dataset).
inline Dataset load_canonical(const std::string& path) {
  CsvSchema schema;
  schema.response_column = "y";
  schema.freq_column = "freq";
  return load_dataset(path, schema).dataset;
}

}  // namespace influence
