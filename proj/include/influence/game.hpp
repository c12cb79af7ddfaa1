#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"

namespace influence {

// Dense 2^k tables are materialized only up to this many players unless the
// caller raises the bound explicitly; weighted-majority games evaluate lazily
// at any size that fits a 64-bit coalition mask.
inline constexpr int kDefaultEnumerationBound = 24;

using CoalitionMask = std::uint64_t;

inline CoalitionMask mask_of(std::span<const int> members) {
  CoalitionMask mask = 0;
  for (int l : members) mask |= CoalitionMask{1} << l;
  return mask;
}

inline CoalitionMask mask_of(std::initializer_list<int> members) {
  return mask_of(std::span<const int>(members.begin(), members.size()));
}

/// A TU game on players 0..k-1: either a dense value table indexed by
/// coalition bitmask (bit l = player l) or a weighted-majority closed form
/// v(R) = 1 iff the weights of R sum to at least the quota.
class Game {
 public:
  static Game from_table(int k, std::vector<double> table) {
    require(k >= 1 && k <= 62, errc::invalid_argument, "player count out of range");
    require(table.size() == (std::size_t{1} << k), errc::invalid_argument,
            "table must have 2^k entries");
    require(table[0] == 0.0, errc::invalid_argument, "v(empty) must be 0");
    Game g;
    g.k_ = k;
    g.backing_ = std::move(table);
    return g;
  }

  static Game weighted_majority(std::vector<double> weights, double quota) {
    require(!weights.empty() && weights.size() <= 62, errc::invalid_argument,
            "player count out of range");
    for (double w : weights)
      require(w >= 0.0 && std::isfinite(w), errc::invalid_argument,
              "weights must be non-negative");
    require(quota > 0.0 && std::isfinite(quota), errc::invalid_argument,
            "quota must be positive");
    Game g;
    g.k_ = static_cast<int>(weights.size());
    g.backing_ = WeightedMajority{std::move(weights), quota};
    return g;
  }

  int player_count() const { return k_; }

  double value(CoalitionMask coalition) const {
    if (const auto* table = std::get_if<std::vector<double>>(&backing_)) {
      return (*table)[coalition];
    }
    const auto& wm = std::get<WeightedMajority>(backing_);
    double total = 0.0;
    for (int l = 0; l < k_; ++l)
      if (coalition >> l & 1) total += wm.weights[l];
    return total >= wm.quota ? 1.0 : 0.0;
  }

  bool table_backed() const { return std::holds_alternative<std::vector<double>>(backing_); }

  const std::vector<double>& weights() const {
    return std::get<WeightedMajority>(backing_).weights;
  }
  double quota() const { return std::get<WeightedMajority>(backing_).quota; }

  bool is_zero_one() const {
    if (const auto* table = std::get_if<std::vector<double>>(&backing_)) {
      for (double v : *table)
        if (v != 0.0 && v != 1.0) return false;
    }
    return true;
  }

  std::vector<double> materialized_table(int bound = kDefaultEnumerationBound) const {
    require(k_ <= bound, errc::enumeration_bound_exceeded,
            "materializing 2^" + std::to_string(k_) + " values exceeds the bound of 2^" +
                std::to_string(bound));
    if (const auto* table = std::get_if<std::vector<double>>(&backing_)) return *table;
    std::vector<double> table(std::size_t{1} << k_);
    for (CoalitionMask mask = 0; mask < table.size(); ++mask) table[mask] = value(mask);
    return table;
  }

 private:
  Game() = default;

  struct WeightedMajority {
    std::vector<double> weights;
    double quota;
  };

  int k_ = 0;
  std::variant<std::vector<double>, WeightedMajority> backing_;
};

inline double evaluate(const Game& g, CoalitionMask coalition) { return g.value(coalition); }

inline double evaluate(const Game& g, std::span<const int> members) {
  return g.value(mask_of(members));
}

/// True iff the game is monotone, 0/1-valued, and the grand coalition wins.
inline bool is_simple(const Game& g, int bound = kDefaultEnumerationBound) {
  if (!g.table_backed()) {
    // monotone and 0/1 by construction; simple iff the full weight meets the quota
    const auto& w = g.weights();
    return std::accumulate(w.begin(), w.end(), 0.0) >= g.quota();
  }
  const auto table = g.materialized_table(bound);
  if (table.back() != 1.0) return false;
  for (CoalitionMask mask = 0; mask < table.size(); ++mask) {
    if (table[mask] != 0.0 && table[mask] != 1.0) return false;
    for (int l = 0; l < g.player_count(); ++l)
      if ((mask >> l & 1) && table[mask] < table[mask & ~(CoalitionMask{1} << l)]) return false;
  }
  return true;
}

/// The TU game of a full-coverage binary sample: v(R) is the predicted
/// response of the unique profile that is 1 exactly on R. Requires every
/// profile of the space to appear exactly once and the all-zeros profile to
/// be labeled 0.
inline Game game_from_sample(const Dataset& d, int bound = kDefaultEnumerationBound) {
  const int k = d.k();
  for (int l = 0; l < k; ++l)
    require(d.space().state_counts[l] == 2, errc::non_binary,
            "game correspondence needs binary features");
  require(d.space().response_states == 2, errc::non_binary,
          "game correspondence needs a binary response");
  require(k <= bound, errc::enumeration_bound_exceeded,
          "2^" + std::to_string(k) + " profiles exceed the enumeration bound");

  const std::size_t full = std::size_t{1} << k;
  require(static_cast<std::size_t>(d.size()) == full && d.unit_frequencies(),
          errc::incomplete_coverage,
          "sample must contain every profile exactly once (" + std::to_string(d.size()) + " of " +
              std::to_string(full) + " present)");

  std::vector<double> table(full, -1.0);
  for (int i = 0; i < d.size(); ++i) {
    auto profile = d.profile(i);
    CoalitionMask mask = 0;
    for (int l = 0; l < k; ++l)
      if (profile[l] == 1) mask |= CoalitionMask{1} << l;
    table[mask] = d.label(i);
  }
  require(table[0] != 1.0, errc::non_zero_empty,
          "the all-zeros profile is labeled 1, so v(empty) cannot be 0");
  return Game::from_table(k, std::move(table));
}

/// Inverse correspondence: the 2^k-row dataset with y(profile) = v(support).
inline Dataset sample_from_game(const Game& g, int bound = kDefaultEnumerationBound) {
  require(g.is_zero_one(), errc::invalid_argument, "game values must be 0/1");
  const auto table = g.materialized_table(bound);
  const int k = g.player_count();
  std::vector<std::vector<int>> profiles;
  std::vector<int> labels;
  profiles.reserve(table.size());
  for (CoalitionMask mask = 0; mask < table.size(); ++mask) {
    std::vector<int> profile(k);
    for (int l = 0; l < k; ++l) profile[l] = static_cast<int>(mask >> l & 1);
    profiles.push_back(std::move(profile));
    labels.push_back(static_cast<int>(table[mask]));
  }
  FeatureSpace space{default_feature_names(k), std::vector<int>(k, 2), 2};
  return Dataset(std::move(space), profiles, std::move(labels));
}

/// Game JSON: {"weights": [...], "quota": a} or {"table": [v_0 .. v_{2^k-1}]}.
inline Game parse_game_json(const nlohmann::json& j) {
  require(j.is_object(), errc::parse_error, "game JSON must be an object");
  if (j.contains("weights")) {
    require(j.contains("quota"), errc::parse_error, "weighted game needs a quota");
    return Game::weighted_majority(j.at("weights").get<std::vector<double>>(),
                                   j.at("quota").get<double>());
  }
  if (j.contains("table")) {
    auto table = j.at("table").get<std::vector<double>>();
    int k = 0;
    while ((std::size_t{1} << k) < table.size()) ++k;
    require((std::size_t{1} << k) == table.size(), errc::parse_error,
            "table length must be a power of two");
    return Game::from_table(k, std::move(table));
  }
  fail(errc::parse_error, "game JSON needs \"weights\"/\"quota\" or \"table\"");
}

inline Game load_game(const std::string& json_path) {
  std::ifstream in(json_path);
  require(in.good(), errc::parse_error, "cannot open '" + json_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, "bad JSON in '" + json_path + "': " + e.what());
  }
  return parse_game_json(j);
}

}  // namespace influence
