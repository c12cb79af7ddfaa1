#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "influence/errors.hpp"
#include "influence/rng.hpp"

namespace influence {

/// Feature index set with per-feature state alphabets and the response
/// alphabet. States are integer codes 0..state_counts[l]-1, the response is
/// 0..response_states-1 (2 for everything the measures support).
struct FeatureSpace {
  std::vector<std::string> names;
  std::vector<int> state_counts;
  int response_states = 2;

  int k() const { return static_cast<int>(state_counts.size()); }

  void validate() const {
    require(k() >= 1, errc::invalid_argument, "feature space needs at least one feature");
    require(names.size() == state_counts.size(), errc::invalid_argument,
            "feature names and state counts disagree in length");
    for (int l = 0; l < k(); ++l)
      require(state_counts[l] >= 2, errc::invalid_argument,
              "feature '" + names[l] + "' needs at least two states");
    require(response_states >= 2, errc::invalid_argument, "response needs at least two states");
  }

  // names are presentation metadata and excluded from equality
  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) {
    return a.state_counts == b.state_counts && a.response_states == b.response_states;
  }
};

inline std::vector<std::string> default_feature_names(int k, const std::string& prefix = "f") {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) names.push_back(prefix + std::to_string(l + 1));
  return names;
}

/// A sample of distinct (profile, predicted response) rows with positive
/// multiplicities. Duplicate profiles with an identical label are merged at
/// construction; the same profile with two labels is rejected, a profile is
/// one classifier output. Immutable after construction.
class Dataset {
 public:
  Dataset(FeatureSpace space, const std::vector<std::vector<int>>& profiles,
          std::vector<int> labels, std::vector<long long> freq = {})
      : space_(std::move(space)) {
    space_.validate();
    const int k = space_.k();
    require(profiles.size() == labels.size(), errc::invalid_argument,
            "profile and label counts disagree");
    if (freq.empty()) freq.assign(profiles.size(), 1);
    require(freq.size() == profiles.size(), errc::invalid_argument,
            "frequency and profile counts disagree");

    std::unordered_map<std::uint64_t, std::vector<int>> seen;  // hash -> row indices
    cells_.reserve(profiles.size() * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      require(static_cast<int>(profiles[i].size()) == k, errc::invalid_argument,
              "profile " + std::to_string(i) + " has wrong arity");
      for (int l = 0; l < k; ++l) {
        const int code = profiles[i][l];
        require(code >= 0 && code < space_.state_counts[l], errc::invalid_argument,
                "state code out of range in profile " + std::to_string(i));
      }
      require(labels[i] >= 0 && labels[i] < space_.response_states, errc::invalid_argument,
              "response code out of range in row " + std::to_string(i));
      require(freq[i] >= 1, errc::invalid_argument, "frequency must be positive");

      const int existing = find_row(seen, profiles[i]);
      if (existing >= 0) {
        require(labels_[existing] == labels[i], errc::conflicting_label,
                "profile appears with two different responses (rows " +
                    std::to_string(existing) + " and " + std::to_string(i) + ")");
        freq_[existing] += freq[i];
        continue;
      }
      const int row = size();
      seen[profile_hash(profiles[i])].push_back(row);
      cells_.insert(cells_.end(), profiles[i].begin(), profiles[i].end());
      labels_.push_back(labels[i]);
      freq_.push_back(freq[i]);
    }
  }

  const FeatureSpace& space() const { return space_; }
  int k() const { return space_.k(); }
  int size() const { return static_cast<int>(labels_.size()); }

  long long total_mass() const {
    return std::accumulate(freq_.begin(), freq_.end(), 0ll);
  }

  std::span<const int> profile(int row) const {
    return {cells_.data() + static_cast<std::size_t>(row) * k(), static_cast<std::size_t>(k())};
  }
  int label(int row) const { return labels_[row]; }
  long long freq(int row) const { return freq_[row]; }
  const std::vector<long long>& frequencies() const { return freq_; }

  bool unit_frequencies() const {
    return std::all_of(freq_.begin(), freq_.end(), [](long long f) { return f == 1; });
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.space_ == b.space_ && a.cells_ == b.cells_ && a.labels_ == b.labels_ &&
           a.freq_ == b.freq_;
  }

 private:
  static std::uint64_t profile_hash(const std::vector<int>& p) {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : p) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }

  int find_row(const std::unordered_map<std::uint64_t, std::vector<int>>& seen,
               const std::vector<int>& p) const {
    auto it = seen.find(profile_hash(p));
    if (it == seen.end()) return -1;
    for (int row : it->second) {
      auto existing = profile(row);
      if (std::equal(existing.begin(), existing.end(), p.begin(), p.end())) return row;
    }
    return -1;
  }

  FeatureSpace space_;
  std::vector<int> cells_;  // row-major, size() * k()
  std::vector<int> labels_;
  std::vector<long long> freq_;
};

/// Row indices split by response value: W has the rows with y=1, L the rows
/// with y=0.
struct WlView {
  std::vector<int> w;
  std::vector<int> l;
};

inline WlView wl_view(const Dataset& d) {
  require(d.space().response_states == 2, errc::non_binary_response,
          "W/L split needs a binary response");
  WlView view;
  for (int i = 0; i < d.size(); ++i) (d.label(i) == 1 ? view.w : view.l).push_back(i);
  return view;
}

/// Draws exactly `per_class` frequency mass from each response class, without
/// replacement over the expanded sample, using the pinned generator. Rows keep
/// their original order; multiplicities record how often each profile was
/// drawn. Class y=1 is drawn first, then y=0, from one generator stream.
inline Dataset balanced_subsample(const Dataset& d, long long per_class, std::uint64_t seed) {
  const WlView view = wl_view(d);
  require(per_class >= 1, errc::invalid_argument, "per-class count must be positive");

  std::vector<long long> drawn(d.size(), 0);
  Rng rng(seed);
  for (const std::vector<int>* side : {&view.w, &view.l}) {
    std::vector<int> units;  // row index, repeated freq times, in row order
    for (int row : *side)
      for (long long c = 0; c < d.freq(row); ++c) units.push_back(row);
    require(static_cast<long long>(units.size()) >= per_class, errc::insufficient_class_mass,
            "class has mass " + std::to_string(units.size()) + ", need " +
                std::to_string(per_class));
    for (long long i = 0; i < per_class; ++i) {
      const auto j = i + static_cast<long long>(rng.next_below(units.size() - i));
      std::swap(units[i], units[j]);
      ++drawn[units[i]];
    }
  }

  std::vector<std::vector<int>> profiles;
  std::vector<int> labels;
  std::vector<long long> freq;
  for (int row = 0; row < d.size(); ++row) {
    if (drawn[row] == 0) continue;
    auto p = d.profile(row);
    profiles.emplace_back(p.begin(), p.end());
    labels.push_back(d.label(row));
    freq.push_back(drawn[row]);
  }
  return Dataset(d.space(), profiles, std::move(labels), std::move(freq));
}

inline void require_bijection(const std::vector<int>& map, int domain, const char* what) {
  require(static_cast<int>(map.size()) == domain, errc::not_a_bijection,
          std::string(what) + " has wrong domain size");
  std::vector<bool> hit(domain, false);
  for (int v : map) {
    require(v >= 0 && v < domain && !hit[v], errc::not_a_bijection,
            std::string(what) + " is not a bijection");
    hit[v] = true;
  }
}

/// Maps the states of feature l through the bijection tau (tau[old] = new).
inline Dataset relabel_states(const Dataset& d, int l, const std::vector<int>& tau) {
  require(l >= 0 && l < d.k(), errc::invalid_argument, "feature index out of range");
  require_bijection(tau, d.space().state_counts[l], "state relabeling");
  std::vector<std::vector<int>> profiles;
  std::vector<int> labels;
  profiles.reserve(d.size());
  for (int i = 0; i < d.size(); ++i) {
    auto p = d.profile(i);
    std::vector<int> q(p.begin(), p.end());
    q[l] = tau[q[l]];
    profiles.push_back(std::move(q));
    labels.push_back(d.label(i));
  }
  return Dataset(d.space(), profiles, std::move(labels), d.frequencies());
}

/// Moves column l of the input to column sigma[l] of the output, permuting
/// names and alphabets consistently.
inline Dataset permute_features(const Dataset& d, const std::vector<int>& sigma) {
  require_bijection(sigma, d.k(), "feature permutation");
  FeatureSpace space = d.space();
  for (int l = 0; l < d.k(); ++l) {
    space.names[sigma[l]] = d.space().names[l];
    space.state_counts[sigma[l]] = d.space().state_counts[l];
  }
  std::vector<std::vector<int>> profiles;
  std::vector<int> labels;
  profiles.reserve(d.size());
  for (int i = 0; i < d.size(); ++i) {
    auto p = d.profile(i);
    std::vector<int> q(d.k());
    for (int l = 0; l < d.k(); ++l) q[sigma[l]] = p[l];
    profiles.push_back(std::move(q));
    labels.push_back(d.label(i));
  }
  return Dataset(std::move(space), profiles, std::move(labels), d.frequencies());
}

}  // namespace influence
