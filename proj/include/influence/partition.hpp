#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"

namespace influence {

/// Disjoint non-empty blocks (a priori unions) covering the feature index
/// set 0..k-1. Block order is preserved as given; members are kept sorted.
class Partition {
 public:
  Partition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
    require(k_ >= 1, errc::not_a_partition, "partition needs k >= 1");
    block_of_.assign(k_, -1);
    for (std::size_t t = 0; t < blocks_.size(); ++t) {
      auto& block = blocks_[t];
      require(!block.empty(), errc::not_a_partition, "empty block");
      std::sort(block.begin(), block.end());
      for (int f : block) {
        require(f >= 0 && f < k_, errc::not_a_partition,
                "feature index " + std::to_string(f) + " out of range");
        require(block_of_[f] == -1, errc::not_a_partition,
                "feature " + std::to_string(f) + " appears in two blocks");
        block_of_[f] = static_cast<int>(t);
      }
    }
    for (int f = 0; f < k_; ++f)
      require(block_of_[f] != -1, errc::not_a_partition,
              "feature " + std::to_string(f) + " is not covered");
  }

  int k() const { return k_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& block(int t) const { return blocks_[t]; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_of(int feature) const { return block_of_[feature]; }
  bool is_singletons() const { return block_count() == k_; }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.k_ == b.k_ && a.blocks_ == b.blocks_;
  }

 private:
  int k_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

inline Partition singleton_partition(int k) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) blocks.push_back({f});
  return Partition(k, std::move(blocks));
}

/// Parses a JSON array of arrays of feature names or zero-based indices.
inline Partition parse_partition_json(const nlohmann::json& j, const FeatureSpace& space) {
  require(j.is_array(), errc::not_a_partition, "partition JSON must be an array of arrays");
  std::vector<std::vector<int>> blocks;
  for (const auto& jb : j) {
    require(jb.is_array(), errc::not_a_partition, "partition JSON must be an array of arrays");
    std::vector<int> block;
    for (const auto& member : jb) {
      if (member.is_number_integer()) {
        block.push_back(member.get<int>());
      } else if (member.is_string()) {
        const std::string name = member.get<std::string>();
        auto it = std::find(space.names.begin(), space.names.end(), name);
        require(it != space.names.end(), errc::unknown_feature, "unknown feature '" + name + "'");
        block.push_back(static_cast<int>(it - space.names.begin()));
      } else {
        fail(errc::not_a_partition, "partition members must be names or indices");
      }
    }
    blocks.push_back(std::move(block));
  }
  return Partition(space.k(), std::move(blocks));
}

inline Partition parse_partition(const std::string& json_path, const FeatureSpace& space) {
  std::ifstream in(json_path);
  require(in.good(), errc::parse_error, "cannot open '" + json_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, "bad JSON in '" + json_path + "': " + e.what());
  }
  return parse_partition_json(j, space);
}

/// Moves q out of its block into a new singleton appended last.
inline Partition detach(const Partition& p, int q) {
  require(q >= 0 && q < p.k(), errc::invalid_argument, "feature index out of range");
  std::vector<std::vector<int>> blocks;
  for (int t = 0; t < p.block_count(); ++t) {
    std::vector<int> block;
    for (int f : p.block(t))
      if (f != q) block.push_back(f);
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  blocks.push_back({q});
  return Partition(p.k(), std::move(blocks));
}

/// Association sign per feature, anchored to the lowest-indexed feature of
/// its block (the representative, which is always positive). Signs on
/// singleton blocks are vacuous.
class DependencyModel {
 public:
  static DependencyModel all_positive(int k) { return DependencyModel(std::vector<bool>(k, false)); }

  static DependencyModel from_negatives(int k, const std::vector<int>& negative_features) {
    std::vector<bool> negative(k, false);
    for (int f : negative_features) {
      require(f >= 0 && f < k, errc::invalid_argument, "feature index out of range");
      negative[f] = true;
    }
    return DependencyModel(std::move(negative));
  }

  int k() const { return static_cast<int>(negative_.size()); }
  bool is_negative(int feature) const { return negative_[feature]; }

  bool all_positive_signs() const {
    return std::none_of(negative_.begin(), negative_.end(), [](bool b) { return b; });
  }

 private:
  explicit DependencyModel(std::vector<bool> negative) : negative_(std::move(negative)) {}
  std::vector<bool> negative_;
};

/// Parses an optional JSON map feature -> "+"/"-"; omitted features are "+".
inline DependencyModel parse_dependency_model(const nlohmann::json& j, const FeatureSpace& space) {
  require(j.is_object(), errc::parse_error, "dependency model JSON must be an object");
  std::vector<int> negatives;
  for (const auto& [key, value] : j.items()) {
    auto it = std::find(space.names.begin(), space.names.end(), key);
    require(it != space.names.end(), errc::unknown_feature, "unknown feature '" + key + "'");
    require(value.is_string(), errc::parse_error, "dependency sign must be \"+\" or \"-\"");
    const std::string sign = value.get<std::string>();
    if (sign == "-" || sign == "−") {
      negatives.push_back(static_cast<int>(it - space.names.begin()));
    } else {
      require(sign == "+", errc::parse_error, "dependency sign must be \"+\" or \"-\"");
    }
  }
  return DependencyModel::from_negatives(space.k(), negatives);
}

inline DependencyModel parse_dependency_model(const std::string& json_path,
                                              const FeatureSpace& space) {
  std::ifstream in(json_path);
  require(in.good(), errc::parse_error, "cannot open '" + json_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, "bad JSON in '" + json_path + "': " + e.what());
  }
  return parse_dependency_model(j, space);
}

namespace detail {

// Shared precondition checks for the M^t / A^t restrictions: signs anchor to
// the block representative, and negative signs require binary features.
inline void check_dependency(const FeatureSpace& space, const Partition& p,
                             const DependencyModel& dep, int t) {
  require(p.k() == space.k(), errc::invalid_argument, "partition does not match feature space");
  require(dep.k() == space.k(), errc::invalid_argument,
          "dependency model does not match feature space");
  require(t >= 0 && t < p.block_count(), errc::invalid_argument, "block index out of range");
  for (int u = 0; u < p.block_count(); ++u) {
    const auto& block = p.block(u);
    require(!dep.is_negative(block.front()), errc::invalid_argument,
            "block representative (feature " + std::to_string(block.front()) +
                ") must have a positive sign");
    if (u == t) continue;
    const bool any_negative =
        std::any_of(block.begin(), block.end(), [&](int f) { return dep.is_negative(f); });
    if (any_negative)
      for (int f : block)
        require(space.state_counts[f] == 2, errc::negative_sign_on_non_binary,
                "negative dependency in a block with non-binary feature " + std::to_string(f));
  }
}

// Does the profile adhere to the dependency model in every block except t?
inline bool adheres(std::span<const int> profile, const Partition& p, const DependencyModel& dep,
                    int t) {
  for (int u = 0; u < p.block_count(); ++u) {
    if (u == t) continue;
    const auto& block = p.block(u);
    const int rep_value = profile[block.front()];
    for (std::size_t i = 1; i < block.size(); ++i) {
      const int f = block[i];
      const int expected = dep.is_negative(f) ? 1 - rep_value : rep_value;
      if (profile[f] != expected) return false;
    }
  }
  return true;
}

}  // namespace detail

/// The subsample M^t: rows where, within every union other than P_t, the
/// features adhere to the dependency model (equal to the representative, or
/// opposite for negative binary dependencies). Multiplicities are preserved.
inline Dataset restrict_sample(const Dataset& d, const Partition& p, const DependencyModel& dep,
                               int t) {
  detail::check_dependency(d.space(), p, dep, t);
  std::vector<std::vector<int>> profiles;
  std::vector<int> labels;
  std::vector<long long> freq;
  for (int i = 0; i < d.size(); ++i) {
    auto profile = d.profile(i);
    if (!detail::adheres(profile, p, dep, t)) continue;
    profiles.emplace_back(profile.begin(), profile.end());
    labels.push_back(d.label(i));
    freq.push_back(d.freq(i));
  }
  return Dataset(d.space(), profiles, std::move(labels), std::move(freq));
}

/// |A^t|: the number of full profiles adhering to the dependency model
/// outside block t. Block t contributes its whole alphabet product; every
/// other block contributes the number of admissible representative values.
/// All binary with positive signs gives 2^((m-1) + |P_t|).
inline long long restricted_space_count(const FeatureSpace& space, const Partition& p,
                                        const DependencyModel& dep, int t) {
  detail::check_dependency(space, p, dep, t);
  unsigned long long count = 1;
  auto multiply = [&count](long long factor) {
    require(factor >= 1, errc::invalid_argument, "empty restricted space");
    unsigned long long next;
    require(!__builtin_mul_overflow(count, static_cast<unsigned long long>(factor), &next) &&
                next <= (1ull << 62),
            errc::enumeration_bound_exceeded, "restricted space count exceeds 2^62");
    count = next;
  };
  for (int u = 0; u < p.block_count(); ++u) {
    const auto& block = p.block(u);
    if (u == t) {
      for (int f : block) multiply(space.state_counts[f]);
      continue;
    }
    // admissible representative values: positive-signed members cap the range
    int admissible = space.state_counts[block.front()];
    for (int f : block)
      if (!dep.is_negative(f)) admissible = std::min(admissible, space.state_counts[f]);
    multiply(admissible);
  }
  return static_cast<long long>(count);
}

}  // namespace influence
