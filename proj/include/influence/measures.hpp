#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"
#include "influence/partition.hpp"

namespace influence {

/// Per-feature influence values. `raw` holds the pair counts (exact integers
/// stored as doubles); `normalized` divides by the restricted profile-space
/// size of each feature's block. The ranking sorts by normalized when
/// present, else raw, descending, with ties broken by ascending feature
/// index. The measure family is determined only up to a constant; this
/// artifact fixes C = 1 and keeps normalization a separate, explicit step.
struct InfluenceReport {
  std::string measure;  // chi | psi | weighted-psi
  std::vector<double> raw;
  std::optional<std::vector<double>> normalized;
  std::vector<long long> restricted_counts;  // |A^t| per block, set by normalize
  double constant_c = 1.0;
  Partition partition;
  DependencyModel dep;
  std::vector<int> ranking;

  const std::vector<double>& effective_values() const { return normalized ? *normalized : raw; }
};

namespace detail {

// Group rows by their profile with coordinate `skip` removed. Hashing keys
// row indices and compares the underlying profiles, so collisions are safe.
struct OffCoordinateGroups {
  const Dataset& d;
  int skip;

  struct Group {
    long long rows_one = 0, rows_zero = 0;  // distinct profiles per class
    long long mass_one = 0, mass_zero = 0;  // frequency mass per class
  };

  std::vector<Group> groups;

  explicit OffCoordinateGroups(const Dataset& dataset, int skip_coord)
      : d(dataset), skip(skip_coord) {
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> buckets;
    for (int i = 0; i < d.size(); ++i) {
      const std::uint64_t h = hash_row(i);
      auto& bucket = buckets[h];
      int group = -1;
      for (auto [row, g] : bucket)
        if (equal_rows(row, i)) {
          group = g;
          break;
        }
      if (group == -1) {
        group = static_cast<int>(groups.size());
        groups.emplace_back();
        bucket.emplace_back(i, group);
      }
      auto& entry = groups[group];
      if (d.label(i) == 1) {
        entry.rows_one += 1;
        entry.mass_one += d.freq(i);
      } else {
        entry.rows_zero += 1;
        entry.mass_zero += d.freq(i);
      }
    }
  }

  std::uint64_t hash_row(int row) const {
    auto p = d.profile(row);
    std::uint64_t h = 1469598103934665603ull;
    for (int l = 0; l < d.k(); ++l) {
      if (l == skip) continue;
      h ^= static_cast<std::uint64_t>(p[l]) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }

  bool equal_rows(int a, int b) const {
    auto pa = d.profile(a), pb = d.profile(b);
    for (int l = 0; l < d.k(); ++l)
      if (l != skip && pa[l] != pb[l]) return false;
    return true;
  }
};

// Ordered-pair count for one feature: every ordered pair of rows that agree
// off l and disagree in the response contributes once, weighted by the source
// row's multiplicity when `weighted`.
inline long long pair_count(const Dataset& d, int l, bool weighted) {
  OffCoordinateGroups groups(d, l);
  long long total = 0;
  for (const auto& g : groups.groups) {
    if (weighted)
      total += g.mass_one * g.rows_zero + g.mass_zero * g.rows_one;
    else
      total += 2 * g.rows_one * g.rows_zero;
  }
  return total;
}

inline std::vector<int> ranking_of(const std::vector<double>& values) {
  std::vector<int> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return order;
}

inline void require_binary_response(const Dataset& d) {
  require(d.space().response_states == 2, errc::non_binary_response,
          "influence measures need a binary response");
}

}  // namespace detail

/// The no-unions influence measure: for each feature, the number of ordered
/// sample-pair transitions in that feature alone that flip the predicted
/// response. Multiplicities are ignored; use weighted_psi for mass-weighted
/// counts.
inline InfluenceReport chi(const Dataset& d) {
  detail::require_binary_response(d);
  InfluenceReport report{.measure = "chi",
                         .raw = {},
                         .normalized = std::nullopt,
                         .restricted_counts = {},
                         .constant_c = 1.0,
                         .partition = singleton_partition(d.k()),
                         .dep = DependencyModel::all_positive(d.k()),
                         .ranking = {}};
  report.raw.reserve(d.k());
  for (int l = 0; l < d.k(); ++l)
    report.raw.push_back(static_cast<double>(detail::pair_count(d, l, false)));
  report.ranking = detail::ranking_of(report.raw);
  return report;
}

namespace detail {

inline InfluenceReport psi_impl(const Dataset& d, const Partition& p, const DependencyModel& dep,
                                bool weighted) {
  require_binary_response(d);
  require(p.k() == d.k(), errc::not_a_partition, "partition is over a different feature set");

  InfluenceReport report{.measure = weighted ? "weighted-psi" : "psi",
                         .raw = std::vector<double>(d.k(), 0.0),
                         .normalized = std::nullopt,
                         .restricted_counts = {},
                         .constant_c = 1.0,
                         .partition = p,
                         .dep = dep,
                         .ranking = {}};
  for (int t = 0; t < p.block_count(); ++t) {
    const Dataset restricted = restrict_sample(d, p, dep, t);
    for (int l : p.block(t))
      report.raw[l] = static_cast<double>(pair_count(restricted, l, weighted));
  }
  report.ranking = ranking_of(report.raw);
  return report;
}

}  // namespace detail

/// The partition-aware influence measure: for a feature in block t, the pair
/// count is taken over the subsample M^t where every other union adheres to
/// the dependency model. With the all-singletons partition this reduces to
/// chi exactly.
inline InfluenceReport psi(const Dataset& d, const Partition& p, const DependencyModel& dep) {
  return detail::psi_impl(d, p, dep, false);
}

/// Frequency-weighted variant: each ordered pair is weighted by the source
/// row's multiplicity n(i) (the partner row contributes with weight one).
/// Reduces to psi when every multiplicity is one.
inline InfluenceReport weighted_psi(const Dataset& d, const Partition& p,
                                    const DependencyModel& dep) {
  return detail::psi_impl(d, p, dep, true);
}

/// Divides each feature's raw count by |A^t| of its block. Under full
/// coverage, binary features and positive associations this equals the
/// Banzhaf-Owen value of the corresponding game.
inline InfluenceReport normalize(const InfluenceReport& r, const FeatureSpace& space,
                                 const Partition& p, const DependencyModel& dep) {
  for (int l = 0; l < space.k(); ++l)
    require(space.state_counts[l] == 2, errc::non_binary_feature,
            "normalization needs binary features");
  require(static_cast<int>(r.raw.size()) == space.k(), errc::length_mismatch,
          "report does not match the feature space");
  require(r.partition == p, errc::invalid_argument,
          "normalization partition must match the report's partition");

  InfluenceReport out = r;
  out.restricted_counts.clear();
  for (int t = 0; t < p.block_count(); ++t)
    out.restricted_counts.push_back(restricted_space_count(space, p, dep, t));
  out.normalized.emplace(space.k());
  for (int l = 0; l < space.k(); ++l)
    (*out.normalized)[l] =
        r.raw[l] / static_cast<double>(out.restricted_counts[p.block_of(l)]);
  out.ranking = detail::ranking_of(*out.normalized);
  return out;
}

/// Ranked (feature, value) pairs, best first; ties by ascending index.
inline std::vector<std::pair<int, double>> rank(const InfluenceReport& r,
                                                std::optional<int> top_k = std::nullopt) {
  const auto& values = r.effective_values();
  std::size_t count = r.ranking.size();
  if (top_k) count = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(0, *top_k)));
  std::vector<std::pair<int, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(r.ranking[i], values[r.ranking[i]]);
  return out;
}

/// Sample Pearson correlation coefficient. Constant vectors have no
/// correlation and are rejected; callers that mirror tabulated "-" cells
/// catch that case.
inline double pearson(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), errc::length_mismatch, "vectors differ in length");
  require(a.size() >= 2, errc::length_mismatch, "need at least two entries");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a, db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  require(var_a > 0.0 && var_b > 0.0, errc::constant_vector,
          "correlation of a constant vector is undefined");
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace influence
