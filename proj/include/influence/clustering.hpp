#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"
#include "influence/partition.hpp"

namespace influence {

enum class Linkage { complete, average, single };

inline Linkage parse_linkage(const std::string& name) {
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  if (name == "single") return Linkage::single;
  fail(errc::invalid_argument, "unknown linkage '" + name + "'");
}

namespace detail {

inline double jaccard_from_counts(long long both, long long either) {
  if (either == 0) return 0.0;  // two all-zero columns are identical
  return 1.0 - static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace detail

/// Jaccard distance 1 - |a AND b| / |a OR b| between two binary columns;
/// defined as 0 when both columns are all zero.
inline double jaccard_distance(std::span<const int> a, std::span<const int> b) {
  require(a.size() == b.size(), errc::length_mismatch, "columns differ in length");
  long long both = 0, either = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require((a[i] == 0 || a[i] == 1) && (b[i] == 0 || b[i] == 1), errc::non_binary_column,
            "jaccard distance needs 0/1 columns");
    both += (a[i] == 1 && b[i] == 1);
    either += (a[i] == 1 || b[i] == 1);
  }
  return detail::jaccard_from_counts(both, either);
}

/// Agglomerative clustering of the feature columns under Jaccard distance,
/// merged until k_clusters blocks remain. Rows count with their multiplicity.
/// Ties are broken on the lexicographically smallest pair of cluster ids,
/// a cluster id being its smallest member, so the result is deterministic.
inline Partition hierarchical_partition(const Dataset& d, int k_clusters,
                                        Linkage linkage = Linkage::complete) {
  const int k = d.k();
  for (int l = 0; l < k; ++l)
    require(d.space().state_counts[l] == 2, errc::non_binary_feature,
            "clustering needs binary features; '" + d.space().names[l] + "' is not");
  require(k_clusters >= 1 && k_clusters <= k, errc::bad_cluster_count,
          "cluster count must be in 1..k");

  // pairwise column distances, duplicate rows weighted by multiplicity
  std::vector<std::vector<double>> dist(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      long long both = 0, either = 0;
      for (int i = 0; i < d.size(); ++i) {
        auto row = d.profile(i);
        both += d.freq(i) * static_cast<long long>(row[a] == 1 && row[b] == 1);
        either += d.freq(i) * static_cast<long long>(row[a] == 1 || row[b] == 1);
      }
      dist[a][b] = dist[b][a] = detail::jaccard_from_counts(both, either);
    }
  }

  std::vector<std::vector<int>> clusters;
  clusters.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) clusters.push_back({l});

  auto cluster_distance = [&](const std::vector<int>& x, const std::vector<int>& y) {
    double best = (linkage == Linkage::single) ? std::numeric_limits<double>::infinity() : 0.0;
    double sum = 0.0;
    for (int a : x)
      for (int b : y) {
        const double v = dist[a][b];
        sum += v;
        if (linkage == Linkage::single)
          best = std::min(best, v);
        else
          best = std::max(best, v);
      }
    if (linkage == Linkage::average) return sum / (static_cast<double>(x.size()) * y.size());
    return best;
  };

  while (static_cast<int>(clusters.size()) > k_clusters) {
    int best_i = -1, best_j = -1;
    double best_d = std::numeric_limits<double>::infinity();
    // clusters stay ordered by smallest member, so scanning (i, j) in order
    // realizes the lexicographic tie-break on cluster ids
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double v = cluster_distance(clusters[i], clusters[j]);
        if (v < best_d) {
          best_d = v;
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
        }
      }
    auto& merged = clusters[best_i];
    merged.insert(merged.end(), clusters[best_j].begin(), clusters[best_j].end());
    std::sort(merged.begin(), merged.end());
    clusters.erase(clusters.begin() + best_j);
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition(k, std::move(clusters));
}

}  // namespace influence
