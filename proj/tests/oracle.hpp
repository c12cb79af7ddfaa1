#pragma once

// Brute-force reference implementations, used only by the test suites.
// These deliberately share no code with the library paths they check:
// plain nested loops, no hashing, no bitmask subset expansion.

#include <vector>

#include "influence/dataset.hpp"
#include "influence/errors.hpp"
#include "influence/game.hpp"
#include "influence/partition.hpp"

namespace influence::oracle {

/// chi by the literal double loop over ordered row pairs: rows that agree on
/// every coordinate except possibly l contribute |Y_i - Y_j|.
inline std::vector<long long> chi_naive(const Dataset& d) {
  require(d.space().response_states == 2, errc::non_binary_response,
          "oracle needs a binary response");
  std::vector<long long> counts(d.k(), 0);
  for (int l = 0; l < d.k(); ++l) {
    for (int i = 0; i < d.size(); ++i) {
      for (int j = 0; j < d.size(); ++j) {
        bool matches = true;
        for (int c = 0; c < d.k(); ++c) {
          if (c == l) continue;
          if (d.profile(i)[c] != d.profile(j)[c]) {
            matches = false;
            break;
          }
        }
        if (matches) counts[l] += std::abs(d.label(i) - d.label(j));
      }
    }
  }
  return counts;
}

/// The frequency-weighted variant: the source row i contributes with its
/// multiplicity, the partner row with weight one.
inline std::vector<long long> chi_naive_weighted(const Dataset& d) {
  require(d.space().response_states == 2, errc::non_binary_response,
          "oracle needs a binary response");
  std::vector<long long> counts(d.k(), 0);
  for (int l = 0; l < d.k(); ++l) {
    for (int i = 0; i < d.size(); ++i) {
      for (int j = 0; j < d.size(); ++j) {
        bool matches = true;
        for (int c = 0; c < d.k(); ++c) {
          if (c == l) continue;
          if (d.profile(i)[c] != d.profile(j)[c]) {
            matches = false;
            break;
          }
        }
        if (matches) counts[l] += d.freq(i) * std::abs(d.label(i) - d.label(j));
      }
    }
  }
  return counts;
}

struct NaiveIndex {
  std::vector<double> values;
  std::vector<long long> swings;  // meaningful for 0/1 games
};

/// Banzhaf by the literal loop over players and all coalitions of the others.
inline NaiveIndex banzhaf_naive(const Game& g) {
  const int k = g.player_count();
  require(k <= 16, errc::enumeration_bound_exceeded, "oracle is capped at 16 players");
  const bool integral = g.is_zero_one();
  NaiveIndex result{std::vector<double>(k, 0.0), std::vector<long long>(k, 0)};
  for (int l = 0; l < k; ++l) {
    long long swings = 0;
    long double acc = 0.0L;
    for (CoalitionMask coalition = 0; coalition < (CoalitionMask{1} << k); ++coalition) {
      if (coalition >> l & 1) continue;  // only coalitions without the player
      const double gain = g.value(coalition | (CoalitionMask{1} << l)) - g.value(coalition);
      if (integral)
        swings += static_cast<long long>(gain);
      else
        acc += gain;
    }
    double denom = 1.0;
    for (int i = 0; i < k - 1; ++i) denom *= 2.0;
    result.swings[l] = swings;
    result.values[l] = integral ? static_cast<double>(swings) / denom
                                : static_cast<double>(acc / static_cast<long double>(denom));
  }
  return result;
}

/// Banzhaf-Owen by the literal triple loop: player, subsets of the other
/// unions (via a boolean odometer), subsets of the own block.
inline NaiveIndex bo_naive(const Game& g, const Partition& p) {
  const int k = g.player_count();
  require(p.k() == k, errc::not_a_partition, "partition is over a different player set");
  require(k <= 16, errc::enumeration_bound_exceeded, "oracle is capped at 16 players");
  const bool integral = g.is_zero_one();
  NaiveIndex result{std::vector<double>(k, 0.0), std::vector<long long>(k, 0)};

  // least-significant-first odometer over `size` booleans
  auto advance = [](std::vector<bool>& flags) {
    for (std::size_t i = 0; i < flags.size(); ++i) {
      flags[i] = !flags[i];
      if (flags[i]) return true;
    }
    return false;
  };

  for (int l = 0; l < k; ++l) {
    const int t = p.block_of(l);
    std::vector<int> other_blocks;
    for (int u = 0; u < p.block_count(); ++u)
      if (u != t) other_blocks.push_back(u);
    std::vector<int> teammates;
    for (int f : p.block(t))
      if (f != l) teammates.push_back(f);

    long long swings = 0;
    long double acc = 0.0L;
    std::vector<bool> include_block(other_blocks.size(), false);
    do {
      std::vector<bool> include_mate(teammates.size(), false);
      do {
        std::vector<int> members;
        for (std::size_t u = 0; u < other_blocks.size(); ++u)
          if (include_block[u])
            for (int f : p.block(other_blocks[u])) members.push_back(f);
        for (std::size_t i = 0; i < teammates.size(); ++i)
          if (include_mate[i]) members.push_back(teammates[i]);
        const double without = evaluate(g, std::span<const int>(members));
        members.push_back(l);
        const double with = evaluate(g, std::span<const int>(members));
        if (integral)
          swings += static_cast<long long>(with) - static_cast<long long>(without);
        else
          acc += with - without;
      } while (advance(include_mate));
    } while (advance(include_block));

    double denom = 1.0;
    for (std::size_t i = 0; i < other_blocks.size() + teammates.size(); ++i) denom *= 2.0;
    result.swings[l] = swings;
    result.values[l] = integral ? static_cast<double>(swings) / denom
                                : static_cast<double>(acc / static_cast<long double>(denom));
  }
  return result;
}

}  // namespace influence::oracle
