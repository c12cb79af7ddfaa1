#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "influence/errors.hpp"
#include "influence/game.hpp"
#include "influence/partition.hpp"
#include "influence/rng.hpp"

namespace influence {

/// Power-index values per player. For 0/1 games the exact enumerations also
/// report integer swing counts with values[l] = swings[l] / 2^denom_log2[l];
/// that final division by a power of two is exact in binary floating point.
struct IndexVector {
  std::vector<double> values;
  std::string method;
  std::optional<std::vector<double>> stderrs;      // Monte Carlo only
  std::optional<std::vector<long long>> swings;    // 0/1 games only
  std::vector<int> denom_log2;                     // filled alongside swings
};

namespace detail {

// Spreads the low k-1 bits of `sub` over the positions != l.
inline CoalitionMask expand_around(CoalitionMask sub, int l) {
  const CoalitionMask low = sub & ((CoalitionMask{1} << l) - 1);
  return ((sub >> l) << (l + 1)) | low;
}

}  // namespace detail

/// Exact Banzhaf value: the average marginal contribution of each player over
/// all coalitions of the others, coefficient 2^-(k-1).
inline IndexVector banzhaf(const Game& g, int bound = kDefaultEnumerationBound) {
  const int k = g.player_count();
  require(k - 1 <= bound, errc::enumeration_bound_exceeded,
          "enumerating 2^" + std::to_string(k - 1) + " coalitions exceeds the bound");
  const bool integral = g.is_zero_one();

  IndexVector result;
  result.method = "banzhaf";
  result.denom_log2.assign(k, k - 1);
  result.values.resize(k);
  if (integral) result.swings.emplace(k, 0);

  const CoalitionMask subsets = CoalitionMask{1} << (k - 1);
  for (int l = 0; l < k; ++l) {
    const CoalitionMask bit = CoalitionMask{1} << l;
    if (integral) {
      long long swings = 0;
      for (CoalitionMask sub = 0; sub < subsets; ++sub) {
        const CoalitionMask coalition = detail::expand_around(sub, l);
        swings += static_cast<long long>(g.value(coalition | bit)) -
                  static_cast<long long>(g.value(coalition));
      }
      (*result.swings)[l] = swings;
      result.values[l] = std::ldexp(static_cast<double>(swings), -(k - 1));
    } else {
      long double acc = 0.0L;
      for (CoalitionMask sub = 0; sub < subsets; ++sub) {
        const CoalitionMask coalition = detail::expand_around(sub, l);
        acc += static_cast<long double>(g.value(coalition | bit)) - g.value(coalition);
      }
      result.values[l] = static_cast<double>(std::ldexp(acc, -(k - 1)));
    }
  }
  return result;
}

/// Exact Banzhaf-Owen value for a priori unions: coalitions compatible with
/// the partition, whole blocks of the others plus a subset of the player's
/// own block, coefficient 2^-(m-1) * 2^-(|P_t|-1).
inline IndexVector banzhaf_owen(const Game& g, const Partition& p,
                                int bound = kDefaultEnumerationBound) {
  const int k = g.player_count();
  require(p.k() == k, errc::not_a_partition, "partition is over a different player set");
  const int m = p.block_count();
  const bool integral = g.is_zero_one();

  std::vector<CoalitionMask> block_mask(m, 0);
  for (int u = 0; u < m; ++u)
    for (int f : p.block(u)) block_mask[u] |= CoalitionMask{1} << f;

  IndexVector result;
  result.method = "banzhaf-owen";
  result.values.resize(k);
  result.denom_log2.resize(k);
  if (integral) result.swings.emplace(k, 0);

  for (int t = 0; t < m; ++t) {
    const auto& own = p.block(t);
    const int denom_log2 = (m - 1) + static_cast<int>(own.size()) - 1;
    require(denom_log2 <= bound, errc::enumeration_bound_exceeded,
            "enumerating 2^" + std::to_string(denom_log2) + " coalitions exceeds the bound");

    std::vector<CoalitionMask> other_blocks;
    for (int u = 0; u < m; ++u)
      if (u != t) other_blocks.push_back(block_mask[u]);

    for (int l : own) {
      const CoalitionMask bit = CoalitionMask{1} << l;
      std::vector<int> teammates;
      for (int f : own)
        if (f != l) teammates.push_back(f);

      long long swing_count = 0;
      long double acc = 0.0L;
      const CoalitionMask outer = CoalitionMask{1} << other_blocks.size();
      const CoalitionMask inner = CoalitionMask{1} << teammates.size();
      for (CoalitionMask s = 0; s < outer; ++s) {
        CoalitionMask unions = 0;
        for (std::size_t u = 0; u < other_blocks.size(); ++u)
          if (s >> u & 1) unions |= other_blocks[u];
        for (CoalitionMask r = 0; r < inner; ++r) {
          CoalitionMask coalition = unions;
          for (std::size_t i = 0; i < teammates.size(); ++i)
            if (r >> i & 1) coalition |= CoalitionMask{1} << teammates[i];
          if (integral) {
            swing_count += static_cast<long long>(g.value(coalition | bit)) -
                           static_cast<long long>(g.value(coalition));
          } else {
            acc += static_cast<long double>(g.value(coalition | bit)) - g.value(coalition);
          }
        }
      }
      result.denom_log2[l] = denom_log2;
      if (integral) {
        (*result.swings)[l] = swing_count;
        result.values[l] = std::ldexp(static_cast<double>(swing_count), -denom_log2);
      } else {
        result.values[l] = static_cast<double>(std::ldexp(acc, -denom_log2));
      }
    }
  }
  return result;
}

/// Seeded Monte-Carlo estimate of the Banzhaf-Owen value: per player, the
/// mean marginal contribution over draws where every other block and every
/// teammate is included independently with a fair coin. Each player has its
/// own generator stream derived from (seed, player), so estimates do not
/// depend on evaluation order. stderr is the sample standard deviation of the
/// marginals divided by sqrt(n_samples).
inline IndexVector banzhaf_owen_mc(const Game& g, const Partition& p, long long n_samples,
                                   std::uint64_t seed) {
  const int k = g.player_count();
  require(p.k() == k, errc::not_a_partition, "partition is over a different player set");
  require(n_samples >= 1, errc::invalid_argument, "need at least one sample");
  const int m = p.block_count();

  std::vector<CoalitionMask> block_mask(m, 0);
  for (int u = 0; u < m; ++u)
    for (int f : p.block(u)) block_mask[u] |= CoalitionMask{1} << f;

  IndexVector result;
  result.method = "banzhaf-owen-mc";
  result.values.resize(k);
  result.stderrs.emplace(k, 0.0);

  for (int t = 0; t < m; ++t) {
    std::vector<CoalitionMask> other_blocks;
    for (int u = 0; u < m; ++u)
      if (u != t) other_blocks.push_back(block_mask[u]);

    for (int l : p.block(t)) {
      const CoalitionMask bit = CoalitionMask{1} << l;
      std::vector<int> teammates;
      for (int f : p.block(t))
        if (f != l) teammates.push_back(f);

      Rng rng = stream_rng(seed, static_cast<std::uint64_t>(l));
      long double sum = 0.0L, sum_sq = 0.0L;
      for (long long s = 0; s < n_samples; ++s) {
        // one word of block coins, one word of teammate coins per draw
        const std::uint64_t block_coins = rng.next_u64();
        const std::uint64_t member_coins = rng.next_u64();
        CoalitionMask coalition = 0;
        for (std::size_t u = 0; u < other_blocks.size(); ++u)
          if (block_coins >> u & 1) coalition |= other_blocks[u];
        for (std::size_t i = 0; i < teammates.size(); ++i)
          if (member_coins >> i & 1) coalition |= CoalitionMask{1} << teammates[i];
        const double marginal = g.value(coalition | bit) - g.value(coalition);
        sum += marginal;
        sum_sq += static_cast<long double>(marginal) * marginal;
      }
      const long double mean = sum / n_samples;
      result.values[l] = static_cast<double>(mean);
      if (n_samples > 1) {
        const long double var = (sum_sq - static_cast<long double>(n_samples) * mean * mean) /
                                (n_samples - 1);
        result.stderrs.value()[l] =
            static_cast<double>(std::sqrt(std::max(var, 0.0L) / n_samples));
      }
    }
  }
  return result;
}

}  // namespace influence
