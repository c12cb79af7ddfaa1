#include <catch2/catch_amalgamated.hpp>

#include "influence/indices.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace influence;

namespace {

Game example_game() { return Game::weighted_majority({1, 1, 4, 3}, 6); }

struct Scenario {
  std::vector<std::vector<int>> blocks;  // 0-based
  std::vector<double> expected;
};

// all 15 partitions of four features with the published index vectors
const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> table = {
      {{{0}, {1}, {2}, {3}}, {0.125, 0.125, 0.625, 0.375}},
      {{{0}, {1}, {2, 3}}, {0.000, 0.000, 0.625, 0.375}},
      {{{0}, {2}, {1, 3}}, {0.000, 0.125, 0.500, 0.375}},
      {{{0}, {3}, {1, 2}}, {0.250, 0.125, 0.625, 0.250}},
      {{{1}, {2}, {0, 3}}, {0.125, 0.000, 0.500, 0.375}},
      {{{1}, {3}, {0, 2}}, {0.125, 0.250, 0.625, 0.250}},
      {{{2}, {3}, {0, 1}}, {0.125, 0.125, 0.750, 0.250}},
      {{{0, 1}, {2, 3}}, {0.000, 0.000, 0.750, 0.250}},
      {{{0, 2}, {1, 3}}, {0.000, 0.250, 0.500, 0.250}},
      {{{0, 3}, {1, 2}}, {0.250, 0.000, 0.500, 0.250}},
      {{{0}, {1, 2, 3}}, {0.000, 0.125, 0.625, 0.375}},
      {{{1}, {0, 2, 3}}, {0.125, 0.000, 0.625, 0.375}},
      {{{2}, {0, 1, 3}}, {0.125, 0.125, 0.500, 0.375}},
      {{{3}, {0, 1, 2}}, {0.125, 0.125, 0.625, 0.000}},
      {{{0, 1, 2, 3}}, {0.125, 0.125, 0.625, 0.375}},
  };
  return table;
}

}  // namespace

TEST_CASE("banzhaf on the example game") {
  const IndexVector b = banzhaf(example_game());
  CHECK(b.values == std::vector<double>{0.125, 0.125, 0.625, 0.375});
  CHECK(b.swings.value() == std::vector<long long>{1, 1, 5, 3});
}

TEST_CASE("banzhaf of a dictator") {
  const IndexVector b = banzhaf(Game::weighted_majority({1, 0, 0}, 1));
  CHECK(b.values == std::vector<double>{1, 0, 0});
}

TEST_CASE("banzhaf of the constant-zero game") {
  const IndexVector b = banzhaf(Game::from_table(3, std::vector<double>(8, 0.0)));
  CHECK(b.values == std::vector<double>{0, 0, 0});
}

TEST_CASE("banzhaf-owen reproduces every published scenario") {
  const Game g = example_game();
  for (std::size_t s = 0; s < scenarios().size(); ++s) {
    const auto& scenario = scenarios()[s];
    const Partition p(4, scenario.blocks);
    const IndexVector bo = banzhaf_owen(g, p);
    for (int l = 0; l < 4; ++l) {
      INFO("scenario " << s + 1 << ", feature " << l + 1);
      CHECK(bo.values[l] == Catch::Approx(scenario.expected[l]).margin(1e-9));
    }
  }
}

TEST_CASE("banzhaf-owen with singleton or single-block partitions is banzhaf") {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_below(10));
    const Game g = testgen::random_zero_one_game(rng, k);
    const IndexVector b = banzhaf(g);
    const IndexVector singles = banzhaf_owen(g, singleton_partition(k));
    std::vector<int> everyone(k);
    for (int l = 0; l < k; ++l) everyone[l] = l;
    const IndexVector whole = banzhaf_owen(g, Partition(k, {everyone}));
    REQUIRE(singles.values == b.values);
    REQUIRE(whole.values == b.values);
  }
}

TEST_CASE("null players score zero under every partition") {
  Rng rng(910);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng.next_below(7));
    // build a game that ignores player 0
    const Game base = testgen::random_zero_one_game(rng, k - 1);
    std::vector<double> table(std::size_t{1} << k);
    for (CoalitionMask mask = 0; mask < table.size(); ++mask)
      table[mask] = base.value(mask >> 1);
    const Game g = Game::from_table(k, std::move(table));
    const Partition p = testgen::random_partition(rng, k);
    CHECK(banzhaf(g).values[0] == 0.0);
    CHECK(banzhaf_owen(g, p).values[0] == 0.0);
  }
}

TEST_CASE("monotone games give non-negative indices") {
  Rng rng(515);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_below(8));
    const auto labels = testgen::random_monotone_labels(rng, k);
    const Game g = Game::from_table(k, std::vector<double>(labels.begin(), labels.end()));
    const Partition p = testgen::random_partition(rng, k);
    for (double v : banzhaf(g).values) REQUIRE(v >= 0.0);
    for (double v : banzhaf_owen(g, p).values) REQUIRE(v >= 0.0);
  }
}

TEST_CASE("oracle equivalence for banzhaf") {
  Rng rng(31337);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_below(10));
    const Game g = (trial % 4 == 0) ? testgen::random_real_game(rng, k)
                                    : testgen::random_zero_one_game(rng, k);
    const IndexVector fast = banzhaf(g);
    const auto naive = oracle::banzhaf_naive(g);
    REQUIRE(fast.values == naive.values);
    if (fast.swings) REQUIRE(*fast.swings == naive.swings);
  }
}

TEST_CASE("oracle equivalence for banzhaf-owen") {
  Rng rng(271828);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_below(8));
    const Game g = (trial % 4 == 0) ? testgen::random_real_game(rng, k)
                                    : testgen::random_zero_one_game(rng, k);
    const Partition p = testgen::random_partition(rng, k);
    const IndexVector fast = banzhaf_owen(g, p);
    const auto naive = oracle::bo_naive(g, p);
    REQUIRE(fast.values == naive.values);
    if (fast.swings) REQUIRE(*fast.swings == naive.swings);
  }
}

TEST_CASE("oracle spot check: scenario 10 partition") {
  const auto naive = oracle::bo_naive(example_game(), Partition(4, {{0, 3}, {1, 2}}));
  CHECK(naive.values == std::vector<double>{0.250, 0.000, 0.500, 0.250});
}

TEST_CASE("monte carlo estimates are reproducible and track the exact value") {
  const Game g = example_game();
  const Partition p(4, {{2}, {3}, {0, 1}});  // scenario 7
  const IndexVector exact = banzhaf_owen(g, p);
  const IndexVector mc = banzhaf_owen_mc(g, p, 200000, 99);
  const IndexVector again = banzhaf_owen_mc(g, p, 200000, 99);
  REQUIRE(mc.values == again.values);
  REQUIRE(mc.stderrs.value() == again.stderrs.value());
  for (int l = 0; l < 4; ++l) {
    const double err = std::abs(mc.values[l] - exact.values[l]);
    INFO("feature " << l + 1 << " off by " << err << " with stderr " << (*mc.stderrs)[l]);
    CHECK(err <= 3.0 * (*mc.stderrs)[l] + 1e-12);
  }
}

TEST_CASE("monte carlo on a constant game is exactly zero") {
  const Game g = Game::from_table(4, std::vector<double>(16, 0.0));
  const IndexVector mc = banzhaf_owen_mc(g, singleton_partition(4), 1000, 1);
  CHECK(mc.values == std::vector<double>(4, 0.0));
  CHECK(mc.stderrs.value() == std::vector<double>(4, 0.0));
}

TEST_CASE("monte carlo error shrinks with more samples") {
  const Game g = example_game();
  const Partition p(4, {{0, 1}, {2, 3}});
  const IndexVector exact = banzhaf_owen(g, p);
  double small_err = 0.0, large_err = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const IndexVector small = banzhaf_owen_mc(g, p, 200, seed);
    const IndexVector large = banzhaf_owen_mc(g, p, 20000, seed);
    for (int l = 0; l < 4; ++l) {
      small_err += std::abs(small.values[l] - exact.values[l]);
      large_err += std::abs(large.values[l] - exact.values[l]);
    }
  }
  CHECK(large_err < small_err);
}

TEST_CASE("enumeration bound rejects oversized requests") {
  const Game big = Game::weighted_majority(std::vector<double>(40, 1.0), 10);
  CHECK(testgen::throws_code([&] { banzhaf(big); }, errc::enumeration_bound_exceeded));
  std::vector<int> everyone(40);
  for (int l = 0; l < 40; ++l) everyone[l] = l;
  CHECK(testgen::throws_code([&] { banzhaf_owen(big, Partition(40, {everyone})); },
                             errc::enumeration_bound_exceeded));

  // a tightened bound rejects what the default allows, and overriding works
  const Game small = Game::weighted_majority(std::vector<double>(10, 1.0), 5);
  CHECK(testgen::throws_code([&] { banzhaf(small, 5); }, errc::enumeration_bound_exceeded));
  CHECK_NOTHROW(banzhaf(small, 10));
}
