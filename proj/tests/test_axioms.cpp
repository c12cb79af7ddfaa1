#include <catch2/catch_amalgamated.hpp>

#include "influence/axioms.hpp"
#include "influence/game.hpp"
#include "test_util.hpp"

using namespace influence;

namespace {

// dataset whose response provably ignores feature `dummy`
Dataset with_dummy_feature(Rng& rng, int dummy_of_k) {
  for (;;) {
    const Dataset d = testgen::random_dataset(rng, dummy_of_k, 48);
    if (d.k() < 2) continue;
    const int dummy = static_cast<int>(rng.next_below(d.k()));
    // relabel responses to a function of the other coordinates
    std::vector<std::vector<int>> profiles;
    std::vector<int> labels;
    for (int i = 0; i < d.size(); ++i) {
      auto row = d.profile(i);
      profiles.emplace_back(row.begin(), row.end());
      std::uint64_t h = 1469598103934665603ull;
      for (int l = 0; l < d.k(); ++l) {
        if (l == dummy) continue;
        h = (h ^ static_cast<std::uint64_t>(row[l])) * 1099511628211ull;
      }
      labels.push_back(static_cast<int>(h & 1));
    }
    return Dataset(d.space(), profiles, labels);
  }
}

}  // namespace

TEST_CASE("DP: constructed dummy features always score zero") {
  Rng rng(70);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = with_dummy_feature(rng, 5);
    const Partition p = testgen::random_partition(rng, d.k());
    const auto result =
        axiom_check(d, p, DependencyModel::all_positive(d.k()), Axiom::DP, trial);
    INFO(result.detail);
    REQUIRE(result.pass);
  }
}

TEST_CASE("FSY: chi commutes with feature permutations") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testgen::random_dataset(rng);
    const auto result = axiom_check(d, singleton_partition(d.k()),
                                    DependencyModel::all_positive(d.k()), Axiom::FSY, trial);
    INFO(result.detail);
    REQUIRE(result.pass);
  }
  // the precondition is enforced
  const Dataset d = testgen::random_dataset(rng, 4, 16);
  if (d.k() >= 2) {
    std::vector<int> everyone(d.k());
    for (int l = 0; l < d.k(); ++l) everyone[l] = l;
    CHECK(testgen::throws_code(
        [&] {
          axiom_check(d, Partition(d.k(), {everyone}), DependencyModel::all_positive(d.k()),
                      Axiom::FSY);
        },
        errc::precondition_unmet));
  }
}

TEST_CASE("SSY: chi ignores state relabelings") {
  Rng rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testgen::random_dataset(rng);
    const auto result = axiom_check(d, singleton_partition(d.k()),
                                    DependencyModel::all_positive(d.k()), Axiom::SSY, trial);
    INFO(result.detail);
    REQUIRE(result.pass);
  }
}

TEST_CASE("DU: psi is additive over disjoint response splits") {
  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testgen::random_dataset(rng);
    const Partition p = testgen::random_partition(rng, d.k());
    const auto result =
        axiom_check(d, p, DependencyModel::all_positive(d.k()), Axiom::DU, trial);
    INFO(result.detail);
    REQUIRE(result.pass);
  }
}

TEST_CASE("II: detaching a block member leaves the rest unchanged") {
  Rng rng(74);
  int done = 0;
  while (done < 200) {
    const Dataset d = testgen::random_dataset(rng);
    if (d.k() < 2) continue;
    Partition p = testgen::random_partition(rng, d.k());
    bool has_pair = false;
    for (int t = 0; t < p.block_count(); ++t) has_pair |= p.block(t).size() >= 2;
    if (!has_pair) continue;
    const auto result =
        axiom_check(d, p, DependencyModel::all_positive(d.k()), Axiom::II, done);
    INFO(result.detail);
    REQUIRE(result.pass);
    ++done;
  }
}

TEST_CASE("II on the published example") {
  const Dataset d = sample_from_game(Game::weighted_majority({1, 1, 4, 3}, 6));
  const auto result = axiom_check(d, Partition(4, {{0}, {1}, {2, 3}}),
                                  DependencyModel::all_positive(4), Axiom::II);
  INFO(result.detail);
  CHECK(result.pass);
}

TEST_CASE("RP: singleton blocks reduce to chi over the restricted sample") {
  Rng rng(75);
  int done = 0;
  while (done < 200) {
    const Dataset d = testgen::random_dataset(rng);
    const Partition p = testgen::random_partition(rng, d.k());
    bool has_singleton = false;
    for (int t = 0; t < p.block_count(); ++t) has_singleton |= p.block(t).size() == 1;
    if (!has_singleton) continue;
    const auto result =
        axiom_check(d, p, DependencyModel::all_positive(d.k()), Axiom::RP, done);
    INFO(result.detail);
    REQUIRE(result.pass);
    ++done;
  }
}

TEST_CASE("axiom names parse") {
  CHECK(parse_axiom("DP") == Axiom::DP);
  CHECK(parse_axiom("RP") == Axiom::RP);
  CHECK(testgen::throws_code([] { parse_axiom("XX"); }, errc::invalid_argument));
}
