#include <random>

#include "../support/oracles.hpp"
#include "fairdiv/efficiency.hpp"
#include "helpers.hpp"

using namespace fairdiv;

TEST_SUITE("efficiency") {
  TEST_CASE("2x2 efficiency matches the exchange-ratio oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> share(0, 4);
    int inefficient = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const auto kind = trial % 2 ? ItemKind::bads : ItemKind::goods;
      const Problem p = oracle::random_problem(rng, 2, 2, kind, 1, 9);
      const Rational za = Rational(share(rng), 4), zb = Rational(share(rng), 4);
      const Allocation z = alloc({{za, zb}, {1 - za, 1 - zb}});
      const EfficiencyResult res = is_efficient(p, z);
      CHECK_MESSAGE(res.efficient == oracle::efficient_2x2(p, z), show(p.row(0)) << show(p.row(1)));
      if (!res.efficient) {
        ++inefficient;
        REQUIRE(res.witness.has_value());
        const UtilityProfile before = utility_profile(p, z), after = utility_profile(p, *res.witness);
        bool strict = false;
        for (std::size_t i = 0; i < 2; ++i) {
          CHECK((p.is_bads() ? after[i] <= before[i] : after[i] >= before[i]));
          strict = strict || after[i] != before[i];
        }
        CHECK(strict);
      }
    }
    CHECK(inefficient > 20);
  }

  TEST_CASE("cycle products and forest reduction") {
    const Problem p = goods({{1, 1}, {1, 1}});
    const Allocation z = alloc({{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}});
    const auto cycle = find_cycle(ConsumptionGraph::of(z));
    REQUIRE(cycle.has_value());
    CHECK(cycle_product(p, *cycle) == 1);
    const Allocation f = reduce_to_forest(p, z);
    CHECK(ConsumptionGraph::of(f).is_forest());
    CHECK(utility_profile(p, f) == utility_profile(p, z));
  }

  TEST_CASE("inefficient allocations are not repaired") {
    const Problem p = goods({{10, 6}, {5, 1}});
    CHECK_THROWS_CODE(reduce_to_forest(p, equal_split(p)), ErrorCode::NotEfficient);
    const Allocation forest = alloc({{1, 0}, {0, 1}});
    CHECK(reduce_to_forest(p, forest) == forest);
  }

  TEST_CASE("a 3x3 cycle reduces to a forest with at least 4 zeros") {
    const Problem p = goods({{1, 1, 1}, {1, 1, 1}, {1, 1, 3}});
    const Allocation z = alloc({{r(1, 2), r(1, 2), 0}, {r(1, 2), r(1, 2), 0}, {0, 0, 1}});
    REQUIRE(is_efficient(p, z).efficient);
    const Allocation f = reduce_to_forest(p, z);
    CHECK(utility_profile(p, f) == utility_profile(p, z));
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t a = 0; a < 3; ++a) zeros += f.z(i, a) == 0;
    }
    CHECK(zeros >= 4);
  }

  TEST_CASE("genericity") {
    CHECK(is_generic(goods({{1, 2}, {3, 1}})));
    CHECK_FALSE(is_generic(goods({{1, 2}, {2, 4}})));
    CHECK_FALSE(is_generic(bads({{2, 1}, {0, 1}})));
  }
}
