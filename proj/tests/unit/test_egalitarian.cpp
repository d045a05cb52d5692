#include <random>

#include "../support/oracles.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/egalitarian.hpp"
#include "fairdiv/kkt_engine.hpp"
#include "helpers.hpp"

using namespace fairdiv;

namespace {

Rational min_of(const UtilityProfile& v) { return *std::min_element(v.begin(), v.end()); }
Rational max_of(const UtilityProfile& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_SUITE("egalitarian") {
  TEST_CASE("two-agent examples") {
    CHECK(egalitarian(goods({{10, 6}, {5, 1}})).profile == UtilityProfile{r(64, 7), r(24, 7)});
    CHECK(egalitarian(bads({{10, 6}, {5, 1}})).profile == UtilityProfile{r(48, 7), r(18, 7)});
  }

  TEST_CASE("efficient and at least as equal as every competitive division") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const auto kind = trial % 2 ? ItemKind::bads : ItemKind::goods;
      const Problem p = oracle::random_problem(rng, 2 + trial % 3, 2 + (trial / 2) % 3, kind);
      const EgalitarianResult e = egalitarian(p);
      CHECK(utility_profile(p, e.allocation) == e.profile);
      CHECK(is_efficient(p, e.allocation).efficient);
      const UtilityProfile ne = normalized_profile(p, e.profile);
      for (const auto& d : enumerate_competitive(p).divisions) {
        const UtilityProfile nc = normalized_profile(p, d.profile);
        if (kind == ItemKind::goods) {
          CHECK(min_of(ne) >= min_of(nc));
        } else {
          CHECK(max_of(ne) <= max_of(nc));
        }
      }
      // Generic problems have a single allocation realizing the profile.
      if (is_generic(p)) {
        CHECK(e.unique_allocation.value_or(true));
      }
    }
  }

  TEST_CASE("egalitarian allocation is a forest") {
    const Problem p = goods({{3, 1, 1, 0}, {1, 3, 1, 4}, {1, 1, 3, 4}});
    const EgalitarianResult e = egalitarian(p);
    CHECK(ConsumptionGraph::of(e.allocation).is_forest());
    CHECK(e.profile == UtilityProfile{r(165, 59), r(297, 59), r(297, 59)});
  }
}
