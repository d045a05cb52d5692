#include <random>

#include "../support/oracles.hpp"
#include "fairdiv/ef_geometry.hpp"
#include "fairdiv/efficiency.hpp"
#include "helpers.hpp"

using namespace fairdiv;

namespace {

std::size_t floor_count(std::size_t n) { return (2 * n + 1) / 3; }

}  // namespace

TEST_SUITE("ef_geometry") {
  TEST_CASE("component counts on the ratio schedule") {
    for (std::size_t n : {2, 3, 4, 5, 6, 7, 8}) {
      const Problem p = problem_from_ratios(comp_count_ratios(n));
      const ComponentStructure s = count_ef_components(p);
      CHECK_MESSAGE(s.count() == floor_count(n), "n=" << n);
      REQUIRE(s.formula_count.has_value());
      CHECK(*s.formula_count == s.count());
      if (n <= 7) CHECK_MESSAGE(oracle::grid_components(p) == s.count(), "n=" << n);
    }
    CHECK(comp_count_ratios(4) == std::vector<Rational>{r(1, 5), r(1, 4), 4, 5});
  }

  TEST_CASE("random distinct ratios agree with the grid oracle and the inequality count") {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> num(1, 30), den(1, 10);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 4;
      std::set<Rational> ratios;
      while (ratios.size() < n) ratios.insert(Rational(num(rng), den(rng)));
      const Problem p = problem_from_ratios({ratios.begin(), ratios.end()});
      const ComponentStructure s = count_ef_components(p);
      REQUIRE(s.formula_count.has_value());
      CHECK(*s.formula_count == s.count());
      CHECK_MESSAGE(oracle::grid_components(p) == s.count(), show({ratios.begin(), ratios.end()}));
      for (const auto& c : s.components) {
        CHECK(oracle::envy_free(p, c.sample));
        CHECK(is_efficient(p, c.sample).efficient);
      }
    }
  }

  TEST_CASE("ties collapse to a single component") {
    const Problem p = bads({{1, 1}, {1, 1}, {1, 1}});
    CHECK(count_ef_components(p).count() == 1);
  }

  TEST_CASE("cloning bads preserves the count") {
    for (std::size_t n : {3, 4, 5}) {
      const Problem p = problem_from_ratios(comp_count_ratios(n));
      const Problem cloned = clone_bads(p, 3);
      CHECK(cloned.item_count() == 3);
      const ComponentStructure s = count_ef_components(cloned);
      CHECK(s.aggregated);
      CHECK(s.count() == floor_count(n));
      CHECK(clone_bads(p, 2) == p);
    }
  }

  TEST_CASE("split allocations are efficient and classify back") {
    const Problem p = problem_from_ratios({r(1, 5), r(1, 4), 4, 5});
    const Allocation z = split_allocation(p, 2, r(1, 4), r(1, 6));
    CHECK(is_efficient(p, z).efficient);
    const CutSplitDescriptor d = classify_m2(p, z);
    CHECK(d.kind == CutSplitKind::split);
    CHECK(d.position == 2);
    CHECK(d.x == r(1, 4));
    CHECK(d.y == r(1, 6));
    CHECK_THROWS_CODE(classify_m2(p, equal_split(p)), ErrorCode::NotEfficient);
  }

  TEST_CASE("competitive divisions of two bads carry descriptors") {
    const Problem p = problem_from_ratios({r(1, 3), 1, 3});
    for (const auto& d : competitive_bads_m2(p).divisions) {
      REQUIRE(d.descriptor.has_value());
      const CutSplitDescriptor c = classify_m2(p, d.allocation);
      CHECK(c.kind == d.descriptor->kind);
      CHECK(c.position == d.descriptor->position);
    }
  }

  TEST_CASE("the egalitarian selection moves continuously on the path") {
    const DiscontinuityReport r = discontinuity_demo(RuleHandle::parse("egalitarian"), 4, 1000);
    CHECK_FALSE(r.jump_detected);
    CHECK(r.components_start == 3);
    CHECK(r.components_end == 1);
  }

  TEST_CASE("max-Nash selection jumps") {
    const DiscontinuityReport r = discontinuity_demo(RuleHandle::parse("competitive-bads-max-nash"), 4, 2000);
    CHECK(r.jump_detected);
    CHECK(r.envy_failures == 0);
  }

  TEST_CASE("the all-divisions selection is rejected") {
    CHECK_THROWS_CODE(discontinuity_demo(RuleHandle::parse("competitive-bads"), 4, 10), ErrorCode::InvalidArgument);
  }
}
