#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/kkt_engine.hpp"
#include "helpers.hpp"

using namespace fairdiv;

namespace {

std::set<std::vector<Rational>> profiles(const EnumerationResult& result) {
  std::set<std::vector<Rational>> out;
  for (const auto& d : result.divisions) out.insert(d.profile);
  return out;
}

}  // namespace

TEST_SUITE("kkt_engine") {
  TEST_CASE("certificate of a competitive bads division") {
    const Problem p = bads({{2, 1}, {0, 1}});
    const Verification v = verify_competitive(p, alloc({{0, r(1, 2)}, {1, r(1, 2)}}), PriceVector{{0, 2}});
    REQUIRE(v.ok());
    CHECK(v.certificate->profile == UtilityProfile{r(1, 2), r(1, 2)});
    for (const auto& e : v.certificate->entries) {
      CHECK(e.slack >= 0);
      if (e.consumed) CHECK(e.slack == 0);
    }
  }

  TEST_CASE("harmless bads must be free") {
    const Problem p = bads({{2, 1}, {0, 1}});
    const Verification v = verify_competitive(p, alloc({{0, 1}, {1, 0}}), PriceVector{{1, 1}});
    REQUIRE_FALSE(v.ok());
    CHECK(v.rejection->reason == RejectionReason::HarmlessItemPriced);
  }

  TEST_CASE("a supplied price must match the reconstruction") {
    const Problem p = goods({{10, 6}, {5, 1}});
    const Allocation z = alloc({{r(1, 5), 1}, {r(4, 5), 0}});
    CHECK(verify_competitive(p, z).ok());
    const Verification wrong = verify_competitive(p, z, PriceVector{{1, 1}});
    REQUIRE_FALSE(wrong.ok());
  }

  TEST_CASE("equal split is rejected when inefficient") {
    const Problem p = goods({{10, 6}, {5, 1}});
    CHECK_FALSE(verify_competitive(p, equal_split(p)).ok());
  }

  TEST_CASE("random goods: exact solution matches the brute-force oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 3, m = 2 + (trial / 3) % 3;
      const Problem p = oracle::random_problem(rng, n, m, ItemKind::goods);
      const auto expected = oracle::competitive_profiles(p);
      REQUIRE(expected.size() == 1);
      const CompetitiveDivision d = competitive_goods(p);
      CHECK(d.profile == *expected.begin());
      CHECK(verify_competitive(p, d.allocation, d.price).ok());
    }
  }

  TEST_CASE("random bads: enumeration matches the brute-force oracle") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 3, m = 2 + (trial / 3) % 3;
      const Problem p = oracle::random_problem(rng, n, m, ItemKind::bads);
      const EnumerationResult res = enumerate_competitive(p);
      CHECK(res.complete);
      CHECK_MESSAGE(profiles(res) == oracle::competitive_profiles(p), "trial " << trial);
      for (const auto& d : res.divisions) {
        const Verification v = verify_competitive(p, d.allocation, d.price);
        CHECK(v.ok());
        CHECK(is_efficient(p, d.allocation).efficient);
      }
    }
  }

  TEST_CASE("closed forms agree with forest enumeration") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      const Problem two_agents = oracle::random_problem(rng, 2, 2 + trial % 4, ItemKind::bads);
      CHECK(profiles(competitive_bads_n2(two_agents)) == profiles(enumerate_forests(two_agents)));
      const Problem two_bads = oracle::random_problem(rng, 2 + trial % 4, 2, ItemKind::bads);
      CHECK(profiles(competitive_bads_m2(two_bads)) == profiles(enumerate_forests(two_bads)));
    }
  }

  TEST_CASE("boundary instances are flagged on the forest path") {
    const Problem p = bads({{8, 5}, {10, 10}});
    const EnumerationResult r = enumerate_competitive(p);
    CHECK(r.method == "forest");
    CHECK(r.divisions.size() == 2);
    CHECK(r.boundary_case);
    CHECK(is_generic(p));
    CHECK_FALSE(enumerate_competitive(bads({{1, 2}, {3, 1}})).boundary_case);
  }

  TEST_CASE("chain descriptors follow the chain") {
    const Problem p = bads({{1, 2}, {3, 1}});
    const EnumerationResult res = competitive_bads_n2(p);
    REQUIRE(res.divisions.size() == 3);
    std::size_t previous = 0;
    for (const auto& d : res.divisions) {
      REQUIRE(d.descriptor.has_value());
      CHECK(d.descriptor->chain_key() > previous);
      previous = d.descriptor->chain_key();
    }
  }

  TEST_CASE("numeric goods path reconstructs the exact division") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
      const Problem p = oracle::random_problem(rng, 3, 4, ItemKind::goods);
      const CompetitiveDivision exact = competitive_goods(p);
      const CompetitiveDivision numeric = competitive_goods_numeric(p);
      CHECK(numeric.profile == exact.profile);
      CHECK(verify_competitive(p, numeric.allocation, numeric.price).ok());
    }
  }

  TEST_CASE("guard on forest enumeration") {
    std::vector<std::vector<Rational>> rows(6, std::vector<Rational>{1, 2, 3, 4, 5, 7});
    for (std::size_t i = 0; i < 6; ++i) rows[i][i] += Rational(i + 1, 3);
    const Problem p = bads(rows);
    CHECK_THROWS_CODE(enumerate_competitive(p), ErrorCode::TooLargeToEnumerate);
    EnumerationOptions wide;
    wide.max_vertices = 12;
    wide.deadline = std::chrono::steady_clock::now();
    const EnumerationResult partial = enumerate_competitive(p, wide);
    CHECK_FALSE(partial.complete);
  }

  TEST_CASE("large goods problems use the numeric path") {
    std::mt19937_64 rng(25);
    const Problem p = oracle::random_problem(rng, 7, 7, ItemKind::goods);
    const EnumerationResult res = enumerate_competitive(p);
    REQUIRE(res.divisions.size() == 1);
    CHECK(verify_competitive(p, res.divisions[0].allocation, res.divisions[0].price).ok());
    EnumerationOptions exact_only;
    exact_only.allow_numeric = false;
    CHECK_THROWS_CODE(enumerate_competitive(p, exact_only), ErrorCode::TooLargeToEnumerate);
  }
}
