#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "fairdiv/axioms.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/egalitarian.hpp"
#include "helpers.hpp"

using namespace fairdiv;

TEST_SUITE("axioms") {
  TEST_CASE("fair share and envy reports agree with direct computation") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
      const auto kind = trial % 2 ? ItemKind::bads : ItemKind::goods;
      const Problem p = oracle::random_problem(rng, 2 + trial % 3, 2 + (trial / 2) % 3, kind, 0, 6);
      std::uniform_int_distribution<int> share(0, 3);
      std::vector<std::vector<Rational>> z(p.agent_count(), std::vector<Rational>(p.item_count(), 0));
      for (std::size_t a = 0; a < p.item_count(); ++a) {
        Rational left = 1;
        for (std::size_t i = 0; i + 1 < p.agent_count(); ++i) {
          z[i][a] = left * Rational(share(rng), 3);
          left -= z[i][a];
        }
        z.back()[a] = left;
      }
      const Allocation x = alloc(z);
      const UtilityProfile u = utility_profile(p, x);
      CHECK(fair_share_report(p, u).holds() == oracle::fair_share(p, u));
      CHECK(envy_report(p, x).holds() == oracle::envy_free(p, x));
    }
  }

  TEST_CASE("SFSG follows the efficiency of equal split") {
    const Problem q = goods({{1, 1}, {1, 1}});
    const AxiomReport at_split = fair_share_report(q, UtilityProfile{1, 1});
    CHECK(at_split.holds());
    CHECK(at_split.details.at(0).holds());
    const Problem p = goods({{10, 6}, {5, 1}});
    const AxiomReport a = fair_share_report(p, UtilityProfile{8, 4});
    CHECK(a.holds());
    CHECK(a.details.at(0).verdict == Verdict::violated);
    CHECK(fair_share_report(p, UtilityProfile{r(64, 7), r(24, 7)}).details.at(0).holds());
  }

  TEST_CASE("equal treatment") {
    const Problem p = goods({{1, 2}, {1, 2}, {2, 1}});
    CHECK(ete_check(p, UtilityProfile{1, 1, 2}).holds());
    CHECK(ete_check(p, UtilityProfile{1, 2, 2}).verdict == Verdict::violated);
    CHECK(ete_check(goods({{1, 2}, {2, 1}}), UtilityProfile{1, 1}).verdict == Verdict::not_applicable);
  }

  TEST_CASE("rule handles") {
    for (const char* name : {"egalitarian", "competitive-goods", "competitive-bads", "competitive-bads-median",
                             "competitive-bads-max-nash"}) {
      CHECK(RuleHandle::parse(name).name() == name);
    }
    CHECK_THROWS_CODE(RuleHandle::parse("nash"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(apply_rule(RuleHandle::parse("competitive-goods"), bads({{1, 2}, {2, 1}})),
                      ErrorCode::KindMismatch);
  }

  TEST_CASE("selections pick within the enumerated set") {
    const Problem p = bads({{1, 2}, {3, 1}});
    const auto all = apply_rule(RuleHandle::parse("competitive-bads"), p);
    REQUIRE(all.size() == 3);
    const auto median = apply_rule(RuleHandle::parse("competitive-bads-median"), p);
    REQUIRE(median.size() == 1);
    CHECK(median[0].profile == UtilityProfile{1, 1});
    const auto nash = apply_rule(RuleHandle::parse("competitive-bads-max-nash"), p);
    REQUIRE(nash.size() == 1);
    CHECK(nash[0].profile == UtilityProfile{r(2, 3), 2});
  }

  TEST_CASE("resource monotonicity of the competitive goods rule") {
    std::mt19937_64 rng(42);
    const RuleHandle rule = RuleHandle::parse("competitive-goods");
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 3, m = 3 + (trial / 3) % 2;
      const Problem p = oracle::random_problem(rng, n, m, ItemKind::goods);
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::size_t> keep;
        for (std::size_t b = 0; b < m; ++b) {
          if (b != a) keep.push_back(b);
        }
        try {
          const Problem smaller = restrict_items(p, keep);
          const auto big = oracle::competitive_profiles(p), small = oracle::competitive_profiles(smaller);
          REQUIRE(big.size() == 1);
          REQUIRE(small.size() == 1);
          for (std::size_t i = 0; i < n; ++i) CHECK((*small.begin())[i] <= (*big.begin())[i]);
          CHECK(rm_probe(p, {a}, rule).holds());
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::NullColumn);
        }
      }
    }
  }

  TEST_CASE("impossibility witness for bads") {
    const RmWitness w2 = rm_impossibility_witness(2);
    CHECK(w2.problem.u() == RationalMatrix::from_rows({{1, 4}, {4, 1}}));
    REQUIRE(w2.cases.size() == 2);
    for (const auto& c : w2.cases) {
      CHECK(c.contradiction);
      CHECK(c.premise_bound == 1);
      CHECK(c.conclusion_bound == r(10, 9));
    }
    for (std::size_t n = 3; n <= 7; ++n) {
      for (std::size_t m : {2, 3}) {
        const RmWitness w = rm_impossibility_witness(n, m);
        for (const auto& c : w.cases) CHECK_MESSAGE(c.contradiction, "n=" << n << " m=" << m);
      }
    }
  }

  TEST_CASE("competitive bads violate resource monotonicity on the witness") {
    const RmWitness w = rm_impossibility_witness(2);
    const RuleHandle rule = RuleHandle::parse("competitive-bads");
    bool violated = false;
    for (const auto& c : w.cases) violated = violated || rm_compare(w.problem, c.shrunk, rule).verdict == Verdict::violated;
    CHECK(violated);
  }

  TEST_CASE("lost bids") {
    const Problem p = goods({{10, 6}, {5, 1}});
    const RuleHandle rule = RuleHandle::parse("competitive-goods");
    // Agent 2 eats no b at (8,4).
    CHECK(ilb_probe(p, rule, 1, 1, r(1, 2)).holds());
    CHECK_THROWS_CODE(ilb_probe(p, rule, 1, 1, 2), ErrorCode::WrongDirection);
    CHECK_THROWS_CODE(ilb_probe(p, rule, 0, 1, 1), ErrorCode::NotALostBid);
  }

  TEST_CASE("egalitarian lost-bid failure") {
    const Problem qa = goods({{3, 1, 1, 0}, {1, 3, 1, 4}, {1, 1, 3, 4}});
    const Problem base = with_entry(qa, 0, 0, r(5, 2));
    const AxiomReport egal = ilb_probe(base, RuleHandle::parse("egalitarian"), 0, 1, r(1, 2));
    CHECK(egal.verdict == Verdict::violated);
    CHECK(ilb_probe(base, RuleHandle::parse("competitive-goods"), 0, 1, r(1, 2)).holds());
  }

  TEST_CASE("misreports") {
    const MisreportResult bads_gain = misreport_demo(bads({{10, 6}, {5, 1}}), 0);
    CHECK(bads_gain.gain < 0);
    CHECK(bads_gain.gain == r(-108, 175));
    const MisreportResult goods_gain = misreport_demo(goods({{1, 2, 3}, {3, 2, 1}}), 0);
    CHECK(goods_gain.gain > 0);
    CHECK_THROWS_CODE(misreport_demo(goods({{1, 2}, {2, 1}}), 0), ErrorCode::GraphChanged);
  }

  TEST_CASE("best report approaches the square root of alpha") {
    const MisreportSweep s = alpha_misreport_sweep(r(3, 2), r(1, 2), 3, 50);
    CHECK(std::abs(to_double(s.best_report) - std::sqrt(1.5)) < 1e-6);
    for (const auto& [bid, utility] : s.samples) CHECK(utility <= s.best_utility);
  }
}
