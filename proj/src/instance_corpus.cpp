#include "fairdiv/instance_corpus.hpp"

#include <bit>
#include <charconv>
#include <functional>

#include "fairdiv/axioms.hpp"
#include "fairdiv/ef_geometry.hpp"

namespace fairdiv {

namespace {

using Rows = std::vector<std::vector<Rational>>;

Rational q(long num, long den = 1) { return Rational(num, den); }

std::size_t size_param(const FixtureParams& params, const std::string& key, std::size_t low, std::size_t high) {
  const std::string& text = params.at(key);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "parameter " + key + " must be a positive integer");
  }
  if (value < low || value > high) {
    throw Error(ErrorCode::InvalidArgument,
                "parameter " + key + " must lie in [" + std::to_string(low) + ", " + std::to_string(high) + "]");
  }
  return value;
}

Expectation expect(ExpectationKind kind, Rows rows, Provenance provenance = Provenance::stated, std::string note = {}) {
  return Expectation{kind, std::move(rows), {}, 0, provenance, std::move(note)};
}

Expectation expect_count(ExpectationKind kind, std::size_t count, Provenance provenance, std::string note = {}) {
  return Expectation{kind, {}, {}, count, provenance, std::move(note)};
}

Expectation expect_allocations(ExpectationKind kind, std::vector<RationalMatrix> allocations,
                               Provenance provenance, std::string note = {}) {
  return Expectation{kind, {}, std::move(allocations), 0, provenance, std::move(note)};
}

Problem make(const Rows& rows, ItemKind kind) { return validate_problem(rows, kind); }

std::size_t floor_components(std::size_t n) { return (2 * n + 1) / 3; }

Fixture ex_a_goods(const FixtureParams&) {
  Fixture f{"ex_a_goods", "", {}, make({{10, 6}, {5, 1}}, ItemKind::goods), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{8, 4}}),
      expect(ExpectationKind::competitive_prices, {{q(5, 4), q(3, 4)}}),
      expect(ExpectationKind::egalitarian_profile, {{q(64, 7), q(24, 7)}}),
  };
  return f;
}

Fixture ex_a_bads(const FixtureParams&) {
  Fixture f{"ex_a_bads", "", {}, make({{10, 6}, {5, 1}}, ItemKind::bads), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{6, 3}}),
      expect(ExpectationKind::competitive_prices, {{q(5, 3), q(1, 3)}}),
      expect(ExpectationKind::egalitarian_profile, {{q(48, 7), q(18, 7)}}),
  };
  return f;
}

Fixture ex_b(const FixtureParams&) {
  Fixture f{"ex_b", "", {}, make({{2, 1}, {0, 1}}, ItemKind::bads), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{q(1, 2), q(1, 2)}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{0, 2}}),
      expect_allocations(ExpectationKind::competitive_allocations, {RationalMatrix::from_rows({{0, q(1, 2)}, {1, q(1, 2)}})},
                         Provenance::stated),
  };
  return f;
}

Fixture ex_c(const FixtureParams&) {
  Fixture f{"ex_c", "", {}, make({{1, 2}, {3, 1}}, ItemKind::bads), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{q(3, 2), q(3, 4)}, {1, 1}, {q(2, 3), 2}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{q(2, 3), q(4, 3)}, {1, 1}, {q(3, 2), q(1, 2)}}),
      expect_count(ExpectationKind::competitive_count, 3, Provenance::stated),
      expect(ExpectationKind::egalitarian_profile, {{q(12, 13), q(16, 13)}}, Provenance::derived),
  };
  return f;
}

Fixture canon_goods(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 10);
  const long size = static_cast<long>(n);
  Rows rows(n, std::vector<Rational>(n - 1));
  RationalMatrix competitive(n, n - 1), egal(n, n - 1);
  for (std::size_t a = 0; a + 1 < n; ++a) {
    rows[a][a] = 1;
    rows[n - 1][a] = 1;
    competitive(a, a) = q(size - 1, size);
    competitive(n - 1, a) = q(1, size);
    egal(a, a) = q(1, 2);
    egal(n - 1, a) = q(1, 2);
  }
  Fixture f{"canon_goods", "", params, make(rows, ItemKind::goods), {}};
  std::vector<Rational> profile(n, q(size - 1, size));
  std::vector<Rational> egal_profile(n, q(1, 2));
  egal_profile[n - 1] = q(size - 1, 2);
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {profile}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {std::vector<Rational>(n - 1, q(size, size - 1))}),
      expect_allocations(ExpectationKind::competitive_allocations, {competitive}, Provenance::stated),
      expect(ExpectationKind::egalitarian_profile, {egal_profile}, Provenance::stated),
      expect_allocations(ExpectationKind::egalitarian_allocation, {egal}, Provenance::stated),
  };
  return f;
}

Fixture canon_bads(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 6);
  const std::size_t m = n - 1;
  Rows rows(n, std::vector<Rational>(m, 3));
  for (std::size_t a = 0; a < m; ++a) {
    rows[a][a] = 1;
    rows[n - 1][a] = 1;
  }
  Fixture f{"canon_bads", "", params, make(rows, ItemKind::bads), {}};
  // Every nonempty subset S of bads: agents of S keep q/(q+1) of their bad, the flexible agent takes the rest.
  std::vector<RationalMatrix> family;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    const long size = std::popcount(mask);
    RationalMatrix z(n, m);
    for (std::size_t a = 0; a < m; ++a) {
      if (mask >> a & 1) {
        z(a, a) = q(size, size + 1);
        z(n - 1, a) = q(1, size + 1);
      } else {
        z(a, a) = 1;
      }
    }
    family.push_back(std::move(z));
  }
  f.expectations = {
      expect_allocations(ExpectationKind::competitive_allocations, std::move(family), Provenance::stated),
      expect_count(ExpectationKind::competitive_count_at_least, (std::size_t{1} << m) - 1, Provenance::stated),
  };
  return f;
}

Fixture t1_case2(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 5);
  Rows rows(n, std::vector<Rational>(n + 1, 3));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    rows[i][n] = 1;
  }
  Fixture f{"t1_case2", "", params, make(rows, ItemKind::bads), {}};
  std::vector<RationalMatrix> family;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const long size = std::popcount(mask);
    RationalMatrix z(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      z(i, i) = 1;
      if (mask >> i & 1) z(i, n) = q(1, size);
    }
    family.push_back(std::move(z));
  }
  f.expectations = {
      expect_allocations(ExpectationKind::competitive_allocations, std::move(family), Provenance::stated),
      expect_count(ExpectationKind::competitive_count_at_least, (std::size_t{1} << n) - 1, Provenance::stated),
  };
  return f;
}

Fixture q_b(const FixtureParams&) {
  Fixture f{"q_b", "", {}, make({{3, 1, 1}, {1, 3, 1}, {1, 1, 3}}, ItemKind::goods), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{3, 3, 3}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{1, 1, 1}}, Provenance::derived),
      expect(ExpectationKind::egalitarian_profile, {{3, 3, 3}}, Provenance::stated),
  };
  return f;
}

Fixture mirror_goods(const FixtureParams&) {
  Fixture f{"mirror_goods", "", {}, make({{1, 2, 3}, {3, 2, 1}}, ItemKind::goods), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{4, 4}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{q(3, 4), q(1, 2), q(3, 4)}}, Provenance::derived),
      expect(ExpectationKind::egalitarian_profile, {{4, 4}}, Provenance::derived),
  };
  return f;
}

Fixture q_a(const FixtureParams&) {
  Fixture f{"q_a", "", {}, make({{3, 1, 1, 0}, {1, 3, 1, 4}, {1, 1, 3, 4}}, ItemKind::goods), {}};
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{3, 5, 5}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{1, q(3, 5), q(3, 5), q(4, 5)}}),
      expect(ExpectationKind::egalitarian_profile, {{q(165, 59), q(297, 59), q(297, 59)}}, Provenance::derived),
      expect_allocations(ExpectationKind::egalitarian_allocation,
                         {RationalMatrix::from_rows({{q(55, 59), 0, 0, 0},
                                                     {q(2, 59), 1, 0, q(1, 2)},
                                                     {q(2, 59), 0, 1, q(1, 2)}})},
                         Provenance::stated),
  };
  return f;
}

Fixture alpha(const FixtureParams& params) {
  const Rational a = parse_rational(params.at("alpha"));
  if (!(a > q(1, 2) && a < 2)) throw Error(ErrorCode::InvalidArgument, "alpha must lie strictly between 1/2 and 2");
  Fixture f{"alpha", "", params, make({{3, 1}, {a, 1}, {1, 3}}, ItemKind::goods), {}};
  const Rational inv = 1 / a;
  const RationalMatrix z = RationalMatrix::from_rows(
      {{(1 + inv) / 3, 0}, {(2 - inv) / 3, (2 - a) / 3}, {0, (1 + a) / 3}});
  f.expectations = {
      expect(ExpectationKind::competitive_profiles, {{1 + inv, (a + 1) / 3, 1 + a}}, Provenance::derived),
      expect(ExpectationKind::competitive_prices, {{3 * a / (1 + a), 3 / (1 + a)}}, Provenance::derived),
      expect_allocations(ExpectationKind::competitive_allocations, {z}, Provenance::derived,
                         "agent 3 eats (1+alpha)/3 of b and agent 2 eats (2-alpha)/3 of b"),
  };
  return f;
}

Fixture t1_max_n2(const FixtureParams& params) {
  const std::size_t m = size_param(params, "m", 2, 12);
  auto pow2 = [](long e) { return Rational(Integer(1) << static_cast<unsigned>(std::max(e, 0L))); };
  const long size = static_cast<long>(m);
  Rows rows(2, std::vector<Rational>(m));
  for (long k = 1; k <= size - 1; ++k) rows[0][k - 1] = pow2(k - 2);
  rows[0][m - 1] = pow2(size - 2) + 1;
  rows[1][0] = pow2(size - 2) + 1;
  for (long k = 2; k <= size; ++k) rows[1][k - 1] = pow2(size - 1 - k);
  Fixture f{"t1_max_n2", "", params, make(rows, ItemKind::bads), {}};
  f.expectations = {expect_count(ExpectationKind::competitive_count, 2 * m - 1, Provenance::stated)};
  return f;
}

Fixture maxsplit_m2(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 12);
  const long size = static_cast<long>(n);
  std::vector<Rational> ratios;
  for (long i = 1; i <= size; ++i) {
    if (i == size) {
      ratios.push_back(q(size));
    } else {
      ratios.push_back((q(i - 1, size - i + 1) + q(i, size - i)) / 2);
    }
  }
  Fixture f{"maxsplit_m2", "", params, problem_from_ratios(ratios), {}};
  f.expectations = {expect_count(ExpectationKind::competitive_count, 2 * n - 1, Provenance::stated)};
  return f;
}

Fixture comp_count(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 12);
  Fixture f{"comp_count", "", params, problem_from_ratios(comp_count_ratios(n)), {}};
  f.expectations = {expect_count(ExpectationKind::ef_components, floor_components(n), Provenance::stated)};
  return f;
}

Fixture q1(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 4, 12);
  Fixture f{"q1", "", params, problem_from_ratios(discontinuity_ratios(n).first), {}};
  f.expectations = {expect_count(ExpectationKind::ef_components, floor_components(n), Provenance::stated)};
  return f;
}

Fixture q2(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 4, 12);
  Fixture f{"q2", "", params, problem_from_ratios(discontinuity_ratios(n).second), {}};
  f.expectations = {
      expect_count(ExpectationKind::ef_components, 1, Provenance::stated),
      expect_count(ExpectationKind::competitive_count, 1, Provenance::derived, "only the 1-split is competitive"),
  };
  return f;
}

Fixture rm_witness(const FixtureParams& params) {
  const std::size_t n = size_param(params, "n", 2, 10);
  const std::size_t m = size_param(params, "m", 2, 6);
  return Fixture{"rm_witness", "", params, rm_impossibility_witness(n, m).problem, {}};
}

struct Entry {
  const char* name;
  const char* description;
  FixtureParams defaults;
  std::function<Fixture(const FixtureParams&)> build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"ex_a_goods", "2 agents, 2 goods; competitive (8,4) against egalitarian (64/7,24/7)", {}, ex_a_goods},
      {"ex_a_bads", "same matrix as bads; competitive (6,3), egalitarian (48/7,18/7)", {}, ex_a_bads},
      {"ex_b", "bads with a harmless entry; unique division at price (0,2)", {}, ex_b},
      {"ex_c", "2 agents, 2 bads with three competitive divisions", {}, ex_c},
      {"canon_goods", "n-1 single-minded agents and one flexible agent, goods", {{"n", "4"}}, canon_goods},
      {"canon_bads", "n-1 single-minded agents and one flexible agent, bads", {{"n", "4"}}, canon_bads},
      {"t1_case2", "n agents, n+1 bads; every nonempty set of agents can share the last bad", {{"n", "3"}}, t1_case2},
      {"q_b", "3 agents, 3 goods, symmetric", {}, q_b},
      {"mirror_goods", "2 agents, 3 goods with mirrored rows", {}, mirror_goods},
      {"q_a", "q_b plus a good agent 1 does not want; egalitarian lowers agent 1", {}, q_a},
      {"alpha", "3 agents, 2 goods; agent 2 gains by reporting sqrt(alpha)", {{"alpha", "3/2"}}, alpha},
      {"t1_max_n2", "2 agents, m bads with 2m-1 competitive divisions", {{"m", "4"}}, t1_max_n2},
      {"maxsplit_m2", "n agents, 2 bads with 2n-1 competitive divisions", {{"n", "3"}}, maxsplit_m2},
      {"comp_count", "n agents, 2 bads with floor((2n+1)/3) envy-free components", {{"n", "4"}}, comp_count},
      {"q1", "start of the discontinuity path", {{"n", "4"}}, q1},
      {"q2", "end of the discontinuity path; a single envy-free component", {{"n", "4"}}, q2},
      {"rm_witness", "bads instance on which efficiency and fair share force a monotonicity failure",
       {{"n", "2"}, {"m", "2"}}, rm_witness},
  };
  return entries;
}

}  // namespace

std::string_view provenance_name(Provenance provenance) {
  return provenance == Provenance::stated ? "stated" : "derived";
}

std::string_view expectation_name(ExpectationKind kind) {
  switch (kind) {
    case ExpectationKind::competitive_profiles: return "competitive_profiles";
    case ExpectationKind::competitive_prices: return "competitive_prices";
    case ExpectationKind::competitive_count: return "competitive_count";
    case ExpectationKind::competitive_count_at_least: return "competitive_count_at_least";
    case ExpectationKind::competitive_allocations: return "competitive_allocations";
    case ExpectationKind::egalitarian_profile: return "egalitarian_profile";
    case ExpectationKind::egalitarian_allocation: return "egalitarian_allocation";
    case ExpectationKind::ef_components: return "ef_components";
  }
  return "unknown";
}

std::vector<FixtureInfo> corpus_catalog() {
  std::vector<FixtureInfo> out;
  for (const Entry& e : registry()) out.push_back({e.name, e.description, e.defaults});
  return out;
}

Fixture build_fixture(std::string_view name, const FixtureParams& params) {
  for (const Entry& e : registry()) {
    if (name != e.name) continue;
    FixtureParams merged = e.defaults;
    for (const auto& [key, value] : params) {
      if (!merged.contains(key)) throw Error(ErrorCode::InvalidArgument, "fixture " + std::string(name) + " has no parameter " + key);
      merged[key] = value;
    }
    Fixture f = e.build(merged);
    f.name = e.name;
    f.description = e.description;
    f.params = merged;
    return f;
  }
  throw Error(ErrorCode::UnknownInstance, "unknown instance \"" + std::string(name) + "\"");
}

std::vector<Fixture> exported_fixtures() {
  std::vector<Fixture> out;
  for (const Entry& e : registry()) out.push_back(build_fixture(e.name));
  for (const char* n : {"3", "5"}) {
    out.push_back(build_fixture("canon_goods", {{"n", n}}));
    out.push_back(build_fixture("comp_count", {{"n", n}}));
  }
  out.push_back(build_fixture("canon_bads", {{"n", "3"}}));
  out.push_back(build_fixture("comp_count", {{"n", "7"}}));
  for (const char* m : {"3", "5"}) out.push_back(build_fixture("t1_max_n2", {{"m", m}}));
  out.push_back(build_fixture("maxsplit_m2", {{"n", "4"}}));
  out.push_back(build_fixture("q1", {{"n", "5"}}));
  out.push_back(build_fixture("q2", {{"n", "5"}}));
  out.push_back(build_fixture("rm_witness", {{"n", "4"}, {"m", "2"}}));
  out.push_back(build_fixture("rm_witness", {{"n", "5"}, {"m", "3"}}));
  return out;
}

std::string fixture_stem(const Fixture& fixture) {
  std::string stem = fixture.name;
  for (const auto& [key, value] : fixture.params) {
    std::string clean;
    for (char c : value) clean += (c == '/') ? '_' : c;
    stem += "_" + key + clean;
  }
  return stem;
}

}  // namespace fairdiv
