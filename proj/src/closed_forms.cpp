#include <algorithm>
#include <numeric>

#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

namespace {

struct PositiveSplit {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> harmless;
};

PositiveSplit split_columns(const Problem& problem) {
  PositiveSplit out;
  const std::vector<std::size_t> zero = problem.items_with_zero();
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    if (std::find(zero.begin(), zero.end(), a) == zero.end()) {
      out.positive.push_back(a);
    } else {
      out.harmless.push_back(a);
    }
  }
  return out;
}

/// Harmless bads go in equal shares to the agents who do not mind them.
void place_harmless(const Problem& problem, const std::vector<std::size_t>& harmless, RationalMatrix& z) {
  for (std::size_t a : harmless) {
    std::vector<std::size_t> takers;
    for (std::size_t i = 0; i < problem.agent_count(); ++i) {
      if (problem.u(i, a) == 0) takers.push_back(i);
    }
    const Rational share(1, static_cast<long>(takers.size()));
    for (std::size_t i : takers) z(i, a) = share;
  }
}

CompetitiveDivision certify(const Problem& problem, RationalMatrix z, std::vector<Rational> price,
                            std::optional<CutSplitDescriptor> descriptor) {
  Allocation allocation(std::move(z));
  Verification check = verify_competitive(problem, allocation, PriceVector{std::move(price), PriceNormalization::sum_n});
  if (!check.ok()) {
    throw Error(ErrorCode::Internal, "closed form produced a non-competitive division: " + check.rejection->message);
  }
  return CompetitiveDivision{allocation, check.certificate->price, check.certificate->profile,
                             std::move(*check.certificate), std::move(descriptor)};
}

void require_bads(const Problem& problem) {
  if (!problem.is_bads()) throw Error(ErrorCode::KindMismatch, "closed forms apply to bads");
}

/// Only one bad is disliked by everybody: every agent takes 1/n of it.
EnumerationResult single_positive_bad(const Problem& problem, const PositiveSplit& columns, std::string method) {
  const std::size_t n = problem.agent_count();
  RationalMatrix z(n, problem.item_count());
  std::vector<Rational> price(problem.item_count());
  const std::size_t b = columns.positive.front();
  for (std::size_t i = 0; i < n; ++i) z(i, b) = Rational(1, static_cast<long>(n));
  price[b] = static_cast<long>(n);
  place_harmless(problem, columns.harmless, z);
  EnumerationResult result;
  result.method = std::move(method);
  result.divisions.push_back(certify(problem, std::move(z), std::move(price), std::nullopt));
  return result;
}

}  // namespace

EnumerationResult competitive_bads_n2(const Problem& problem) {
  require_bads(problem);
  if (problem.agent_count() != 2) throw Error(ErrorCode::InvalidArgument, "competitive_bads_n2 needs two agents");
  const PositiveSplit columns = split_columns(problem);
  if (columns.positive.size() == 1) return single_positive_bad(problem, columns, "closed_form_n2");

  // Sort by u_1k / u_2k and merge equal ratios into composites.
  std::vector<std::size_t> order = columns.positive;
  auto ratio = [&](std::size_t a) { return Rational(problem.u(0, a) / problem.u(1, a)); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ratio(x) < ratio(y); });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t a : order) {
    if (!groups.empty() && ratio(groups.back().front()) == ratio(a)) {
      groups.back().push_back(a);
    } else {
      groups.push_back({a});
    }
  }
  const std::size_t m = groups.size();
  std::vector<Rational> v1(m), v2(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t a : groups[k]) {
      v1[k] += problem.u(0, a);
      v2[k] += problem.u(1, a);
    }
  }
  // prefix1[k] = sum of v1 over groups [0, k); suffix2[k] = sum of v2 over groups [k, m).
  std::vector<Rational> prefix1(m + 1), suffix2(m + 1);
  for (std::size_t k = 0; k < m; ++k) prefix1[k + 1] = prefix1[k] + v1[k];
  for (std::size_t k = m; k-- > 0;) suffix2[k] = suffix2[k + 1] + v2[k];

  EnumerationResult result;
  result.method = "closed_form_n2";
  const std::size_t p = problem.item_count();

  // Share of composite k held by agent 1, expanded to constituents; composite price spread by utility.
  auto build = [&](const std::vector<Rational>& first_share, const std::vector<Rational>& composite_price,
                   CutSplitDescriptor descriptor) {
    RationalMatrix z(2, p);
    std::vector<Rational> price(p);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t a : groups[k]) {
        z(0, a) = first_share[k];
        z(1, a) = 1 - first_share[k];
        price[a] = composite_price[k] * problem.u(0, a) / v1[k];
      }
    }
    place_harmless(problem, columns.harmless, z);
    result.divisions.push_back(certify(problem, std::move(z), std::move(price), descriptor));
  };

  for (std::size_t k = 1; k <= m; ++k) {
    // k-split: agent 1 holds composites before k and a fraction x of composite k.
    const Rational lhs = prefix1[k - 1] / v1[k - 1];
    const Rational rhs = suffix2[k] / v2[k - 1];
    const Rational gap = lhs > rhs ? Rational(lhs - rhs) : Rational(rhs - lhs);
    if (gap == 1) result.boundary_case = true;
    if (gap < 1) {
      const Rational x = (1 + rhs - lhs) / 2;
      const Rational spend = lhs + x;
      std::vector<Rational> share(m), price(m);
      for (std::size_t l = 0; l < m; ++l) {
        if (l + 1 < k) {
          share[l] = 1;
          price[l] = v1[l] / v1[k - 1] / spend;
        } else if (l + 1 == k) {
          share[l] = x;
          price[l] = 1 / spend;
        } else {
          price[l] = v2[l] / v2[k - 1] / spend;
        }
      }
      CutSplitDescriptor d;
      d.kind = CutSplitKind::split;
      d.position = k;
      d.item = groups[k - 1].front();
      d.x = x;
      build(share, price, d);
    }
    if (k == m) break;
    // k/k+1 cut: agent 1 holds exactly the first k composites.
    const Rational level = prefix1[k] / suffix2[k];
    const Rational low = v1[k - 1] / v2[k - 1];
    const Rational high = v1[k] / v2[k];
    if (level == low || level == high) result.boundary_case = true;
    if (low <= level && level <= high) {
      std::vector<Rational> share(m), price(m);
      for (std::size_t l = 0; l < m; ++l) {
        if (l < k) {
          share[l] = 1;
          price[l] = v1[l] / prefix1[k];
        } else {
          price[l] = v2[l] / suffix2[k];
        }
      }
      CutSplitDescriptor d;
      d.kind = CutSplitKind::cut;
      d.position = k;
      build(share, price, d);
    }
  }
  return result;
}

EnumerationResult competitive_bads_m2(const Problem& problem) {
  require_bads(problem);
  if (problem.item_count() != 2) throw Error(ErrorCode::InvalidArgument, "competitive_bads_m2 needs two bads");
  const PositiveSplit columns = split_columns(problem);
  if (columns.positive.size() == 1) return single_positive_bad(problem, columns, "closed_form_m2");

  const std::size_t n = problem.agent_count();
  const Rational total(static_cast<long>(n));
  auto ratio = [&](std::size_t i) { return Rational(problem.u(i, 0) / problem.u(i, 1)); };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ratio(x) < ratio(y); });
  // Agents with equal ratios act as one block with a combined budget.
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i : order) {
    if (!blocks.empty() && ratio(blocks.back().front()) == ratio(i)) {
      blocks.back().push_back(i);
    } else {
      blocks.push_back({i});
    }
  }
  const std::size_t g_count = blocks.size();
  std::vector<long> before(g_count + 1, 0);  // agents in blocks [0, g)
  for (std::size_t g = 0; g < g_count; ++g) before[g + 1] = before[g] + static_cast<long>(blocks[g].size());

  EnumerationResult result;
  result.method = "closed_form_m2";
  // threshold(s) = s / (n - s), infinite when s = n.
  auto below_threshold = [&](const Rational& r, long s) { return s == static_cast<long>(n) || r * (total - s) < s; };
  auto at_threshold = [&](const Rational& r, long s) { return s != static_cast<long>(n) && r * (total - s) == s; };

  for (std::size_t g = 0; g < g_count; ++g) {
    const Rational r = ratio(blocks[g].front());
    const long s_before = before[g];
    const long s_through = before[g + 1];
    // Split: block g eats both bads at price ratio p_a / p_b = r.
    if (at_threshold(r, s_before) || at_threshold(r, s_through)) result.boundary_case = true;
    const bool above_lower = s_before == 0 || r * (total - s_before) > s_before;
    if (above_lower && below_threshold(r, s_through)) {
      const Rational pa = total * r / (r + 1);
      const Rational pb = total / (r + 1);
      const Rational x_total = 1 - Rational(s_before) / pa;
      const Rational y_total = 1 - Rational(static_cast<long>(n) - s_through) / pb;
      const Rational width(static_cast<long>(blocks[g].size()));
      RationalMatrix z(n, 2);
      for (std::size_t h = 0; h < g_count; ++h) {
        for (std::size_t i : blocks[h]) {
          if (h < g) {
            z(i, 0) = 1 / pa;
          } else if (h > g) {
            z(i, 1) = 1 / pb;
          } else {
            z(i, 0) = x_total / width;
            z(i, 1) = y_total / width;
          }
        }
      }
      CutSplitDescriptor d;
      d.kind = CutSplitKind::split;
      d.position = static_cast<std::size_t>(s_before) + 1;
      d.agent = blocks[g].front();
      d.x = x_total / width;
      d.y = y_total / width;
      result.divisions.push_back(certify(problem, std::move(z), {pa, pb}, d));
    }
    if (g + 1 == g_count) break;
    // Cut after block g: blocks up to g eat only a.
    const Rational level(s_through, static_cast<long>(n) - s_through);
    const Rational next = ratio(blocks[g + 1].front());
    if (level == r || level == next) result.boundary_case = true;
    if (r <= level && level <= next) {
      RationalMatrix z(n, 2);
      for (std::size_t h = 0; h < g_count; ++h) {
        for (std::size_t i : blocks[h]) {
          if (h <= g) {
            z(i, 0) = Rational(1, s_through);
          } else {
            z(i, 1) = Rational(1, static_cast<long>(n) - s_through);
          }
        }
      }
      CutSplitDescriptor d;
      d.kind = CutSplitKind::cut;
      d.position = static_cast<std::size_t>(s_through);
      result.divisions.push_back(
          certify(problem, std::move(z), {Rational(s_through), Rational(static_cast<long>(n) - s_through)}, d));
    }
  }
  return result;
}

}  // namespace fairdiv
