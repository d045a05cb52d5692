#include "fairdiv/ef_geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "fairdiv/efficiency.hpp"
#include "fairdiv/optimization_kernel.hpp"

namespace fairdiv {

namespace {

struct Ranking {
  std::vector<std::size_t> order;
  std::vector<Rational> ratio;
};

void require_positive_pair(const Problem& problem) {
  if (!problem.is_bads()) throw Error(ErrorCode::KindMismatch, "envy-free geometry is defined for bads");
  if (problem.item_count() != 2) throw Error(ErrorCode::InvalidArgument, "expected exactly two bads");
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    for (std::size_t a = 0; a < 2; ++a) {
      if (problem.u(i, a) == 0) throw Error(ErrorCode::InvalidArgument, "entries must be positive", i, a);
    }
  }
}

Ranking rank_agents(const Problem& problem) {
  Ranking r;
  r.order.resize(problem.agent_count());
  std::iota(r.order.begin(), r.order.end(), 0);
  auto ratio = [&](std::size_t i) { return Rational(problem.u(i, 0) / problem.u(i, 1)); };
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t x, std::size_t y) { return ratio(x) < ratio(y); });
  for (std::size_t i : r.order) r.ratio.push_back(ratio(i));
  return r;
}

struct Affine {
  Rational c0, cx, cy;
};

/// Rank j's shares of (a, b) in the i-split as affine functions of (x, y); i is 1-based.
std::vector<std::array<Affine, 2>> split_form(std::size_t n, std::size_t i) {
  std::vector<std::array<Affine, 2>> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j + 1 < i) {
      const Rational w(1, static_cast<long>(i - 1));
      f[j][0] = {w, -w, 0};
    } else if (j + 1 == i) {
      f[j][0] = {0, 1, 0};
      f[j][1] = {0, 0, 1};
    } else {
      const Rational w(1, static_cast<long>(n - i));
      f[j][1] = {w, 0, -w};
    }
  }
  return f;
}

/// Rank j's disutility of rank k's bundle, as an affine function of (x, y).
Affine valuation_form(const Problem& problem, const Ranking& ranking, const std::vector<std::array<Affine, 2>>& f,
                      std::size_t j, std::size_t k) {
  Affine out;
  for (std::size_t a = 0; a < 2; ++a) {
    const Rational& w = problem.u(ranking.order[j], a);
    out.c0 += w * f[k][a].c0;
    out.cx += w * f[k][a].cx;
    out.cy += w * f[k][a].cy;
  }
  return out;
}

void add_affine(LinearProgram& lp, std::size_t x, std::size_t y, const Affine& form, Sense sense, const Rational& rhs) {
  LinearForm terms;
  if (form.cx != 0) terms.emplace_back(x, form.cx);
  if (form.cy != 0) terms.emplace_back(y, form.cy);
  const Rational bound = rhs - form.c0;
  if (terms.empty()) {
    const bool ok = sense == Sense::less_equal ? 0 <= bound : sense == Sense::equal ? bound == 0 : 0 >= bound;
    if (!ok) lp.add_constraint({{x, Rational(1)}}, Sense::less_equal, -1);
    return;
  }
  lp.add_constraint(std::move(terms), sense, bound);
}

/// S^i intersected with the envy-free set on variables (x, y) = (offset, offset + 1).
void add_polygon(LinearProgram& lp, const Problem& problem, const Ranking& ranking, std::size_t i, std::size_t offset) {
  const std::size_t n = problem.agent_count();
  const std::size_t x = offset;
  const std::size_t y = offset + 1;
  lp.add_constraint({{x, Rational(1)}}, Sense::less_equal, Rational(1, static_cast<long>(i)));
  lp.add_constraint({{y, Rational(1)}}, Sense::less_equal, Rational(1, static_cast<long>(n - i + 1)));
  if (i == 1) lp.add_constraint({{x, Rational(1)}}, Sense::equal, 1);
  if (i == n) lp.add_constraint({{y, Rational(1)}}, Sense::equal, 1);
  const auto f = split_form(n, i);
  for (std::size_t j = 0; j < n; ++j) {
    const Affine own = valuation_form(problem, ranking, f, j, j);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const Affine other = valuation_form(problem, ranking, f, j, k);
      add_affine(lp, x, y, Affine{own.c0 - other.c0, own.cx - other.cx, own.cy - other.cy}, Sense::less_equal, 0);
    }
  }
}

Allocation allocation_at(const Problem& problem, const Ranking& ranking, std::size_t i, const Rational& x,
                         const Rational& y) {
  const std::size_t n = problem.agent_count();
  const auto f = split_form(n, i);
  RationalMatrix z(n, 2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < 2; ++a) z(ranking.order[j], a) = f[j][a].c0 + f[j][a].cx * x + f[j][a].cy * y;
  }
  return Allocation(std::move(z));
}

struct Aggregate {
  Problem problem;
  /// Column group (0 or 1) of every original column.
  std::vector<std::size_t> group;
  bool merged = false;
};

bool parallel_columns(const Problem& problem, std::size_t k, std::size_t l) {
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    for (std::size_t j = i + 1; j < problem.agent_count(); ++j) {
      if (problem.u(i, k) * problem.u(j, l) != problem.u(j, k) * problem.u(i, l)) return false;
    }
  }
  return true;
}

Aggregate aggregate(const Problem& problem) {
  if (!problem.is_bads()) throw Error(ErrorCode::KindMismatch, "envy-free geometry is defined for bads");
  if (problem.item_count() == 2) return {problem, {0, 1}, false};
  std::vector<std::size_t> heads;
  std::vector<std::size_t> group(problem.item_count());
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    std::size_t g = 0;
    while (g < heads.size() && !parallel_columns(problem, heads[g], a)) ++g;
    if (g == heads.size()) heads.push_back(a);
    group[a] = g;
  }
  if (heads.size() != 2) throw Error(ErrorCode::InvalidArgument, "expected two bads up to parallel columns");
  RationalMatrix u(problem.agent_count(), 2);
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    for (std::size_t a = 0; a < problem.item_count(); ++a) u(i, group[a]) += problem.u(i, a);
  }
  std::vector<std::string> ids = {problem.items()[heads[0]], problem.items()[heads[1]]};
  return {Problem(problem.agents(), ids, ItemKind::bads, u), group, true};
}

/// Every column of a group receives the group's shares.
Allocation expand(const Allocation& z, const std::vector<std::size_t>& group) {
  RationalMatrix out(z.agent_count(), group.size());
  for (std::size_t i = 0; i < z.agent_count(); ++i) {
    for (std::size_t a = 0; a < group.size(); ++a) out(i, a) = z.z(i, group[a]);
  }
  return Allocation(std::move(out));
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::string fraction(std::size_t num, std::size_t den) {
  if (den == 0) return "inf";
  return to_string(Rational(static_cast<long>(num), static_cast<long>(den)));
}

std::string ratio_name(const Ranking& ranking, std::size_t rank) {
  return "r_" + std::to_string(rank) + " = " + to_string(ranking.ratio[rank - 1]);
}

/// Cut z^{i/i+1} is envy-free: r_i <= i/(n-i) <= r_{i+1}.
bool cut_formula(const Ranking& ranking, std::size_t n, std::size_t i) {
  const Rational level(static_cast<long>(i), static_cast<long>(n - i));
  return ranking.ratio[i - 1] <= level && level <= ranking.ratio[i];
}

/// S^i holds an interior component: (i-1)/(n-i+1) < r_{i-1} < r_i < r_{i+1} < i/(n-i), truncated at the ends.
bool interior_formula(const Ranking& ranking, std::size_t n, std::size_t i) {
  const auto& r = ranking.ratio;
  if (i == 1) return r[0] < r[1] && r[1] < Rational(1, static_cast<long>(n - 1));
  if (i == n) return Rational(static_cast<long>(n - 1)) < r[n - 2] && r[n - 2] < r[n - 1];
  return Rational(static_cast<long>(i - 1), static_cast<long>(n - i + 1)) < r[i - 2] && r[i - 2] < r[i - 1] &&
         r[i - 1] < r[i] && r[i] < Rational(static_cast<long>(i), static_cast<long>(n - i));
}

}  // namespace

CutSplitDescriptor classify_m2(const Problem& problem, const Allocation& allocation) {
  require_positive_pair(problem);
  if (!is_efficient(problem, allocation).efficient) {
    throw Error(ErrorCode::NotEfficient, "allocation is not efficient");
  }
  const std::size_t n = problem.agent_count();
  Ranking ranking = rank_agents(problem);
  // Within a tie, agents eating a come first.
  std::vector<std::size_t> order = ranking.order;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Rational rx = problem.u(x, 0) / problem.u(x, 1);
    const Rational ry = problem.u(y, 0) / problem.u(y, 1);
    if (rx != ry) return rx < ry;
    return allocation.z(x, 0) > allocation.z(y, 0);
  });
  std::optional<std::size_t> last_a, first_b;
  for (std::size_t j = 0; j < n; ++j) {
    if (allocation.z(order[j], 0) > 0) last_a = j;
    if (!first_b && allocation.z(order[j], 1) > 0) first_b = j;
  }
  auto shares_equal = [&](std::size_t from, std::size_t to, std::size_t item) {
    for (std::size_t j = from; j < to; ++j) {
      if (allocation.z(order[j], item) != allocation.z(order[from], item)) return false;
      if (allocation.z(order[j], 1 - item) != 0) return false;
    }
    return true;
  };
  const Error not_form(ErrorCode::InvalidArgument, "allocation is neither a cut nor a split");
  if (!last_a || !first_b) throw not_form;
  CutSplitDescriptor d;
  if (*last_a < *first_b) {
    const std::size_t i = *last_a + 1;
    if (*first_b != i || !shares_equal(0, i, 0) || !shares_equal(i, n, 1)) throw not_form;
    d.kind = CutSplitKind::cut;
    d.position = i;
    return d;
  }
  if (*last_a != *first_b) throw not_form;
  const std::size_t s = *last_a;
  if (!shares_equal(0, s, 0) || !shares_equal(s + 1, n, 1)) throw not_form;
  d.kind = CutSplitKind::split;
  d.position = s + 1;
  d.agent = order[s];
  d.x = allocation.z(order[s], 0);
  d.y = allocation.z(order[s], 1);
  return d;
}

Allocation split_allocation(const Problem& problem, std::size_t i, const Rational& x, const Rational& y) {
  require_positive_pair(problem);
  if (i < 1 || i > problem.agent_count()) throw Error(ErrorCode::InvalidArgument, "split index out of range");
  return allocation_at(problem, rank_agents(problem), i, x, y);
}

ComponentStructure count_ef_components(const Problem& input) {
  const Aggregate agg = aggregate(input);
  const Problem& problem = agg.problem;
  require_positive_pair(problem);
  const std::size_t n = problem.agent_count();
  const Ranking ranking = rank_agents(problem);

  ComponentStructure out;
  out.order = ranking.order;
  out.ratios = ranking.ratio;
  out.aggregated = agg.merged;

  // Nonempty polygons S^i cap EF, with a sample point each.
  std::vector<std::size_t> live;
  std::vector<Allocation> samples;
  for (std::size_t i = 1; i <= n; ++i) {
    LinearProgram lp(2);
    add_polygon(lp, problem, ranking, i, 0);
    lp.set_objective(Goal::maximize, {{0, Rational(1)}, {1, Rational(1)}});
    const LpSolution high = solve_lp(lp);
    if (high.status != LpStatus::optimal) continue;
    lp.set_objective(Goal::minimize, {{0, Rational(1)}, {1, Rational(1)}});
    const LpSolution low = solve_lp(lp);
    const Rational x = (high.point[0] + low.point[0]) / 2;
    const Rational y = (high.point[1] + low.point[1]) / 2;
    live.push_back(i);
    samples.push_back(allocation_at(problem, ranking, i, x, y));
  }

  // Two polygons are connected when some pair of their points yields the same profile.
  UnionFind uf(live.size());
  for (std::size_t s = 0; s < live.size(); ++s) {
    for (std::size_t t = s + 1; t < live.size(); ++t) {
      LinearProgram lp(4);
      add_polygon(lp, problem, ranking, live[s], 0);
      add_polygon(lp, problem, ranking, live[t], 2);
      const auto fs = split_form(n, live[s]);
      const auto ft = split_form(n, live[t]);
      for (std::size_t j = 0; j < n; ++j) {
        const Affine vs = valuation_form(problem, ranking, fs, j, j);
        const Affine vt = valuation_form(problem, ranking, ft, j, j);
        LinearForm terms;
        if (vs.cx != 0) terms.emplace_back(0, vs.cx);
        if (vs.cy != 0) terms.emplace_back(1, vs.cy);
        if (vt.cx != 0) terms.emplace_back(2, -vt.cx);
        if (vt.cy != 0) terms.emplace_back(3, -vt.cy);
        const Rational rhs = vt.c0 - vs.c0;
        if (terms.empty()) {
          if (rhs != 0) lp.add_constraint({{0, Rational(1)}}, Sense::less_equal, -1);
          continue;
        }
        lp.add_constraint(std::move(terms), Sense::equal, rhs);
      }
      if (solve_lp(lp).status == LpStatus::optimal) uf.unite(s, t);
    }
  }

  std::vector<bool> cut_ef(n, false);
  for (std::size_t i = 1; i < n; ++i) {
    cut_ef[i] = envy_report(problem, allocation_at(problem, ranking, i, Rational(1, static_cast<long>(i)), 0)).holds();
  }

  std::vector<std::size_t> roots;
  for (std::size_t s = 0; s < live.size(); ++s) {
    const std::size_t root = uf.find(s);
    auto it = std::find(roots.begin(), roots.end(), root);
    std::size_t c;
    if (it == roots.end()) {
      roots.push_back(root);
      out.components.push_back(EfComponent{"", {}, {}, {}, expand(samples[s], agg.group)});
      c = out.components.size() - 1;
    } else {
      c = static_cast<std::size_t>(it - roots.begin());
    }
    EfComponent& comp = out.components[c];
    const std::size_t i = live[s];
    comp.rectangles.push_back(i);
    if (i < n && cut_ef[i] && std::find(comp.cuts.begin(), comp.cuts.end(), i) == comp.cuts.end()) comp.cuts.push_back(i);
    if (i > 1 && cut_ef[i - 1] && std::find(comp.cuts.begin(), comp.cuts.end(), i - 1) == comp.cuts.end()) {
      comp.cuts.push_back(i - 1);
    }
  }
  for (EfComponent& comp : out.components) {
    std::sort(comp.cuts.begin(), comp.cuts.end());
    if (comp.cuts.size() == 1) {
      comp.tag = "around-cut";
    } else if (comp.cuts.empty() && comp.rectangles.size() == 1) {
      comp.tag = "interior";
    } else {
      comp.tag = "merged-range";
    }
    for (std::size_t i : comp.cuts) {
      comp.inequalities.push_back(ratio_name(ranking, i) + " <= " + fraction(i, n - i) + " <= " +
                                  ratio_name(ranking, i + 1));
    }
    if (comp.cuts.empty()) {
      for (std::size_t i : comp.rectangles) {
        std::string text;
        if (i > 1) text += fraction(i - 1, n - i + 1) + " < " + ratio_name(ranking, i - 1) + " < ";
        text += ratio_name(ranking, i);
        if (i < n) text += " < " + ratio_name(ranking, i + 1) + " < " + fraction(i, n - i);
        comp.inequalities.push_back(text);
      }
    }
  }

  bool distinct = true;
  for (std::size_t j = 1; j < n; ++j) distinct = distinct && ranking.ratio[j - 1] < ranking.ratio[j];
  if (distinct) {
    std::size_t count = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (cut_formula(ranking, n, i) && (i == 1 || !cut_formula(ranking, n, i - 1))) ++count;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (interior_formula(ranking, n, i)) ++count;
    }
    out.formula_count = count;
  }
  return out;
}

Problem clone_bads(const Problem& problem, std::size_t target_m) {
  if (!problem.is_bads() || problem.item_count() != 2) throw Error(ErrorCode::InvalidArgument, "cloning needs two bads");
  if (target_m < 2) throw Error(ErrorCode::InvalidArgument, "target item count must be at least 2");
  if (target_m == 2) return problem;
  const std::size_t clones = target_m - 1;
  RationalMatrix u(problem.agent_count(), target_m);
  std::vector<std::string> ids = {problem.items()[0]};
  for (std::size_t k = 1; k <= clones; ++k) ids.push_back(problem.items()[1] + std::to_string(k));
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    u(i, 0) = problem.u(i, 0);
    for (std::size_t k = 1; k <= clones; ++k) u(i, k) = problem.u(i, 1) / static_cast<long>(clones);
  }
  return Problem(problem.agents(), ids, ItemKind::bads, u);
}

Allocation aggregate_clones(const Allocation& cloned) {
  RationalMatrix z(cloned.agent_count(), 2);
  for (std::size_t i = 0; i < cloned.agent_count(); ++i) {
    z(i, 0) = cloned.z(i, 0);
    for (std::size_t k = 1; k < cloned.item_count(); ++k) z(i, 1) += cloned.z(i, k);
    z(i, 1) /= static_cast<long>(cloned.item_count() - 1);
  }
  return Allocation(std::move(z));
}

Problem problem_from_ratios(const std::vector<Rational>& ratios) {
  std::vector<std::vector<Rational>> rows;
  for (const Rational& r : ratios) rows.push_back({r, Rational(1)});
  return validate_problem(rows, ItemKind::bads);
}

std::vector<Rational> comp_count_ratios(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two agents");
  const long size = static_cast<long>(n);
  std::vector<Rational> r = {Rational(1, size + 1), Rational(1, size)};
  for (long q = 1; 3 * q <= size; ++q) {
    const long first = 3 * q;
    const long members = std::min(first + 2, size) - first + 1;
    if (first == size) {
      r.emplace_back(size);
      break;
    }
    const Rational low(first, size - first);
    if (first + 1 == size) {
      for (long k = 1; k <= members; ++k) r.push_back(low + k);
      continue;
    }
    const Rational high(first + 1, size - first - 1);
    for (long k = 1; k <= members; ++k) r.push_back(low + (high - low) * k / 4);
  }
  return r;
}

std::pair<std::vector<Rational>, std::vector<Rational>> discontinuity_ratios(std::size_t agents) {
  if (agents < 4) throw Error(ErrorCode::InvalidArgument, "the discontinuity pair needs at least four agents");
  std::vector<Rational> start = comp_count_ratios(agents);
  std::vector<Rational> end = start;
  if (agents == 4) {
    end[2] = Rational(1, 2);
    end[3] = 2;
  } else {
    // Strictly inside (1/(n-1), 2/(n-2)): no cut is envy-free and only S^1 keeps an interior component.
    const long n = static_cast<long>(agents);
    const Rational low(1, n - 1);
    const Rational high(2, n - 2);
    for (std::size_t k = 2; k < agents; ++k) end[k] = low + (high - low) * static_cast<long>(k - 1) / (n - 1);
  }
  return {start, end};
}

DiscontinuityReport discontinuity_demo(const RuleHandle& selection, std::size_t agents, std::size_t steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "need at least one step");
  if (selection.kind == RuleKind::competitive_bads && selection.selection == Selection::all) {
    throw Error(ErrorCode::InvalidArgument, "discontinuity demo needs a single-valued selection");
  }
  const auto [start, end] = discontinuity_ratios(agents);
  DiscontinuityReport report{problem_from_ratios(start), problem_from_ratios(end), selection.name(), steps,
                             {}, {}, 0, {}, {}, 0, 0, 0, std::nullopt, false};
  report.components_start = count_ef_components(report.q1).count();
  report.components_end = count_ef_components(report.q2).count();
  for (std::size_t k = 0; k < agents; ++k) {
    const Rational delta = abs(end[k] - start[k]) / static_cast<long>(steps);
    report.per_step_bound = std::max(report.per_step_bound, delta);
  }

  std::optional<UtilityProfile> previous;
  for (std::size_t s = 0; s <= steps; ++s) {
    std::vector<Rational> ratios(agents);
    for (std::size_t k = 0; k < agents; ++k) {
      ratios[k] = start[k] + (end[k] - start[k]) * static_cast<long>(s) / static_cast<long>(steps);
    }
    const Problem problem = problem_from_ratios(ratios);
    const RuleOutcome chosen = apply_rule(selection, problem).front();
    if (!envy_report(problem, chosen.allocation).holds()) {
      if (selection.kind != RuleKind::egalitarian) {
        throw Error(ErrorCode::SelectionNotEF, "selection is not envy-free at step " + std::to_string(s));
      }
      ++report.envy_failures;
      if (!report.first_envy_step) report.first_envy_step = s;
    }
    const UtilityProfile current = normalized_profile(problem, chosen.profile);
    if (previous) {
      Rational distance = 0;
      for (std::size_t k = 0; k < agents; ++k) distance = std::max(distance, Rational(abs(current[k] - (*previous)[k])));
      if (distance > report.max_jump) {
        report.max_jump = distance;
        report.jump_step = s;
        report.before_jump = *previous;
        report.after_jump = current;
      }
    }
    previous = current;
  }
  report.jump_detected = report.max_jump > report.per_step_bound * 10;
  return report;
}

}  // namespace fairdiv
