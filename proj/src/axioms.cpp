#include "fairdiv/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "fairdiv/efficiency.hpp"
#include "fairdiv/egalitarian.hpp"

namespace fairdiv {

namespace {

Rational fair_share(const Problem& problem, std::size_t agent) {
  return problem.row_total(agent) / static_cast<long>(problem.agent_count());
}

void require_profile(const Problem& problem, const UtilityProfile& profile) {
  if (profile.size() != problem.agent_count()) {
    throw Error(ErrorCode::DimensionMismatch, "profile length does not match agent count");
  }
}

Witness witness_for(const Problem& problem) {
  Witness w;
  w.problem = problem;
  return w;
}

/// Whether allocation is a member of the rule's output at problem, compared at the profile level.
bool member(const RuleHandle& rule, const Problem& problem, const Allocation& allocation,
            const EnumerationOptions& options) {
  if (rule.kind != RuleKind::egalitarian && rule.selection == Selection::all) {
    return verify_competitive(problem, allocation).ok();
  }
  const UtilityProfile profile = utility_profile(problem, allocation);
  for (const RuleOutcome& outcome : apply_rule(rule, problem, options)) {
    if (outcome.profile == profile) return true;
  }
  return false;
}

std::string group_label(const std::vector<std::size_t>& group, const Problem& problem) {
  std::string out = "{";
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (k) out += ",";
    out += problem.agents()[group[k]];
  }
  return out + "}";
}

}  // namespace

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

AxiomReport fair_share_report(const Problem& problem, const UtilityProfile& profile) {
  require_profile(problem, profile);
  const std::size_t n = problem.agent_count();
  AxiomReport fsg{"FSG", Verdict::holds, {}, std::nullopt, {}};
  Witness offenders = witness_for(problem);
  offenders.profile = profile;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational margin = profile[i] - fair_share(problem, i);
    fsg.margins.push_back(margin);
    const bool ok = problem.is_bads() ? margin <= 0 : margin >= 0;
    if (!ok) offenders.pairs.emplace_back(i, i);
  }
  if (!offenders.pairs.empty()) {
    fsg.verdict = Verdict::violated;
    offenders.note = "agents below their fair share";
    fsg.witness = offenders;
  }

  AxiomReport strict{"SFSG", Verdict::holds, fsg.margins, std::nullopt, {}};
  const bool split_efficient = is_efficient(problem, equal_split(problem)).efficient;
  Witness strict_offenders = witness_for(problem);
  strict_offenders.profile = profile;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& margin = fsg.margins[i];
    bool ok;
    if (split_efficient) {
      ok = margin == 0;
    } else {
      ok = problem.is_bads() ? margin < 0 : margin > 0;
    }
    if (!ok) strict_offenders.pairs.emplace_back(i, i);
  }
  if (!strict_offenders.pairs.empty()) {
    strict.verdict = Verdict::violated;
    strict_offenders.note = split_efficient ? "equal split is efficient but the profile differs from fair shares"
                                            : "equal split is inefficient and some agent gets only the fair share";
    strict.witness = strict_offenders;
  }
  fsg.details.push_back(std::move(strict));
  return fsg;
}

AxiomReport envy_report(const Problem& problem, const Allocation& allocation) {
  const std::size_t n = problem.agent_count();
  if (allocation.agent_count() != n || allocation.item_count() != problem.item_count()) {
    throw Error(ErrorCode::DimensionMismatch, "allocation shape does not match problem");
  }
  AxiomReport report{"NE", Verdict::holds, {}, std::nullopt, {}};
  Witness w = witness_for(problem);
  w.allocation = allocation;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational own = valuation(problem, allocation, i, i);
    std::optional<Rational> worst;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational other = valuation(problem, allocation, i, j);
      const Rational slack = problem.is_bads() ? Rational(other - own) : Rational(own - other);
      if (slack < 0) {
        w.pairs.emplace_back(i, j);
        w.values.push_back(slack);
      }
      if (!worst || slack < *worst) worst = slack;
    }
    report.margins.push_back(worst.value_or(Rational(0)));
  }
  if (!w.pairs.empty()) {
    report.verdict = Verdict::violated;
    w.note = "ordered pairs (envious, envied) with negative slack";
    report.witness = std::move(w);
  }
  return report;
}

AxiomReport ete_check(const Problem& problem, const UtilityProfile& profile) {
  require_profile(problem, profile);
  const std::size_t n = problem.agent_count();
  AxiomReport report{"ETE", Verdict::not_applicable, {}, std::nullopt, {}};
  Witness w = witness_for(problem);
  w.profile = profile;
  bool any_pair = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (problem.row(i) != problem.row(j)) continue;
      any_pair = true;
      if (profile[i] != profile[j]) {
        w.pairs.emplace_back(i, j);
        w.values.push_back(profile[i] - profile[j]);
      }
    }
  }
  if (any_pair) report.verdict = w.pairs.empty() ? Verdict::holds : Verdict::violated;
  if (!w.pairs.empty()) {
    w.note = "identical rows with different utilities";
    report.witness = std::move(w);
  }
  return report;
}

std::string RuleHandle::name() const {
  switch (kind) {
    case RuleKind::egalitarian: return "egalitarian";
    case RuleKind::competitive_goods: return "competitive-goods";
    case RuleKind::competitive_bads:
      switch (selection) {
        case Selection::all: return "competitive-bads";
        case Selection::median: return "competitive-bads-median";
        case Selection::max_nash: return "competitive-bads-max-nash";
      }
  }
  return "unknown";
}

RuleHandle RuleHandle::parse(std::string_view text) {
  if (text == "egalitarian") return {RuleKind::egalitarian, Selection::all};
  if (text == "competitive-goods") return {RuleKind::competitive_goods, Selection::all};
  if (text == "competitive-bads" || text == "competitive-bads-all") return {RuleKind::competitive_bads, Selection::all};
  if (text == "competitive-bads-median") return {RuleKind::competitive_bads, Selection::median};
  if (text == "competitive-bads-max-nash") return {RuleKind::competitive_bads, Selection::max_nash};
  throw Error(ErrorCode::InvalidArgument, "unknown rule \"" + std::string(text) + "\"");
}

RuleHandle RuleHandle::competitive_for(ItemKind kind, Selection selection) {
  if (kind == ItemKind::goods) return {RuleKind::competitive_goods, Selection::all};
  return {RuleKind::competitive_bads, selection};
}

std::vector<RuleOutcome> apply_rule(const RuleHandle& rule, const Problem& problem, const EnumerationOptions& options) {
  switch (rule.kind) {
    case RuleKind::egalitarian: {
      EgalitarianResult result = egalitarian(problem);
      return {RuleOutcome{std::move(result.profile), std::move(result.allocation)}};
    }
    case RuleKind::competitive_goods: {
      if (problem.is_bads()) throw Error(ErrorCode::KindMismatch, "competitive-goods rule applied to bads");
      CompetitiveDivision division = competitive_goods(problem, options);
      return {RuleOutcome{std::move(division.profile), std::move(division.allocation)}};
    }
    case RuleKind::competitive_bads: break;
  }
  if (!problem.is_bads()) throw Error(ErrorCode::KindMismatch, "competitive-bads rule applied to goods");
  EnumerationResult result = enumerate_competitive(problem, options);
  std::vector<CompetitiveDivision>& divisions = result.divisions;
  if (divisions.empty()) throw Error(ErrorCode::Internal, "no competitive division found");
  std::vector<RuleOutcome> out;
  if (rule.selection == Selection::all) {
    for (CompetitiveDivision& d : divisions) out.push_back({std::move(d.profile), std::move(d.allocation)});
    return out;
  }
  CompetitiveDivision& pick = divisions[select_division(divisions, rule.selection)];
  out.push_back({std::move(pick.profile), std::move(pick.allocation)});
  return out;
}

std::size_t select_division(const std::vector<CompetitiveDivision>& divisions, Selection selection) {
  if (divisions.empty()) throw Error(ErrorCode::InvalidArgument, "no division to select from");
  switch (selection) {
    case Selection::all:
      throw Error(ErrorCode::InvalidArgument, "the all-divisions selection is not single-valued");
    case Selection::median: {
      // Closed forms list divisions along the chain; otherwise the list is sorted by profile.
      const bool chained = std::all_of(divisions.begin(), divisions.end(),
                                       [](const CompetitiveDivision& d) { return d.descriptor.has_value(); });
      std::vector<std::pair<std::size_t, std::size_t>> keyed;
      for (std::size_t k = 0; k < divisions.size(); ++k) {
        keyed.emplace_back(chained ? divisions[k].descriptor->chain_key() : k, k);
      }
      std::sort(keyed.begin(), keyed.end());
      return keyed[(keyed.size() - 1) / 2].second;
    }
    case Selection::max_nash: {
      std::size_t best = 0;
      for (std::size_t k = 1; k < divisions.size(); ++k) {
        if (nash_product(divisions[k].profile) > nash_product(divisions[best].profile)) best = k;
      }
      return best;
    }
  }
  return 0;
}

AxiomReport rm_compare(const Problem& problem, const Problem& smaller, const RuleHandle& rule,
                       const EnumerationOptions& options) {
  const std::vector<RuleOutcome> before = apply_rule(rule, problem, options);
  const std::vector<RuleOutcome> after = apply_rule(rule, smaller, options);
  const std::size_t n = problem.agent_count();
  AxiomReport report{"RM", Verdict::holds, std::vector<Rational>(n), std::nullopt, {}};
  bool first = true;
  for (const RuleOutcome& big : before) {
    for (const RuleOutcome& small : after) {
      for (std::size_t i = 0; i < n; ++i) {
        const Rational margin = big.profile[i] - small.profile[i];
        if (first || margin < report.margins[i]) report.margins[i] = margin;
        if (margin < 0 && !report.witness) {
          Witness w;
          w.problem = smaller;
          w.allocation = small.allocation;
          w.profile = small.profile;
          w.pairs.emplace_back(i, i);
          w.values = {big.profile[i], small.profile[i]};
          w.note = "agent " + problem.agents()[i] + " has " + to_string(big.profile[i]) + " before and " +
                   to_string(small.profile[i]) + " after the change";
          report.witness = std::move(w);
          report.verdict = Verdict::violated;
        }
      }
      first = false;
    }
  }
  return report;
}

AxiomReport rm_probe(const Problem& problem, const std::vector<std::size_t>& removed_items, const RuleHandle& rule,
                     const EnumerationOptions& options) {
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    if (std::find(removed_items.begin(), removed_items.end(), a) == removed_items.end()) keep.push_back(a);
  }
  for (std::size_t a : removed_items) {
    if (a >= problem.item_count()) throw Error(ErrorCode::InvalidSubproblem, "removed item out of range", std::nullopt, a);
  }
  if (removed_items.empty()) throw Error(ErrorCode::InvalidSubproblem, "no item removed");
  std::optional<Problem> smaller;
  try {
    smaller = restrict_items(problem, keep);
  } catch (const ValidationError& e) {
    throw Error(ErrorCode::InvalidSubproblem, std::string("removal leaves an invalid problem: ") + e.what());
  }
  return rm_compare(problem, *smaller, rule, options);
}

RmWitness rm_impossibility_witness(std::size_t agents, std::size_t bads) {
  if (agents < 2) throw Error(ErrorCode::InvalidArgument, "witness needs at least two agents");
  if (bads < 2) throw Error(ErrorCode::InvalidArgument, "witness needs at least two bads");
  const std::size_t n = agents;
  const long half = static_cast<long>(n / 2);
  const Rational big = n == 2 ? Rational(4) : Rational(5 * half);
  Rational shrink;
  if (n == 2) {
    shrink = Rational(1, 9);
  } else if (n % 2 == 0) {
    shrink = Rational(1, 10 * half);
  } else {
    shrink = Rational(1, 10 * half * static_cast<long>(n));
  }
  const Rational eps(1, 100 * static_cast<long>(n * bads));

  RationalMatrix u(n, bads);
  RmWitness out{validate_problem(std::vector<std::vector<Rational>>{{1, 1}, {1, 1}}, ItemKind::bads), {}, {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const bool first_group = i < static_cast<std::size_t>(half);
    (first_group ? out.group1 : out.group2).push_back(i);
    u(i, 0) = first_group ? Rational(1) : big;
    u(i, 1) = first_group ? big : Rational(1);
    for (std::size_t c = 2; c < bads; ++c) u(i, c) = eps;
  }
  out.problem = validate_problem(u, ItemKind::bads);
  const Problem& q = out.problem;
  const std::vector<std::string>& ids = q.items();

  out.argument.push_back("group N1 = " + group_label(out.group1, q) + " has u_i = (1, " + to_string(big) +
                         "), group N2 = " + group_label(out.group2, q) + " has u_i = (" + to_string(big) + ", 1)");
  out.argument.push_back("at an efficient division no agent of N1 eats " + ids[1] +
                         " or no agent of N2 eats " + ids[0] + ", else swapping the two bads is a Pareto improvement");
  if (bads > 2) out.argument.push_back("each extra bad costs every agent " + to_string(eps));

  for (std::size_t x = 0; x < 2; ++x) {
    const std::size_t y = 1 - x;
    RmCase c{x == 0 ? out.group1 : out.group2, x, q, {}, {}, {}, false};
    const std::vector<std::size_t>& other = x == 0 ? out.group2 : out.group1;
    RationalMatrix shrunk = q.u();
    for (std::size_t i = 0; i < n; ++i) shrunk(i, x) *= shrink;
    c.shrunk = Problem(q.agents(), q.items(), ItemKind::bads, shrunk);

    // Premise: the bounded group eats no y, so its total disutility is capped by its worst entries elsewhere.
    for (std::size_t a = 0; a < bads; ++a) {
      if (a == y) continue;
      Rational worst = 0;
      for (std::size_t i : c.group) worst = std::max(worst, q.u(i, a));
      c.premise_bound += worst;
    }
    c.steps.push_back("premise: no agent of " + group_label(c.group, q) + " eats " + ids[y] + ", so U_G <= " +
                      to_string(c.premise_bound));
    c.steps.push_back("shrink " + ids[x] + " by the factor " + to_string(shrink) + " to get Q'");

    Rational others = 0;
    for (std::size_t j : other) {
      const Rational fair = c.shrunk.row_total(j) / static_cast<long>(n);
      const Rational cap = fair / c.shrunk.u(j, y);
      others += cap;
      c.steps.push_back("FSG in Q': agent " + q.agents()[j] + " has " + to_string(c.shrunk.u(j, y)) + " z'_" +
                        q.agents()[j] + ids[y] + " <= " + to_string(fair) + ", so z'_" + q.agents()[j] + ids[y] +
                        " <= " + to_string(cap));
    }
    const Rational rest = 1 - others;
    c.steps.push_back("feasibility: the agents of " + group_label(c.group, q) + " eat at least " + to_string(rest) +
                      " of " + ids[y]);
    Rational cheapest = c.shrunk.u(c.group.front(), y);
    for (std::size_t i : c.group) cheapest = std::min(cheapest, c.shrunk.u(i, y));
    c.conclusion_bound = cheapest * rest;
    c.contradiction = rest > 0 && c.conclusion_bound > c.premise_bound;
    c.steps.push_back("U'_G >= " + to_string(c.conclusion_bound) + (c.contradiction ? " > " : " <= ") +
                      to_string(c.premise_bound) + " >= U_G" + (c.contradiction ? ", contradicting RM" : ""));
    out.cases.push_back(std::move(c));
  }
  return out;
}

AxiomReport ilb_probe(const Problem& problem, const RuleHandle& rule, std::size_t agent, std::size_t item,
                      const Rational& new_bid, const std::optional<Allocation>& tracked,
                      const EnumerationOptions& options) {
  if (agent >= problem.agent_count() || item >= problem.item_count()) {
    throw Error(ErrorCode::InvalidArgument, "agent or item out of range", agent, item);
  }
  const Rational& old_bid = problem.u(agent, item);
  const bool direction_ok = problem.is_bads() ? new_bid > old_bid : new_bid < old_bid;
  if (!direction_ok || new_bid < 0) {
    throw Error(ErrorCode::WrongDirection,
                problem.is_bads() ? "a lost bid on a bad may only be raised" : "a lost bid on a good may only be lowered",
                agent, item);
  }

  std::optional<Allocation> base;
  if (tracked) {
    if (tracked->z(agent, item) != 0) throw Error(ErrorCode::NotALostBid, "tracked allocation gives the item to the agent", agent, item);
    if (!member(rule, problem, *tracked, options)) {
      throw Error(ErrorCode::InvalidArgument, "tracked allocation is not selected by the rule");
    }
    base = tracked;
  } else {
    for (const RuleOutcome& outcome : apply_rule(rule, problem, options)) {
      if (outcome.allocation.z(agent, item) == 0) {
        base = outcome.allocation;
        break;
      }
    }
    if (!base) throw Error(ErrorCode::NotALostBid, "no selected allocation leaves the item away from the agent", agent, item);
  }

  std::optional<Problem> changed;
  try {
    changed = with_entry(problem, agent, item, new_bid);
  } catch (const ValidationError& e) {
    throw Error(ErrorCode::InvalidSubproblem, std::string("perturbed problem is invalid: ") + e.what());
  }
  AxiomReport report{"ILB", Verdict::holds, {}, std::nullopt, {}};
  const UtilityProfile after = utility_profile(*changed, *base);
  report.margins = after;
  if (!member(rule, *changed, *base, options)) {
    report.verdict = Verdict::violated;
    Witness w;
    w.problem = *changed;
    w.allocation = *base;
    w.profile = apply_rule(rule, *changed, options).front().profile;
    w.pairs.emplace_back(agent, item);
    w.values = {old_bid, new_bid};
    w.note = "the tracked allocation is no longer selected after the lost bid changed";
    report.witness = std::move(w);
  }
  return report;
}

MisreportResult misreport_demo(const Problem& problem, std::size_t agent) {
  if (agent >= problem.agent_count()) throw Error(ErrorCode::InvalidArgument, "agent out of range", agent);
  const EgalitarianResult truthful = egalitarian(problem);
  if (truthful.unique_allocation == false) {
    throw Error(ErrorCode::InvalidArgument, "egalitarian allocation is not unique");
  }
  const ConsumptionGraph graph = ConsumptionGraph::of(truthful.allocation);
  const std::vector<Rational> row = problem.row(agent);

  struct Candidate {
    std::size_t item;
    bool raise;
  };
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    const Rational& z = truthful.allocation.z(agent, a);
    if (row[a] == 0) continue;
    // Goods: raise lost bids, lower won bids. Bads: the reverse.
    if (z == 0) candidates.push_back({a, !problem.is_bads()});
    if (z == 1) candidates.push_back({a, problem.is_bads()});
  }
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "agent shares every item it consumes", agent);

  for (const Candidate& c : candidates) {
    Rational delta(1, 2);
    for (std::size_t halvings = 0; halvings <= 20; ++halvings, delta /= 2) {
      const Rational reported = row[c.item] * (c.raise ? Rational(1 + delta) : Rational(1 - delta));
      const Problem lie = with_entry(problem, agent, c.item, reported);
      const EgalitarianResult manipulated = egalitarian(lie);
      if (!(ConsumptionGraph::of(manipulated.allocation) == graph)) continue;
      MisreportResult out{lie.row(agent), c.item, truthful.allocation, manipulated.allocation, {}, halvings};
      out.gain = dot(row, manipulated.allocation.bundle(agent)) - dot(row, truthful.allocation.bundle(agent));
      return out;
    }
  }
  throw Error(ErrorCode::GraphChanged, "every simple misreport changed the consumption graph after 20 halvings", agent);
}

MisreportSweep alpha_misreport_sweep(const Rational& alpha, const Rational& low, const Rational& high,
                                     std::size_t steps) {
  if (!(low > 0) || !(low < high) || steps < 2) throw Error(ErrorCode::InvalidArgument, "bad sweep range");
  auto true_utility = [&](const Rational& beta) {
    const Problem reported = validate_problem(std::vector<std::vector<Rational>>{{3, 1}, {beta, 1}, {1, 3}},
                                              ItemKind::goods);
    const CompetitiveDivision d = competitive_goods(reported);
    return Rational(alpha * d.allocation.z(1, 0) + d.allocation.z(1, 1));
  };
  MisreportSweep out;
  out.alpha = alpha;
  out.sqrt_alpha = std::sqrt(to_double(alpha));
  const Rational step = (high - low) / static_cast<long>(steps - 1);
  std::size_t best = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Rational beta = low + step * static_cast<long>(k);
    out.samples.emplace_back(beta, true_utility(beta));
    if (out.samples[k].second > out.samples[best].second) best = k;
  }
  // Ternary refinement around the best grid point; the utility is unimodal in the report.
  Rational left = best == 0 ? low : out.samples[best - 1].first;
  Rational right = best + 1 == steps ? high : out.samples[best + 1].first;
  const Rational width(1, 100000000);
  while (right - left > width) {
    const Rational m1 = approximate(to_double(left + (right - left) / 3), 1000000000000L);
    const Rational m2 = approximate(to_double(right - (right - left) / 3), 1000000000000L);
    if (m1 <= left || m2 >= right || !(m1 < m2)) break;
    if (true_utility(m1) < true_utility(m2)) {
      left = m1;
    } else {
      right = m2;
    }
  }
  out.best_report = (left + right) / 2;
  out.best_utility = true_utility(out.best_report);
  return out;
}

}  // namespace fairdiv
