#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/core_model.hpp"
#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

enum class Verdict { holds, violated, not_applicable };

std::string_view verdict_name(Verdict verdict);

struct Witness {
  std::optional<Problem> problem;
  std::optional<Allocation> allocation;
  std::optional<UtilityProfile> profile;
  /// Offending agents or ordered pairs, flattened as (i, j) for pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Rational> values;
  std::string note;
};

struct AxiomReport {
  std::string axiom;
  Verdict verdict = Verdict::not_applicable;
  /// Per-agent margins; meaning depends on the axiom.
  std::vector<Rational> margins;
  std::optional<Witness> witness;
  std::vector<AxiomReport> details;

  bool holds() const noexcept { return verdict == Verdict::holds; }
};

/// FSG with margins U_i - u_i.e/n; the SFSG verdict is in details[0].
AxiomReport fair_share_report(const Problem& problem, const UtilityProfile& profile);

/// No Envy; margins are each agent's worst slack against another bundle.
AxiomReport envy_report(const Problem& problem, const Allocation& allocation);

/// Equal treatment of agents with identical rows.
AxiomReport ete_check(const Problem& problem, const UtilityProfile& profile);

enum class RuleKind { egalitarian, competitive_goods, competitive_bads };
enum class Selection { all, median, max_nash };

struct RuleHandle {
  RuleKind kind = RuleKind::egalitarian;
  Selection selection = Selection::all;

  std::string name() const;
  static RuleHandle parse(std::string_view text);
  static RuleHandle competitive_for(ItemKind kind, Selection selection = Selection::all);
};

struct RuleOutcome {
  UtilityProfile profile;
  Allocation allocation;
};

/// Index of the single division picked by a median or max-Nash selection.
std::size_t select_division(const std::vector<CompetitiveDivision>& divisions, Selection selection);

std::vector<RuleOutcome> apply_rule(const RuleHandle& rule, const Problem& problem,
                                    const EnumerationOptions& options = {});

/// U' <= U for every selected pair, where smaller has the same agents and no more of any item.
AxiomReport rm_compare(const Problem& problem, const Problem& smaller, const RuleHandle& rule,
                       const EnumerationOptions& options = {});

/// Profile comparison between the full problem and the one without removed_items (U' <= U for both kinds).
AxiomReport rm_probe(const Problem& problem, const std::vector<std::size_t>& removed_items, const RuleHandle& rule,
                     const EnumerationOptions& options = {});

struct RmCase {
  /// Agents whose total disutility is bounded by the premise.
  std::vector<std::size_t> group;
  std::size_t shrunk_item = 0;
  Problem shrunk;
  Rational premise_bound;
  Rational conclusion_bound;
  std::vector<std::string> steps;
  bool contradiction = false;
};

struct RmWitness {
  Problem problem;
  std::vector<std::size_t> group1;
  std::vector<std::size_t> group2;
  /// First case shrinks bad a, second shrinks bad b; together they cover every efficient profile.
  std::vector<RmCase> cases;
  std::vector<std::string> argument;
};

/// Pair of bads problems on which no efficient rule can meet both FSG and RM.
RmWitness rm_impossibility_witness(std::size_t agents, std::size_t bads = 2);

/// Membership of the tracked allocation after lowering (goods) or raising (bads) a lost bid.
AxiomReport ilb_probe(const Problem& problem, const RuleHandle& rule, std::size_t agent, std::size_t item,
                      const Rational& new_bid, const std::optional<Allocation>& tracked = std::nullopt,
                      const EnumerationOptions& options = {});

struct MisreportResult {
  std::vector<Rational> misreport;
  std::size_t item = 0;
  Allocation truthful;
  Allocation manipulated;
  /// u_i . z'_i - u_i . z_i in true units: negative is a gain for bads, positive for goods.
  Rational gain;
  std::size_t halvings = 0;
};

/// Simple misreport that keeps the consumption graph of the egalitarian allocation.
MisreportResult misreport_demo(const Problem& problem, std::size_t agent);

struct MisreportSweep {
  Rational alpha;
  std::vector<std::pair<Rational, Rational>> samples;  // (reported bid, true utility)
  Rational best_report;
  Rational best_utility;
  double sqrt_alpha = 0.0;
};

/// Agent 2's true competitive utility at reported bids beta in [low, high] on the ALPHA instance.
MisreportSweep alpha_misreport_sweep(const Rational& alpha, const Rational& low, const Rational& high,
                                     std::size_t steps);

}  // namespace fairdiv
