#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/axioms.hpp"
#include "fairdiv/core_model.hpp"
#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

/// Cut or split form of an efficient allocation of two bads (agents ranked by u_ia / u_ib).
/// Throws NotEfficient when the allocation is inefficient, InvalidArgument when it is neither form.
CutSplitDescriptor classify_m2(const Problem& problem, const Allocation& allocation);

struct EfComponent {
  /// "around-cut", "interior" or "merged-range".
  std::string tag;
  /// 1-based i of each envy-free cut z^{i/i+1} in the component.
  std::vector<std::size_t> cuts;
  /// 1-based i of each rectangle S^i meeting the component.
  std::vector<std::size_t> rectangles;
  std::vector<std::string> inequalities;
  Allocation sample;
};

struct ComponentStructure {
  /// Agents by increasing u_ia / u_ib (ties by index).
  std::vector<std::size_t> order;
  std::vector<Rational> ratios;
  std::vector<EfComponent> components;
  /// Count from the cut and interior inequalities; present when the ratios are distinct.
  std::optional<std::size_t> formula_count;
  /// Parallel columns were summed into two bads first.
  bool aggregated = false;

  std::size_t count() const noexcept { return components.size(); }
};

/// Connected components of the efficient envy-free set, for two bads up to parallel columns.
ComponentStructure count_ef_components(const Problem& problem);

/// Allocation of the i-split with parameters (x, y); agents in the problem's own order.
Allocation split_allocation(const Problem& problem, std::size_t i, const Rational& x, const Rational& y);

/// Bad b replaced by m - 1 clones of size 1/(m - 1); identity when m = 2.
Problem clone_bads(const Problem& problem, std::size_t target_m);

/// Clone shares averaged back onto b (the same profile in the two-bads problem).
Allocation aggregate_clones(const Allocation& cloned);

/// Two-bads problem with rows (r_i, 1).
Problem problem_from_ratios(const std::vector<Rational>& ratios);

/// Ratio schedule with floor((2n+1)/3) envy-free components.
std::vector<Rational> comp_count_ratios(std::size_t n);

struct DiscontinuityReport {
  Problem q1;
  Problem q2;
  std::string selection;
  std::size_t steps = 0;
  /// Largest ratio change between consecutive steps.
  Rational per_step_bound;
  /// Largest L-infinity distance between consecutive normalized selected profiles.
  Rational max_jump;
  std::size_t jump_step = 0;
  UtilityProfile before_jump;
  UtilityProfile after_jump;
  std::size_t components_start = 0;
  std::size_t components_end = 0;
  std::size_t envy_failures = 0;
  std::optional<std::size_t> first_envy_step;
  /// max_jump exceeds 10 times per_step_bound.
  bool jump_detected = false;
};

/// Linear ratio path from Q1 to Q2 under a single-valued selection.
/// Competitive selections abort with SelectionNotEF on envy; the egalitarian one only counts it.
DiscontinuityReport discontinuity_demo(const RuleHandle& selection, std::size_t agents = 4, std::size_t steps = 10000);

/// Endpoints of the discontinuity path for n agents (n >= 4).
std::pair<std::vector<Rational>, std::vector<Rational>> discontinuity_ratios(std::size_t agents);

}  // namespace fairdiv
