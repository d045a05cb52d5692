#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fairdiv/core_model.hpp"

namespace fairdiv {

struct EfficiencyResult {
  bool efficient = false;
  /// Pareto-dominating allocation when inefficient.
  std::optional<Allocation> witness;
  /// Maximum total improvement found by the LP (0 when efficient).
  Rational improvement;
};

EfficiencyResult is_efficient(const Problem& problem, const Allocation& allocation);

/// Alternating cycle agents[0], items[0], agents[1], items[1], ..., items[K-1], agents[0].
/// Edges are (agents[k], items[k]) and (agents[k+1], items[k]).
struct Cycle {
  std::vector<std::size_t> agents;
  std::vector<std::size_t> items;

  Cycle reversed() const;
};

/// pi(C) = prod_k u(agents[k], items[k]) / u(agents[k+1], items[k]).
Rational cycle_product(const Problem& problem, const Cycle& cycle);

/// First cycle found by depth-first search in canonical vertex order, if any.
std::optional<Cycle> find_cycle(const ConsumptionGraph& graph);

/// Profile-preserving transfers along cycles until the consumption graph is a forest.
/// Inefficient inputs are rejected with Error(NotEfficient), never repaired.
Allocation reduce_to_forest(const Problem& problem, const Allocation& allocation);

/// All entries positive and every simple cycle of K_{n,p} has product != 1.
bool is_generic(const Problem& problem, std::size_t max_vertices = 12);

}  // namespace fairdiv
