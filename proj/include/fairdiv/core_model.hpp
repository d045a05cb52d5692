#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/matrix.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class ItemKind { goods, bads };

std::string_view kind_name(ItemKind kind);
ItemKind parse_kind(std::string_view text);

/// Validated utility (goods) or disutility (bads) matrix with agent and item ids.
class Problem {
 public:
  /// Validates; throws ValidationError on any violated invariant.
  Problem(std::vector<std::string> agents, std::vector<std::string> items, ItemKind kind, RationalMatrix u);

  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t item_count() const noexcept { return items_.size(); }
  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& items() const noexcept { return items_; }
  ItemKind kind() const noexcept { return kind_; }
  bool is_bads() const noexcept { return kind_ == ItemKind::bads; }
  const RationalMatrix& u() const noexcept { return u_; }
  const Rational& u(std::size_t agent, std::size_t item) const { return u_(agent, item); }
  std::vector<Rational> row(std::size_t agent) const { return u_.row(agent); }

  /// u_i . e^A
  Rational row_total(std::size_t agent) const;

  /// Items with at least one zero entry (harmless to someone when kind = bads).
  std::vector<std::size_t> items_with_zero() const;

  bool operator==(const Problem& other) const = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> items_;
  ItemKind kind_;
  RationalMatrix u_;
};

std::vector<std::string> default_agent_ids(std::size_t n);
std::vector<std::string> default_item_ids(std::size_t p);

Problem validate_problem(const RationalMatrix& matrix, ItemKind kind);
Problem validate_problem(const std::vector<std::vector<Rational>>& rows, ItemKind kind);

Problem normalize(const Problem& problem);

/// Same problem restricted to the listed item indices (kept in input order).
Problem restrict_items(const Problem& problem, const std::vector<std::size_t>& keep);

/// Same problem with one entry replaced.
Problem with_entry(const Problem& problem, std::size_t agent, std::size_t item, const Rational& value);

/// Feasible allocation: entries in [0,1], each column sums to 1.
class Allocation {
 public:
  /// Throws ValidationError(InfeasibleAllocation) unless feasible.
  explicit Allocation(RationalMatrix z);

  std::size_t agent_count() const noexcept { return z_.rows(); }
  std::size_t item_count() const noexcept { return z_.cols(); }
  const RationalMatrix& z() const noexcept { return z_; }
  const Rational& z(std::size_t agent, std::size_t item) const { return z_(agent, item); }
  std::vector<Rational> bundle(std::size_t agent) const { return z_.row(agent); }

  bool operator==(const Allocation& other) const = default;

 private:
  RationalMatrix z_;
};

Allocation equal_split(const Problem& problem);

using UtilityProfile = std::vector<Rational>;

UtilityProfile utility_profile(const Problem& problem, const Allocation& allocation);

/// u_i . z_j : agent i's valuation of agent j's bundle.
Rational valuation(const Problem& problem, const Allocation& allocation, std::size_t agent, std::size_t holder);

enum class PriceNormalization { sum_n, raw };

struct PriceVector {
  std::vector<Rational> p;
  PriceNormalization normalization = PriceNormalization::sum_n;

  bool operator==(const PriceVector& other) const = default;
};

/// Bipartite consumption graph: edge (i, a) whenever z_ia > 0.
class ConsumptionGraph {
 public:
  ConsumptionGraph(std::size_t agents, std::size_t items, std::vector<std::pair<std::size_t, std::size_t>> edges);
  static ConsumptionGraph of(const Allocation& allocation);

  std::size_t agent_count() const noexcept { return agents_; }
  std::size_t item_count() const noexcept { return items_; }
  /// Sorted (agent, item) pairs.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  bool contains(std::size_t agent, std::size_t item) const;
  bool is_forest() const;
  /// Number of connected components counting isolated vertices.
  std::size_t component_count() const;

  bool operator==(const ConsumptionGraph& other) const = default;

 private:
  std::size_t agents_;
  std::size_t items_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace fairdiv
