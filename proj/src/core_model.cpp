#include "fairdiv/core_model.hpp"

#include <algorithm>
#include <numeric>

namespace fairdiv {

std::string_view kind_name(ItemKind kind) { return kind == ItemKind::goods ? "goods" : "bads"; }

ItemKind parse_kind(std::string_view text) {
  if (text == "goods") return ItemKind::goods;
  if (text == "bads") return ItemKind::bads;
  throw ValidationError(ErrorCode::ParseError, "kind must be \"goods\" or \"bads\"");
}

std::vector<std::string> default_agent_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
  return ids;
}

std::vector<std::string> default_item_ids(std::size_t p) {
  std::vector<std::string> ids;
  for (std::size_t a = 0; a < p; ++a) {
    if (p <= 26) {
      ids.emplace_back(1, static_cast<char>('a' + a));
    } else {
      ids.push_back("a" + std::to_string(a + 1));
    }
  }
  return ids;
}

Problem::Problem(std::vector<std::string> agents, std::vector<std::string> items, ItemKind kind, RationalMatrix u)
    : agents_(std::move(agents)), items_(std::move(items)), kind_(kind), u_(std::move(u)) {
  const std::size_t n = u_.rows();
  const std::size_t p = u_.cols();
  if (agents_.size() != n || items_.size() != p) {
    throw ValidationError(ErrorCode::DimensionMismatch, "id lists do not match matrix dimensions");
  }
  if (n < 2 || p < 2) throw ValidationError(ErrorCode::TooSmall, "need at least 2 agents and 2 items");
  auto unique_ids = [](std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  };
  if (!unique_ids(agents_) || !unique_ids(items_)) {
    throw ValidationError(ErrorCode::InvalidArgument, "agent and item ids must be unique");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      if (u_(i, a) < 0) throw ValidationError(ErrorCode::NegativeEntry, "negative entry", i, a);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool null_row = true;
    for (std::size_t a = 0; a < p; ++a) null_row = null_row && u_(i, a) == 0;
    if (null_row) throw ValidationError(ErrorCode::NullRow, "null row for agent " + agents_[i], i);
  }
  for (std::size_t a = 0; a < p; ++a) {
    bool null_col = true;
    for (std::size_t i = 0; i < n; ++i) null_col = null_col && u_(i, a) == 0;
    if (null_col) throw ValidationError(ErrorCode::NullColumn, "null column for item " + items_[a], std::nullopt, a);
  }
  if (kind_ == ItemKind::bads && items_with_zero().size() == p) {
    throw ValidationError(ErrorCode::BadsAllHarmless, "every bad is harmless to some agent");
  }
}

Rational Problem::row_total(std::size_t agent) const {
  Rational total = 0;
  for (std::size_t a = 0; a < item_count(); ++a) total += u_(agent, a);
  return total;
}

std::vector<std::size_t> Problem::items_with_zero() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < item_count(); ++a) {
    for (std::size_t i = 0; i < agent_count(); ++i) {
      if (u_(i, a) == 0) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

Problem validate_problem(const RationalMatrix& matrix, ItemKind kind) {
  return Problem(default_agent_ids(matrix.rows()), default_item_ids(matrix.cols()), kind, matrix);
}

Problem validate_problem(const std::vector<std::vector<Rational>>& rows, ItemKind kind) {
  if (!rows.empty()) {
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw ValidationError(ErrorCode::DimensionMismatch, "ragged matrix");
    }
  }
  return validate_problem(RationalMatrix::from_rows(rows), kind);
}

Problem normalize(const Problem& problem) {
  RationalMatrix u = problem.u();
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const Rational total = problem.row_total(i);
    for (std::size_t a = 0; a < u.cols(); ++a) u(i, a) /= total;
  }
  return Problem(problem.agents(), problem.items(), problem.kind(), std::move(u));
}

Problem restrict_items(const Problem& problem, const std::vector<std::size_t>& keep) {
  RationalMatrix u(problem.agent_count(), keep.size());
  std::vector<std::string> items;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= problem.item_count()) throw Error(ErrorCode::InvalidArgument, "item index out of range");
    items.push_back(problem.items()[keep[k]]);
    for (std::size_t i = 0; i < problem.agent_count(); ++i) u(i, k) = problem.u(i, keep[k]);
  }
  return Problem(problem.agents(), std::move(items), problem.kind(), std::move(u));
}

Problem with_entry(const Problem& problem, std::size_t agent, std::size_t item, const Rational& value) {
  RationalMatrix u = problem.u();
  u(agent, item) = value;
  return Problem(problem.agents(), problem.items(), problem.kind(), std::move(u));
}

Allocation::Allocation(RationalMatrix z) : z_(std::move(z)) {
  for (std::size_t a = 0; a < z_.cols(); ++a) {
    Rational column = 0;
    for (std::size_t i = 0; i < z_.rows(); ++i) {
      const Rational& v = z_(i, a);
      if (v < 0 || v > 1) throw ValidationError(ErrorCode::InfeasibleAllocation, "entry outside [0,1]", i, a);
      column += v;
    }
    if (column != 1) {
      throw ValidationError(ErrorCode::InfeasibleAllocation, "column does not sum to 1", std::nullopt, a);
    }
  }
}

Allocation equal_split(const Problem& problem) {
  const Rational share(1, static_cast<long>(problem.agent_count()));
  return Allocation(RationalMatrix(problem.agent_count(), problem.item_count(), share));
}

UtilityProfile utility_profile(const Problem& problem, const Allocation& allocation) {
  if (problem.agent_count() != allocation.agent_count() || problem.item_count() != allocation.item_count()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "allocation does not match problem dimensions");
  }
  UtilityProfile out;
  for (std::size_t i = 0; i < problem.agent_count(); ++i) out.push_back(valuation(problem, allocation, i, i));
  return out;
}

Rational valuation(const Problem& problem, const Allocation& allocation, std::size_t agent, std::size_t holder) {
  Rational total = 0;
  for (std::size_t a = 0; a < problem.item_count(); ++a) total += problem.u(agent, a) * allocation.z(holder, a);
  return total;
}

ConsumptionGraph::ConsumptionGraph(std::size_t agents, std::size_t items,
                                   std::vector<std::pair<std::size_t, std::size_t>> edges)
    : agents_(agents), items_(items), edges_(std::move(edges)) {
  for (const auto& [i, a] : edges_) {
    if (i >= agents_ || a >= items_) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

ConsumptionGraph ConsumptionGraph::of(const Allocation& allocation) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < allocation.agent_count(); ++i) {
    for (std::size_t a = 0; a < allocation.item_count(); ++a) {
      if (allocation.z(i, a) > 0) edges.emplace_back(i, a);
    }
  }
  return ConsumptionGraph(allocation.agent_count(), allocation.item_count(), std::move(edges));
}

bool ConsumptionGraph::contains(std::size_t agent, std::size_t item) const {
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(agent, item));
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[y] = x;
    return true;
  }
};

}  // namespace

bool ConsumptionGraph::is_forest() const {
  DisjointSets sets(agents_ + items_);
  for (const auto& [i, a] : edges_) {
    if (!sets.unite(i, agents_ + a)) return false;
  }
  return true;
}

std::size_t ConsumptionGraph::component_count() const {
  DisjointSets sets(agents_ + items_);
  std::size_t count = agents_ + items_;
  for (const auto& [i, a] : edges_) {
    if (sets.unite(i, agents_ + a)) --count;
  }
  return count;
}

}  // namespace fairdiv
