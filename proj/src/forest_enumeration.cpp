#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

namespace {

using Edge = std::pair<std::size_t, std::size_t>;

std::vector<bool> harmless_mask(const Problem& problem) {
  std::vector<bool> mask(problem.item_count(), false);
  if (problem.is_bads()) {
    for (std::size_t a : problem.items_with_zero()) mask[a] = true;
  }
  return mask;
}

/// Solves a forest whose acyclicity and coverage have been checked by the caller.
std::optional<CompetitiveDivision> solve_checked_forest(const Problem& problem, const std::vector<Edge>& edges) {
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  const std::vector<bool> harmless = harmless_mask(problem);

  std::vector<std::vector<std::size_t>> items_of(n), agents_of(p);
  for (const auto& [i, a] : edges) {
    if (problem.u(i, a) == 0 && !harmless[a]) return std::nullopt;
    if (harmless[a] && problem.u(i, a) != 0) return std::nullopt;
    items_of[i].push_back(a);
    agents_of[a].push_back(i);
  }
  RationalMatrix z(n, p);
  for (std::size_t a = 0; a < p; ++a) {
    if (!harmless[a]) continue;
    const Rational share(1, static_cast<long>(agents_of[a].size()));
    for (std::size_t i : agents_of[a]) z(i, a) = share;
  }

  // Potentials and relative prices along each tree of positive-price items.
  std::vector<Rational> potential(n), price(p);
  std::vector<int> component(n, -1);
  std::vector<int> item_component(p, -1);
  int components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != -1) continue;
    bool has_priced_item = false;
    for (std::size_t a : items_of[root]) has_priced_item = has_priced_item || !harmless[a];
    if (!has_priced_item) return std::nullopt;
    const int id = components++;
    component[root] = id;
    potential[root] = 1;
    std::vector<std::size_t> queue{root};
    std::vector<std::size_t> members;
    std::vector<std::size_t> member_items;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      members.push_back(i);
      for (std::size_t a : items_of[i]) {
        if (harmless[a] || item_component[a] != -1) continue;
        item_component[a] = id;
        member_items.push_back(a);
        price[a] = problem.u(i, a) / potential[i];
        for (std::size_t j : agents_of[a]) {
          if (component[j] != -1) continue;
          component[j] = id;
          potential[j] = problem.u(j, a) / price[a];
          queue.push_back(j);
        }
      }
    }
    Rational total_price = 0;
    for (std::size_t a : member_items) total_price += price[a];
    const Rational lambda = total_price / Rational(static_cast<long>(members.size()));
    for (std::size_t i : members) potential[i] *= lambda;
    for (std::size_t a : member_items) price[a] /= lambda;

    // Tree flow: peel leaves until every edge of the tree is fixed.
    std::vector<Rational> item_left(p, Rational(1));
    std::vector<Rational> budget_left(n, Rational(1));
    std::vector<Edge> open;
    for (std::size_t i : members) {
      for (std::size_t a : items_of[i]) {
        if (!harmless[a]) open.emplace_back(i, a);
      }
    }
    std::sort(open.begin(), open.end());
    while (!open.empty()) {
      std::map<std::size_t, std::size_t> agent_degree, item_degree;
      for (const auto& [i, a] : open) {
        ++agent_degree[i];
        ++item_degree[a];
      }
      bool peeled = false;
      for (std::size_t k = 0; k < open.size(); ++k) {
        const auto [i, a] = open[k];
        if (item_degree[a] == 1) {
          z(i, a) = item_left[a];
        } else if (agent_degree[i] == 1) {
          z(i, a) = budget_left[i] / price[a];
        } else {
          continue;
        }
        item_left[a] -= z(i, a);
        budget_left[i] -= price[a] * z(i, a);
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
        peeled = true;
        break;
      }
      if (!peeled) throw Error(ErrorCode::Internal, "tree flow: no leaf edge");
    }
    for (std::size_t a : member_items) {
      if (item_left[a] != 0) throw Error(ErrorCode::Internal, "tree flow: residual item supply");
    }
    for (std::size_t i : members) {
      if (budget_left[i] != 0) throw Error(ErrorCode::Internal, "tree flow: residual budget");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      if (z(i, a) < 0 || z(i, a) > 1) return std::nullopt;
    }
  }
  // Cheap screen of the first-order conditions across trees before building a certificate.
  for (std::size_t a = 0; a < p; ++a) {
    if (harmless[a]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational lhs = price[a] * potential[j];
      if (problem.is_bads() ? lhs > problem.u(j, a) : lhs < problem.u(j, a)) return std::nullopt;
    }
  }
  Allocation allocation(std::move(z));
  std::vector<Rational> prices(p);
  for (std::size_t a = 0; a < p; ++a) prices[a] = harmless[a] ? Rational(0) : price[a];
  Verification check = verify_competitive(problem, allocation, PriceVector{prices, PriceNormalization::sum_n});
  if (!check.ok()) return std::nullopt;
  CompetitiveDivision division{allocation, check.certificate->price, check.certificate->profile,
                               std::move(*check.certificate), std::nullopt};
  return division;
}

struct SearchState {
  std::vector<int> agent_component;
  std::vector<Rational> potential;
  std::vector<int> item_component;
  std::vector<Rational> price;
  int next_component = 0;
};

class ForestSearch {
 public:
  ForestSearch(const Problem& problem, std::vector<std::vector<bool>> allowed, const EnumerationOptions& options)
      : problem_(problem), allowed_(std::move(allowed)), options_(options) {
    const std::vector<bool> harmless = harmless_mask(problem);
    for (std::size_t a = 0; a < problem.item_count(); ++a) {
      if (!harmless[a]) {
        searched_.push_back(a);
      } else {
        for (std::size_t i = 0; i < problem.agent_count(); ++i) {
          if (problem.u(i, a) == 0) fixed_edges_.emplace_back(i, a);
        }
      }
    }
    chosen_.assign(problem.item_count(), 0);
  }

  EnumerationResult run() {
    SearchState state;
    state.agent_component.assign(problem_.agent_count(), -1);
    state.potential.assign(problem_.agent_count(), Rational(0));
    state.item_component.assign(problem_.item_count(), -1);
    state.price.assign(problem_.item_count(), Rational(0));
    descend(0, state);
    EnumerationResult result;
    result.complete = !timed_out_;
    result.method = "forest";
    for (auto& [profile, division] : found_) result.divisions.push_back(std::move(division));
    return result;
  }

 private:
  bool expired() {
    if (timed_out_) return true;
    if (options_.deadline && (++ticks_ & 1023U) == 0 && std::chrono::steady_clock::now() > *options_.deadline) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  bool consistent(const SearchState& state, int comp) const {
    const bool bads = problem_.is_bads();
    for (std::size_t b : searched_) {
      if (state.item_component[b] != comp) continue;
      for (std::size_t k = 0; k < problem_.agent_count(); ++k) {
        if (state.agent_component[k] != comp) continue;
        const Rational lhs = state.price[b] * state.potential[k];
        if (bads ? lhs > problem_.u(k, b) : lhs < problem_.u(k, b)) return false;
      }
    }
    return true;
  }

  void descend(std::size_t depth, const SearchState& state) {
    if (expired()) return;
    const std::size_t n = problem_.agent_count();
    if (depth == searched_.size()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (state.agent_component[i] == -1) return;
      }
      std::vector<Edge> edges = fixed_edges_;
      for (std::size_t a : searched_) {
        for (std::size_t i = 0; i < n; ++i) {
          if (chosen_[a] & (std::uint64_t{1} << i)) edges.emplace_back(i, a);
        }
      }
      std::optional<CompetitiveDivision> division = solve_checked_forest(problem_, edges);
      if (division) found_.try_emplace(division->profile, std::move(*division));
      return;
    }
    const std::size_t a = searched_[depth];
    std::uint64_t allowed_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (allowed_[i][a]) allowed_mask |= std::uint64_t{1} << i;
    }
    // Nonempty submasks of allowed_mask in increasing order.
    for (std::uint64_t mask = (0 - allowed_mask) & allowed_mask; mask != 0;
         mask = (mask - allowed_mask) & allowed_mask) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) members.push_back(i);
      }
      bool acyclic = true;
      for (std::size_t x = 0; x < members.size() && acyclic; ++x) {
        for (std::size_t y = x + 1; y < members.size() && acyclic; ++y) {
          const int cx = state.agent_component[members[x]];
          acyclic = cx == -1 || cx != state.agent_component[members[y]];
        }
      }
      if (!acyclic) continue;

      SearchState next = state;
      const std::size_t base = members.front();
      if (next.agent_component[base] == -1) {
        next.agent_component[base] = next.next_component++;
        next.potential[base] = 1;
      }
      const int comp = next.agent_component[base];
      next.item_component[a] = comp;
      next.price[a] = problem_.u(base, a) / next.potential[base];
      for (std::size_t k = 1; k < members.size(); ++k) {
        const std::size_t j = members[k];
        const Rational desired = problem_.u(j, a) / next.price[a];
        const int old = next.agent_component[j];
        if (old == -1) {
          next.agent_component[j] = comp;
          next.potential[j] = desired;
          continue;
        }
        const Rational factor = desired / next.potential[j];
        for (std::size_t i = 0; i < n; ++i) {
          if (next.agent_component[i] != old) continue;
          next.agent_component[i] = comp;
          next.potential[i] *= factor;
        }
        for (std::size_t b : searched_) {
          if (next.item_component[b] != old) continue;
          next.item_component[b] = comp;
          next.price[b] /= factor;
        }
      }
      if (!consistent(next, comp)) continue;
      chosen_[a] = mask;
      descend(depth + 1, next);
      chosen_[a] = 0;
      if (timed_out_) return;
    }
  }

  const Problem& problem_;
  std::vector<std::vector<bool>> allowed_;
  const EnumerationOptions& options_;
  std::vector<std::size_t> searched_;
  std::vector<Edge> fixed_edges_;
  std::vector<std::uint64_t> chosen_;
  std::map<UtilityProfile, CompetitiveDivision> found_;
  std::size_t ticks_ = 0;
  bool timed_out_ = false;
};

std::vector<std::vector<bool>> positive_edges(const Problem& problem) {
  std::vector<std::vector<bool>> allowed(problem.agent_count(), std::vector<bool>(problem.item_count()));
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    for (std::size_t a = 0; a < problem.item_count(); ++a) allowed[i][a] = problem.u(i, a) > 0;
  }
  return allowed;
}

}  // namespace

std::optional<CompetitiveDivision> solve_forest(const Problem& problem, const ConsumptionGraph& forest) {
  if (forest.agent_count() != problem.agent_count() || forest.item_count() != problem.item_count()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "forest does not match problem dimensions");
  }
  if (!forest.is_forest()) throw ValidationError(ErrorCode::NonTreeInput, "consumption graph has a cycle");
  std::vector<bool> agent_seen(problem.agent_count(), false), item_seen(problem.item_count(), false);
  for (const auto& [i, a] : forest.edges()) {
    agent_seen[i] = true;
    item_seen[a] = true;
  }
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    if (!item_seen[a]) throw ValidationError(ErrorCode::DisconnectedItem, "item without an edge", std::nullopt, a);
  }
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    if (!agent_seen[i]) throw ValidationError(ErrorCode::IsolatedAgent, "agent without an edge", i);
  }
  return solve_checked_forest(problem, forest.edges());
}

EnumerationResult enumerate_forests(const Problem& problem, const EnumerationOptions& options) {
  if (problem.agent_count() + problem.item_count() > options.max_vertices) {
    throw ResourceLimitError("forest enumeration limited to n + p <= " + std::to_string(options.max_vertices));
  }
  ForestSearch search(problem, positive_edges(problem), options);
  return search.run();
}

EnumerationResult enumerate_competitive(const Problem& problem, const EnumerationOptions& options) {
  const std::size_t n = problem.agent_count();
  if (n + problem.item_count() <= options.max_vertices) {
    EnumerationResult result = enumerate_forests(problem, options);
    if (problem.is_bads() && (n == 2 || problem.item_count() == 2)) {
      try {
        const EnumerationResult closed = n == 2 ? competitive_bads_n2(problem) : competitive_bads_m2(problem);
        result.boundary_case = closed.boundary_case;
      } catch (const Error&) {
        // Zero entries fall outside the closed forms.
      }
    }
    return result;
  }
  if (problem.kind() == ItemKind::goods) {
    EnumerationResult result;
    result.divisions.push_back(competitive_goods(problem, options));
    result.method = "numeric";
    return result;
  }
  if (n == 2) return competitive_bads_n2(problem);
  if (problem.item_count() == 2) return competitive_bads_m2(problem);
  throw ResourceLimitError("bads problem too large to enumerate: n + p = " +
                           std::to_string(n + problem.item_count()));
}

CompetitiveDivision competitive_goods(const Problem& problem, const EnumerationOptions& options) {
  if (problem.kind() != ItemKind::goods) throw Error(ErrorCode::KindMismatch, "competitive_goods expects goods");
  if (problem.agent_count() + problem.item_count() <= options.max_vertices) {
    EnumerationResult result = enumerate_forests(problem, options);
    if (!result.complete) throw Error(ErrorCode::Internal, "deadline exceeded in goods enumeration");
    if (result.divisions.size() != 1) {
      throw Error(ErrorCode::Internal, "goods problem with " + std::to_string(result.divisions.size()) +
                                           " competitive profiles");
    }
    return std::move(result.divisions.front());
  }
  if (!options.allow_numeric) throw ResourceLimitError("goods problem too large and numeric path disabled");
  return competitive_goods_numeric(problem);
}

CompetitiveDivision competitive_goods_numeric(const Problem& problem, const NumericOptions& numeric) {
  if (problem.kind() != ItemKind::goods) throw Error(ErrorCode::KindMismatch, "competitive_goods expects goods");
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  if (n > 63) throw ResourceLimitError("numeric goods path supports at most 63 agents");
  std::vector<std::vector<double>> u(n, std::vector<double>(p)), bid(n, std::vector<double>(p));
  for (std::size_t i = 0; i < n; ++i) {
    const double total = to_double(problem.row_total(i));
    for (std::size_t a = 0; a < p; ++a) {
      u[i][a] = to_double(problem.u(i, a));
      bid[i][a] = u[i][a] / total;
    }
  }
  std::vector<std::vector<double>> share(n, std::vector<double>(p));
  for (std::size_t iter = 0; iter < numeric.max_iterations; ++iter) {
    std::vector<double> price(p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t i = 0; i < n; ++i) price[a] += bid[i][a];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double utility = 0.0;
      for (std::size_t a = 0; a < p; ++a) {
        share[i][a] = price[a] > 0 ? bid[i][a] / price[a] : 0.0;
        utility += u[i][a] * share[i][a];
      }
      for (std::size_t a = 0; a < p; ++a) {
        const double target = utility > 0 ? u[i][a] * share[i][a] / utility : bid[i][a];
        const double updated = (1.0 - numeric.damping) * bid[i][a] + numeric.damping * target;
        if (bid[i][a] > 0) change = std::max(change, std::fabs(updated - bid[i][a]) / bid[i][a]);
        bid[i][a] = updated;
      }
    }
    if (change < numeric.tolerance) break;
  }
  for (double threshold : {numeric.edge_threshold, numeric.edge_threshold * 1e-3}) {
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(p, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < p; ++a) allowed[i][a] = share[i][a] > threshold && problem.u(i, a) > 0;
    }
    EnumerationOptions options;
    options.max_vertices = n + p;
    ForestSearch search(problem, allowed, options);
    EnumerationResult result = search.run();
    if (!result.divisions.empty()) return std::move(result.divisions.front());
  }
  throw Error(ErrorCode::Internal, "numeric goods path failed to reconstruct an exact forest");
}

}  // namespace fairdiv
