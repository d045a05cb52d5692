#include "fairdiv/efficiency.hpp"

#include <algorithm>
#include <functional>

#include "fairdiv/optimization_kernel.hpp"

namespace fairdiv {

EfficiencyResult is_efficient(const Problem& problem, const Allocation& allocation) {
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  const UtilityProfile current = utility_profile(problem, allocation);
  LinearProgram lp = allocation_polytope(n, p);
  const Rational slack_sign = problem.is_bads() ? 1 : -1;
  LinearForm objective;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = lp.add_variable();
    LinearForm row;
    for (std::size_t a = 0; a < p; ++a) {
      if (problem.u(i, a) != 0) row.emplace_back(allocation_variable(p, i, a), problem.u(i, a));
    }
    row.emplace_back(s, slack_sign);
    lp.add_constraint(std::move(row), Sense::equal, current[i]);
    objective.emplace_back(s, 1);
  }
  lp.set_objective(Goal::maximize, std::move(objective));
  const LpSolution solution = solve_lp_or_throw(lp);
  EfficiencyResult result;
  result.improvement = solution.optimum;
  result.efficient = solution.optimum == 0;
  if (!result.efficient) result.witness = allocation_from_point(n, p, solution.point);
  return result;
}

Cycle Cycle::reversed() const {
  Cycle out;
  const std::size_t k = agents.size();
  out.agents.push_back(agents[0]);
  for (std::size_t j = k - 1; j >= 1; --j) out.agents.push_back(agents[j]);
  for (std::size_t j = k; j-- > 0;) out.items.push_back(items[j]);
  return out;
}

Rational cycle_product(const Problem& problem, const Cycle& cycle) {
  const std::size_t k = cycle.agents.size();
  if (k < 2 || cycle.items.size() != k) throw Error(ErrorCode::InvalidArgument, "malformed cycle");
  Rational product = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t a = cycle.items[j];
    const Rational& num = problem.u(cycle.agents[j], a);
    const Rational& den = problem.u(cycle.agents[(j + 1) % k], a);
    if (num == 0 || den == 0) throw Error(ErrorCode::ZeroUtilityOnCycle, "zero utility on cycle edge", std::nullopt, a);
    product *= num / den;
  }
  return product;
}

std::optional<Cycle> find_cycle(const ConsumptionGraph& graph) {
  const std::size_t n = graph.agent_count();
  const std::size_t total = n + graph.item_count();
  std::vector<std::vector<std::size_t>> adjacent(total);
  for (const auto& [i, a] : graph.edges()) {
    adjacent[i].push_back(n + a);
    adjacent[n + a].push_back(i);
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  std::vector<int> state(total, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::size_t> parent(total, total);
  std::vector<std::size_t> path;
  std::optional<std::vector<std::size_t>> found;

  std::function<bool(std::size_t)> visit = [&](std::size_t v) -> bool {
    state[v] = 1;
    path.push_back(v);
    for (std::size_t w : adjacent[v]) {
      if (w == parent[v]) continue;
      if (state[w] == 1) {
        auto start = std::find(path.begin(), path.end(), w);
        found = std::vector<std::size_t>(start, path.end());
        return true;
      }
      if (state[w] == 0) {
        parent[w] = v;
        if (visit(w)) return true;
      }
    }
    path.pop_back();
    state[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < total && !found; ++v) {
    if (state[v] == 0) visit(v);
  }
  if (!found) return std::nullopt;

  std::vector<std::size_t> ring = *found;
  auto first_agent = std::find_if(ring.begin(), ring.end(), [&](std::size_t v) { return v < n; });
  std::rotate(ring.begin(), first_agent, ring.end());
  Cycle cycle;
  for (std::size_t j = 0; j < ring.size(); j += 2) {
    cycle.agents.push_back(ring[j]);
    cycle.items.push_back(ring[j + 1] - n);
  }
  return cycle;
}

Allocation reduce_to_forest(const Problem& problem, const Allocation& allocation) {
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  RationalMatrix z = allocation.z();

  for (std::size_t a = 0; a < p; ++a) {
    std::vector<std::size_t> zero_consumers;
    bool positive_consumer = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (z(i, a) == 0) continue;
      if (problem.u(i, a) == 0) {
        zero_consumers.push_back(i);
      } else {
        positive_consumer = true;
      }
    }
    if (zero_consumers.empty()) continue;
    if (!problem.is_bads() || positive_consumer) {
      throw Error(ErrorCode::NotEfficient, "item consumed by an agent with zero marginal value", zero_consumers[0], a);
    }
    for (std::size_t i : zero_consumers) z(i, a) = 0;
    z(zero_consumers[0], a) = 1;
  }

  for (std::size_t guard = 0; guard <= n * p; ++guard) {
    const Allocation current(z);
    const std::optional<Cycle> cycle = find_cycle(ConsumptionGraph::of(current));
    if (!cycle) return current;
    if (cycle_product(problem, *cycle) != 1) {
      throw Error(ErrorCode::NotEfficient, "cycle with product different from 1 in consumption graph");
    }
    // Agent agents[k] gains eps[k] of items[k] and gives eps[k-1] of items[k-1].
    const std::size_t k = cycle->agents.size();
    std::vector<Rational> eps(k);
    Rational previous = 1;  // eps[k-1]
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t agent = cycle->agents[j];
      const std::size_t given = cycle->items[(j + k - 1) % k];
      eps[j] = previous * problem.u(agent, given) / problem.u(agent, cycle->items[j]);
      previous = eps[j];
    }
    // Item items[j] is given up by agents[j+1]; the step size is limited by those entries.
    Rational step;
    bool has_step = false;
    for (std::size_t j = 0; j < k; ++j) {
      const Rational limit = z(cycle->agents[(j + 1) % k], cycle->items[j]) / eps[j];
      if (!has_step || limit < step) {
        step = limit;
        has_step = true;
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t item = cycle->items[j];
      const std::size_t loser = cycle->agents[(j + 1) % k];
      z(cycle->agents[j], item) += step * eps[j];
      z(loser, item) -= step * eps[j];
    }
  }
  throw Error(ErrorCode::Internal, "cycle elimination did not terminate");
}

bool is_generic(const Problem& problem, std::size_t max_vertices) {
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  if (n + p > max_vertices) throw ResourceLimitError("is_generic: too many vertices to enumerate cycles");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      if (problem.u(i, a) == 0) return false;
    }
  }
  std::vector<std::size_t> agents;
  std::vector<bool> agent_used(n, false), item_used(p, false);
  // Walk start, a1, i2, a2, ... keeping numerator and denominator of the partial product.
  std::function<bool(const Rational&, const Rational&)> extend = [&](const Rational& num,
                                                                      const Rational& den) -> bool {
    const std::size_t start = agents.front();
    const std::size_t last = agents.back();
    for (std::size_t a = 0; a < p; ++a) {
      if (item_used[a]) continue;
      item_used[a] = true;
      const Rational num_a = num * problem.u(last, a);
      if (agents.size() >= 2 && num_a == den * problem.u(start, a)) {
        item_used[a] = false;
        return false;
      }
      for (std::size_t j = start + 1; j < n; ++j) {
        if (agent_used[j]) continue;
        agent_used[j] = true;
        agents.push_back(j);
        const bool ok = extend(num_a, den * problem.u(j, a));
        agents.pop_back();
        agent_used[j] = false;
        if (!ok) {
          item_used[a] = false;
          return false;
        }
      }
      item_used[a] = false;
    }
    return true;
  };
  for (std::size_t start = 0; start < n; ++start) {
    agents.assign(1, start);
    agent_used.assign(n, false);
    agent_used[start] = true;
    if (!extend(1, 1)) return false;
  }
  return true;
}

}  // namespace fairdiv
