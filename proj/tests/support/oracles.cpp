#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace oracle {

namespace {

struct Pattern {
  std::size_t n, m;
  std::vector<bool> edge;
  bool has(std::size_t i, std::size_t a) const { return edge[i * m + a]; }
};

bool covers(const Pattern& e) {
  for (std::size_t i = 0; i < e.n; ++i) {
    bool any = false;
    for (std::size_t a = 0; a < e.m; ++a) any = any || e.has(i, a);
    if (!any) return false;
  }
  for (std::size_t a = 0; a < e.m; ++a) {
    bool any = false;
    for (std::size_t i = 0; i < e.n; ++i) any = any || e.has(i, a);
    if (!any) return false;
  }
  return true;
}

/// lambda_i = 1 / U_i and prices p_a with p_a = u_ia lambda_i on every edge, or nothing when inconsistent.
bool solve_pattern(const Problem& problem, const Pattern& e, std::vector<Rational>& lambda, std::vector<Rational>& price,
                   std::vector<int>& component) {
  const std::size_t n = e.n, m = e.m;
  lambda.assign(n, 0);
  price.assign(m, 0);
  component.assign(n + m, -1);
  int next = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] >= 0) continue;
    std::vector<std::size_t> stack{root};
    component[root] = next;
    lambda[root] = 1;
    std::vector<std::size_t> agents, items;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (v < n) {
        agents.push_back(v);
        for (std::size_t a = 0; a < m; ++a) {
          if (!e.has(v, a)) continue;
          const Rational p = problem.u(v, a) * lambda[v];
          if (component[n + a] < 0) {
            component[n + a] = next;
            price[a] = p;
            stack.push_back(n + a);
          } else if (price[a] != p) {
            return false;
          }
        }
      } else {
        const std::size_t a = v - n;
        items.push_back(a);
        for (std::size_t i = 0; i < n; ++i) {
          if (!e.has(i, a)) continue;
          const Rational l = price[a] / problem.u(i, a);
          if (component[i] < 0) {
            component[i] = next;
            lambda[i] = l;
            stack.push_back(i);
          } else if (lambda[i] != l) {
            return false;
          }
        }
      }
    }
    Rational total = 0;
    for (auto a : items) total += price[a];
    const Rational scale = Rational(agents.size()) / total;
    for (auto i : agents) lambda[i] *= scale;
    for (auto a : items) price[a] *= scale;
    ++next;
  }
  return true;
}

/// Every agent can spend exactly 1 on its edges: Hall's condition per agent subset.
bool budgets_feasible(const Pattern& e, const std::vector<Rational>& price) {
  const std::size_t n = e.n;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> reach(e.m, false);
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      for (std::size_t a = 0; a < e.m; ++a) reach[a] = reach[a] || e.has(i, a);
    }
    Rational supply = 0;
    for (std::size_t a = 0; a < e.m; ++a) {
      if (reach[a]) supply += price[a];
    }
    if (supply < Rational(size)) return false;
  }
  return true;
}

double value(const Rational& q) { return q.convert_to<double>(); }

}  // namespace

std::set<Profile> competitive_profiles(const Problem& problem) {
  const std::size_t n = problem.agent_count(), m = problem.item_count();
  if (n * m > 20) throw std::invalid_argument("oracle limited to n * m <= 20");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      if (problem.u(i, a) <= 0) throw std::invalid_argument("oracle needs a positive matrix");
    }
  }
  std::set<Profile> out;
  Pattern e{n, m, std::vector<bool>(n * m)};
  std::vector<Rational> lambda, price;
  std::vector<int> component;
  for (std::size_t mask = 1; mask < (std::size_t{1} << (n * m)); ++mask) {
    for (std::size_t k = 0; k < n * m; ++k) e.edge[k] = mask >> k & 1;
    if (!covers(e) || !solve_pattern(problem, e, lambda, price, component)) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i) {
      for (std::size_t a = 0; ok && a < m; ++a) {
        const Rational bang = problem.u(i, a) * lambda[i];
        ok = problem.is_bads() ? bang >= price[a] : bang <= price[a];
      }
    }
    if (!ok || !budgets_feasible(e, price)) continue;
    Profile profile(n);
    for (std::size_t i = 0; i < n; ++i) profile[i] = 1 / lambda[i];
    out.insert(profile);
  }
  return out;
}

bool efficient_2x2(const Problem& problem, const Allocation& z) {
  const auto& u = problem.u();
  // Agent 1 gives b for a when u1b * u2a < u1a * u2b (goods); the trade runs the other way for bads.
  const bool goods = !problem.is_bads();
  auto improvable = [&](std::size_t x, std::size_t y) {
    // Agent 1 holds y, agent 2 holds x; a swap helps both when agent 1's rate for x beats agent 2's.
    if (z.z(0, y) == 0 || z.z(1, x) == 0) return false;
    const Rational lhs = u(0, y) * u(1, x), rhs = u(0, x) * u(1, y);
    return goods ? lhs < rhs : lhs > rhs;
  };
  return !improvable(0, 1) && !improvable(1, 0);
}

std::size_t grid_components(const Problem& problem, std::size_t grid) {
  const std::size_t n = problem.agent_count();
  if (problem.item_count() != 2 || !problem.is_bads()) throw std::invalid_argument("two bads only");
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::vector<double> ua(n), ub(n);
  for (std::size_t i = 0; i < n; ++i) {
    ua[i] = value(problem.u(i, 0));
    ub[i] = value(problem.u(i, 1));
  }
  std::sort(rank.begin(), rank.end(), [&](std::size_t x, std::size_t y) {
    return problem.u(x, 0) * problem.u(y, 1) < problem.u(y, 0) * problem.u(x, 1);
  });
  const std::size_t g = grid - 1;

  // Point ids: family i (1-based) holds a (grid x grid) block, or a line for i = 1 and i = n.
  std::vector<std::size_t> offset(n + 2, 0);
  for (std::size_t i = 1; i <= n; ++i) offset[i + 1] = offset[i] + ((i == 1 || i == n) ? grid : grid * grid);
  const std::size_t total = offset[n + 1];
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

  auto coords = [&](std::size_t i, std::size_t k, std::size_t l, double& x, double& y) {
    if (i == 1) {
      x = 1;
      y = double(l) / double(g) / double(n);
    } else if (i == n) {
      x = double(k) / double(g) / double(n);
      y = 1;
    } else {
      x = double(k) / double(g) / double(i);
      y = double(l) / double(g) / double(n - i + 1);
    }
  };
  auto id = [&](std::size_t i, std::size_t k, std::size_t l) {
    if (i == 1) return offset[i] + l;
    if (i == n) return offset[i] + k;
    return offset[i] + k * grid + l;
  };
  auto envy_free_at = [&](std::size_t i, double x, double y) {
    std::vector<double> za(n, 0), zb(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t agent = rank[r];
      if (r + 1 < i) {
        za[agent] = (1 - x) / double(i - 1);
      } else if (r + 1 == i) {
        za[agent] = x;
        zb[agent] = y;
      } else {
        zb[agent] = (1 - y) / double(n - i);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double own = ua[j] * za[j] + ub[j] * zb[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (own > ua[j] * za[k] + ub[j] * zb[k] + 1e-12) return false;
      }
    }
    return true;
  };

  std::vector<bool> ef(total, false);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t kmax = (i == 1) ? 0 : g;
    const std::size_t lmax = (i == n) ? 0 : g;
    for (std::size_t k = 0; k <= kmax; ++k) {
      for (std::size_t l = 0; l <= lmax; ++l) {
        double x, y;
        coords(i, k, l, x, y);
        ef[id(i, k, l)] = envy_free_at(i, x, y);
      }
    }
    // Envy constraints are affine in (x, y) within a family, so its envy-free part is convex.
    std::optional<std::size_t> first;
    for (std::size_t k = 0; k <= kmax; ++k) {
      for (std::size_t l = 0; l <= lmax; ++l) {
        if (!ef[id(i, k, l)]) continue;
        if (first) unite(id(i, k, l), *first);
        first = id(i, k, l);
      }
    }
  }
  // The corner x = 1/i, y = 0 of family i is the cut shared with the corner x = 0, y = 1/(n-i) of family i+1.
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t end = id(i, i == 1 ? 0 : g, 0);
    const std::size_t start = id(i + 1, 0, i + 1 == n ? 0 : g);
    if (ef[end] && ef[start]) unite(end, start);
  }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < total; ++v) {
    if (ef[v]) roots.insert(find(v));
  }
  return roots.size();
}

double nash_grid_max(const Problem& problem, double step) {
  const std::size_t m = problem.item_count();
  if (problem.agent_count() != 2) throw std::invalid_argument("two agents only");
  const auto steps = static_cast<std::size_t>(std::llround(1 / step));
  std::vector<std::size_t> k(m, 0);
  double best = 0;
  while (true) {
    double u1 = 0, u2 = 0;
    for (std::size_t a = 0; a < m; ++a) {
      const double z = double(k[a]) / double(steps);
      u1 += value(problem.u(0, a)) * z;
      u2 += value(problem.u(1, a)) * (1 - z);
    }
    best = std::max(best, u1 * u2);
    std::size_t a = 0;
    while (a < m && k[a] == steps) k[a++] = 0;
    if (a == m) break;
    ++k[a];
  }
  return best;
}

Profile profile_of(const Problem& problem, const Allocation& z) {
  Profile out(problem.agent_count(), 0);
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    for (std::size_t a = 0; a < problem.item_count(); ++a) out[i] += problem.u(i, a) * z.z(i, a);
  }
  return out;
}

bool ratio_conditions(const Problem& problem, const Allocation& z) {
  const Profile u = profile_of(problem, z);
  for (const auto& v : u) {
    if (v <= 0) return false;
  }
  for (std::size_t a = 0; a < problem.item_count(); ++a) {
    for (std::size_t i = 0; i < problem.agent_count(); ++i) {
      if (z.z(i, a) == 0) continue;
      for (std::size_t j = 0; j < problem.agent_count(); ++j) {
        const Rational lhs = problem.u(i, a) * u[j], rhs = problem.u(j, a) * u[i];
        if (problem.is_bads() ? lhs > rhs : lhs < rhs) return false;
      }
    }
  }
  return true;
}

bool fair_share(const Problem& problem, const Profile& profile, bool strict) {
  const Rational n(problem.agent_count());
  for (std::size_t i = 0; i < problem.agent_count(); ++i) {
    Rational share = 0;
    for (std::size_t a = 0; a < problem.item_count(); ++a) share += problem.u(i, a);
    share /= n;
    const Rational margin = problem.is_bads() ? share - profile[i] : profile[i] - share;
    if (margin < 0 || (strict && margin == 0)) return false;
  }
  return true;
}

bool envy_free(const Problem& problem, const Allocation& z) {
  const std::size_t n = problem.agent_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational own = 0, other = 0;
      for (std::size_t a = 0; a < problem.item_count(); ++a) {
        own += problem.u(i, a) * z.z(i, a);
        other += problem.u(i, a) * z.z(j, a);
      }
      if (problem.is_bads() ? own > other : own < other) return false;
    }
  }
  return true;
}

Problem random_problem(std::mt19937_64& rng, std::size_t agents, std::size_t items, fairdiv::ItemKind kind, int low,
                       int high) {
  std::uniform_int_distribution<int> pick(low, high);
  while (true) {
    std::vector<std::vector<Rational>> rows(agents, std::vector<Rational>(items));
    for (auto& row : rows) {
      for (auto& v : row) v = pick(rng);
    }
    try {
      return fairdiv::validate_problem(rows, kind);
    } catch (const fairdiv::Error&) {
      // null rows or columns: draw again
    }
  }
}

}  // namespace oracle
