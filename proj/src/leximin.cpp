#include <optional>

#include "fairdiv/optimization_kernel.hpp"

namespace fairdiv {

namespace {

LinearForm utility_form(const Problem& problem, std::size_t agent) {
  LinearForm form;
  const std::size_t p = problem.item_count();
  for (std::size_t a = 0; a < p; ++a) {
    if (problem.u(agent, a) != 0) form.emplace_back(allocation_variable(p, agent, a), problem.u(agent, a));
  }
  return form;
}

}  // namespace

LeximinResult leximin_max(const Problem& problem) {
  if (problem.kind() != ItemKind::goods) throw Error(ErrorCode::KindMismatch, "leximin_max expects goods");
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  std::vector<std::optional<Rational>> frozen(n);
  std::size_t lp_count = 0;

  auto base = [&](const Rational* floor_for_free) {
    LinearProgram lp = allocation_polytope(n, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) {
        lp.add_constraint(utility_form(problem, i), Sense::greater_equal, *frozen[i]);
      } else if (floor_for_free != nullptr) {
        lp.add_constraint(utility_form(problem, i), Sense::greater_equal, *floor_for_free);
      }
    }
    return lp;
  };

  for (;;) {
    std::vector<std::size_t> free_agents;
    for (std::size_t i = 0; i < n; ++i) {
      if (!frozen[i]) free_agents.push_back(i);
    }
    if (free_agents.empty()) break;

    LinearProgram level = base(nullptr);
    const std::size_t t = level.add_variable();
    for (std::size_t i : free_agents) {
      LinearForm form = utility_form(problem, i);
      form.emplace_back(t, -1);
      level.add_constraint(std::move(form), Sense::greater_equal, 0);
    }
    level.set_objective(Goal::maximize, {{t, 1}});
    const LpSolution top = solve_lp_or_throw(level);
    ++lp_count;
    const Rational floor = top.optimum;

    bool progressed = false;
    for (std::size_t i : free_agents) {
      Rational at_vertex = 0;
      for (const auto& [var, coeff] : utility_form(problem, i)) at_vertex += coeff * top.point[var];
      if (at_vertex > floor) continue;
      LinearProgram probe = base(&floor);
      probe.set_objective(Goal::maximize, utility_form(problem, i));
      const LpSolution best = solve_lp_or_throw(probe);
      ++lp_count;
      if (best.optimum == floor) {
        frozen[i] = floor;
        progressed = true;
      }
    }
    if (!progressed) throw Error(ErrorCode::Internal, "leximin: no saturated agent in round");
  }

  LinearProgram final_lp = allocation_polytope(n, p);
  for (std::size_t i = 0; i < n; ++i) final_lp.add_constraint(utility_form(problem, i), Sense::equal, *frozen[i]);
  final_lp.set_objective(Goal::maximize, {});
  const LpSolution vertex = solve_lp_or_throw(final_lp);
  ++lp_count;
  UtilityProfile profile;
  for (const auto& v : frozen) profile.push_back(*v);
  return LeximinResult{std::move(profile), allocation_from_point(n, p, vertex.point), lp_count};
}

}  // namespace fairdiv
