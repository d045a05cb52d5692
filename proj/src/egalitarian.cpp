#include "fairdiv/egalitarian.hpp"

#include "fairdiv/efficiency.hpp"
#include "fairdiv/optimization_kernel.hpp"

namespace fairdiv {

namespace {

std::optional<bool> uniqueness(const Problem& problem) {
  if (problem.agent_count() + problem.item_count() > 12) return std::nullopt;
  return is_generic(problem);
}

LinearForm utility_form(const Problem& problem, std::size_t agent) {
  LinearForm form;
  const std::size_t p = problem.item_count();
  for (std::size_t a = 0; a < p; ++a) {
    if (problem.u(agent, a) != 0) form.emplace_back(allocation_variable(p, agent, a), problem.u(agent, a));
  }
  return form;
}

}  // namespace

EgalitarianResult egalitarian_goods(const Problem& problem) {
  if (problem.kind() != ItemKind::goods) throw Error(ErrorCode::KindMismatch, "egalitarian_goods expects goods");
  const Problem normalized = normalize(problem);
  LeximinResult best = leximin_max(normalized);
  UtilityProfile profile;
  for (std::size_t i = 0; i < problem.agent_count(); ++i) profile.push_back(best.profile[i] * problem.row_total(i));
  Allocation allocation = reduce_to_forest(problem, best.allocation);
  return EgalitarianResult{std::move(profile), std::move(allocation), uniqueness(problem)};
}

EgalitarianResult egalitarian_bads(const Problem& problem) {
  if (problem.kind() != ItemKind::bads) throw Error(ErrorCode::KindMismatch, "egalitarian_bads expects bads");
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  LinearProgram lp = allocation_polytope(n, p);
  const std::size_t t = lp.add_variable();
  for (std::size_t i = 0; i < n; ++i) {
    LinearForm form = utility_form(problem, i);
    form.emplace_back(t, -problem.row_total(i));
    lp.add_constraint(std::move(form), Sense::less_equal, 0);
  }
  lp.set_objective(Goal::minimize, {{t, 1}});
  const LpSolution level = solve_lp_or_throw(lp);
  const Rational theta = level.optimum;

  Allocation allocation = allocation_from_point(n, p, level.point);
  if (!is_efficient(problem, allocation).efficient) {
    // Second pass: least total normalized disutility among allocations meeting the level.
    LinearProgram refine = allocation_polytope(n, p);
    LinearForm objective;
    for (std::size_t i = 0; i < n; ++i) {
      refine.add_constraint(utility_form(problem, i), Sense::less_equal, theta * problem.row_total(i));
      for (const auto& [var, coeff] : utility_form(problem, i)) objective.emplace_back(var, coeff / problem.row_total(i));
    }
    refine.set_objective(Goal::minimize, std::move(objective));
    allocation = allocation_from_point(n, p, solve_lp_or_throw(refine).point);
    if (!is_efficient(problem, allocation).efficient) {
      throw Error(ErrorCode::Internal, "egalitarian bads allocation is not efficient");
    }
  }
  const UtilityProfile achieved = utility_profile(problem, allocation);
  UtilityProfile profile;
  for (std::size_t i = 0; i < n; ++i) {
    profile.push_back(theta * problem.row_total(i));
    if (achieved[i] != profile[i]) throw Error(ErrorCode::Internal, "egalitarian bads profile is not equalized", i);
  }
  allocation = reduce_to_forest(problem, allocation);
  return EgalitarianResult{std::move(profile), std::move(allocation), uniqueness(problem)};
}

EgalitarianResult egalitarian(const Problem& problem) {
  return problem.is_bads() ? egalitarian_bads(problem) : egalitarian_goods(problem);
}

}  // namespace fairdiv
