#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fairdiv/core_model.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Sense { less_equal, equal, greater_equal };
enum class Goal { maximize, minimize };

using LinearForm = std::vector<std::pair<std::size_t, Rational>>;

struct LinearConstraint {
  LinearForm terms;
  Sense sense;
  Rational rhs;
};

/// LP over nonnegative variables.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables = 0) : variables_(variables) {}

  std::size_t add_variable() { return variables_++; }
  std::size_t variable_count() const noexcept { return variables_; }

  void set_objective(Goal goal, LinearForm objective);
  void add_constraint(LinearForm terms, Sense sense, Rational rhs);

  Goal goal() const noexcept { return goal_; }
  const LinearForm& objective() const noexcept { return objective_; }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }

 private:
  std::size_t variables_;
  Goal goal_ = Goal::maximize;
  LinearForm objective_;
  std::vector<LinearConstraint> constraints_;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational optimum;
  std::vector<Rational> point;
};

/// Two-phase dense simplex with Bland's rule; exact and deterministic.
LpSolution solve_lp(const LinearProgram& program);

/// Like solve_lp but throws Error(Infeasible|Unbounded) instead of returning a status.
LpSolution solve_lp_or_throw(const LinearProgram& program);

/// True when the point satisfies every constraint exactly.
bool satisfies(const LinearProgram& program, const std::vector<Rational>& point);

/// Variables z_ia (index i * p + a) constrained to Φ(N, A): nonnegative with unit column sums.
LinearProgram allocation_polytope(std::size_t agents, std::size_t items);

inline std::size_t allocation_variable(std::size_t items, std::size_t agent, std::size_t item) {
  return agent * items + item;
}

Allocation allocation_from_point(std::size_t agents, std::size_t items, const std::vector<Rational>& point);

struct LeximinResult {
  UtilityProfile profile;
  Allocation allocation;
  /// Number of LPs solved, for diagnostics.
  std::size_t lp_count = 0;
};

/// Leximin-maximal utility profile over Φ(N, A) for a goods problem, in the problem's own units.
LeximinResult leximin_max(const Problem& problem);

}  // namespace fairdiv
