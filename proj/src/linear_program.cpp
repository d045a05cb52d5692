#include <algorithm>

#include "fairdiv/optimization_kernel.hpp"

namespace fairdiv {

void LinearProgram::set_objective(Goal goal, LinearForm objective) {
  for (const auto& [var, coeff] : objective) {
    if (var >= variables_) throw Error(ErrorCode::InvalidArgument, "objective references unknown variable");
  }
  goal_ = goal;
  objective_ = std::move(objective);
}

void LinearProgram::add_constraint(LinearForm terms, Sense sense, Rational rhs) {
  for (const auto& [var, coeff] : terms) {
    if (var >= variables_) throw Error(ErrorCode::InvalidArgument, "constraint references unknown variable");
  }
  constraints_.push_back({std::move(terms), sense, std::move(rhs)});
}

namespace {

/// Dense tableau in canonical form; the last row holds reduced costs (minimization).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows + 1, std::vector<Rational>(cols + 1)), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  Rational& rhs(std::size_t r) { return cells_[r][cols_]; }
  Rational& cost(std::size_t c) { return cells_.back()[c]; }
  Rational& cost_rhs() { return cells_.back()[cols_]; }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rational>& prow = cells_[r];
    const Rational inv = 1 / prow[c];
    for (auto& v : prow) {
      if (v != 0) v *= inv;
    }
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k <= cols_; ++k) {
      if (prow[k] != 0) nonzero.push_back(k);
    }
    for (std::size_t other = 0; other < cells_.size(); ++other) {
      if (other == r) continue;
      std::vector<Rational>& row = cells_[other];
      if (row[c] == 0) continue;
      const Rational factor = row[c];
      for (std::size_t k : nonzero) row[k] -= factor * prow[k];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Bland's rule iterations over columns allowed[c]; returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && cost(c) < 0) {
          entering = c;
          break;
        }
      }
      if (entering == cols_) return true;
      std::size_t leaving = rows();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows(); ++r) {
        const Rational& coeff = at(r, entering);
        if (coeff <= 0) continue;
        Rational ratio = rhs(r) / coeff;
        if (leaving == rows() || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows()) return false;
      pivot(leaving, entering);
    }
  }

 private:
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& program) {
  const std::size_t n = program.variable_count();
  const auto& constraints = program.constraints();
  const std::size_t m = constraints.size();

  // Column layout: originals, then one slack/surplus per inequality, then artificials.
  std::vector<Sense> senses;
  std::vector<bool> flipped;
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& con : constraints) {
    Sense s = con.sense;
    const bool flip = con.rhs < 0;
    if (flip && s != Sense::equal) s = (s == Sense::less_equal) ? Sense::greater_equal : Sense::less_equal;
    senses.push_back(s);
    flipped.push_back(flip);
    if (s != Sense::equal) ++slack_count;
    if (s != Sense::less_equal) ++artificial_count;
  }
  const std::size_t cols = n + slack_count + artificial_count;
  Tableau tab(m, cols);
  std::size_t next_slack = n;
  std::size_t next_artificial = n + slack_count;
  for (std::size_t r = 0; r < m; ++r) {
    const Rational sign = flipped[r] ? -1 : 1;
    for (const auto& [var, coeff] : constraints[r].terms) tab.at(r, var) += sign * coeff;
    tab.rhs(r) = sign * constraints[r].rhs;
    switch (senses[r]) {
      case Sense::less_equal:
        tab.at(r, next_slack) = 1;
        tab.basis()[r] = next_slack++;
        break;
      case Sense::greater_equal:
        tab.at(r, next_slack++) = -1;
        tab.at(r, next_artificial) = 1;
        tab.basis()[r] = next_artificial++;
        break;
      case Sense::equal:
        tab.at(r, next_artificial) = 1;
        tab.basis()[r] = next_artificial++;
        break;
    }
  }
  const std::size_t first_artificial = n + slack_count;
  auto is_artificial = [&](std::size_t c) { return c >= first_artificial; };

  // Phase 1: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    if (!is_artificial(tab.basis()[r])) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!is_artificial(c)) tab.cost(c) -= tab.at(r, c);
    }
    tab.cost_rhs() -= tab.rhs(r);
  }
  std::vector<bool> allowed(cols, true);
  tab.optimize(allowed);
  LpSolution solution;
  if (tab.cost_rhs() != 0) {
    solution.status = LpStatus::infeasible;
    return solution;
  }
  for (std::size_t r = 0; r < tab.rows();) {
    if (!is_artificial(tab.basis()[r])) {
      ++r;
      continue;
    }
    std::size_t replacement = cols;
    for (std::size_t c = 0; c < first_artificial; ++c) {
      if (tab.at(r, c) != 0) {
        replacement = c;
        break;
      }
    }
    if (replacement == cols) {
      tab.drop_row(r);
    } else {
      tab.pivot(r, replacement);
      ++r;
    }
  }

  // Phase 2 on the original objective, expressed as minimization.
  for (std::size_t c = first_artificial; c < cols; ++c) allowed[c] = false;
  std::vector<Rational> costs(cols);
  for (const auto& [var, coeff] : program.objective()) {
    costs[var] += program.goal() == Goal::maximize ? Rational(-coeff) : coeff;
  }
  for (std::size_t c = 0; c <= cols; ++c) {
    if (c == cols) {
      tab.cost_rhs() = 0;
    } else {
      tab.cost(c) = costs[c];
    }
  }
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    const Rational cb = costs[tab.basis()[r]];
    if (cb == 0) continue;
    for (std::size_t c = 0; c < cols; ++c) tab.cost(c) -= cb * tab.at(r, c);
    tab.cost_rhs() -= cb * tab.rhs(r);
  }
  if (!tab.optimize(allowed)) {
    solution.status = LpStatus::unbounded;
    return solution;
  }
  solution.status = LpStatus::optimal;
  solution.point.assign(n, Rational(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    if (tab.basis()[r] < n) solution.point[tab.basis()[r]] = tab.rhs(r);
  }
  Rational value = 0;
  for (const auto& [var, coeff] : program.objective()) value += coeff * solution.point[var];
  solution.optimum = value;
  return solution;
}

LpSolution solve_lp_or_throw(const LinearProgram& program) {
  LpSolution solution = solve_lp(program);
  if (solution.status == LpStatus::infeasible) throw Error(ErrorCode::Infeasible, "linear program is infeasible");
  if (solution.status == LpStatus::unbounded) throw Error(ErrorCode::Unbounded, "linear program is unbounded");
  return solution;
}

bool satisfies(const LinearProgram& program, const std::vector<Rational>& point) {
  if (point.size() != program.variable_count()) return false;
  for (const auto& v : point) {
    if (v < 0) return false;
  }
  for (const auto& con : program.constraints()) {
    Rational lhs = 0;
    for (const auto& [var, coeff] : con.terms) lhs += coeff * point[var];
    switch (con.sense) {
      case Sense::less_equal:
        if (lhs > con.rhs) return false;
        break;
      case Sense::greater_equal:
        if (lhs < con.rhs) return false;
        break;
      case Sense::equal:
        if (lhs != con.rhs) return false;
        break;
    }
  }
  return true;
}

LinearProgram allocation_polytope(std::size_t agents, std::size_t items) {
  LinearProgram lp(agents * items);
  for (std::size_t a = 0; a < items; ++a) {
    LinearForm column;
    for (std::size_t i = 0; i < agents; ++i) column.emplace_back(allocation_variable(items, i, a), 1);
    lp.add_constraint(std::move(column), Sense::equal, 1);
  }
  return lp;
}

Allocation allocation_from_point(std::size_t agents, std::size_t items, const std::vector<Rational>& point) {
  RationalMatrix z(agents, items);
  for (std::size_t i = 0; i < agents; ++i) {
    for (std::size_t a = 0; a < items; ++a) z(i, a) = point.at(allocation_variable(items, i, a));
  }
  return Allocation(std::move(z));
}

}  // namespace fairdiv
