#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/core_model.hpp"

namespace fairdiv {

/// One (agent, item) record of the competitive first-order conditions.
struct KktEntry {
  std::size_t agent = 0;
  std::size_t item = 0;
  bool consumed = false;
  /// u_ia / U_i
  Rational ratio;
  Rational price;
  /// Goods: price - ratio (>= 0). Bads: ratio - price (>= 0). Zero whenever consumed.
  Rational slack;
};

struct KktCertificate {
  ItemKind kind = ItemKind::goods;
  UtilityProfile profile;
  PriceVector price;
  std::vector<KktEntry> entries;
};

enum class RejectionReason {
  ZeroUtilityAgent,
  PriceInconsistent,
  InequalityViolated,
  HarmlessItemPriced,
  PriceMismatch,
  PriceNotNormalized,
  BudgetViolated,
  DimensionMismatch,
};

std::string_view rejection_name(RejectionReason reason);

struct Rejection {
  RejectionReason reason;
  std::optional<std::size_t> agent;
  std::optional<std::size_t> item;
  std::optional<std::size_t> other_agent;
  std::string message;
};

struct Verification {
  std::optional<KktCertificate> certificate;
  std::optional<Rejection> rejection;

  bool ok() const noexcept { return certificate.has_value(); }
};

/// Exact check of the competitive conditions; the price is reconstructed when not supplied.
Verification verify_competitive(const Problem& problem, const Allocation& allocation,
                                const std::optional<PriceVector>& price = std::nullopt);

enum class CutSplitKind { cut, split };

/// Position of a two-agent or two-bad division along its chain of cuts and splits.
struct CutSplitDescriptor {
  CutSplitKind kind = CutSplitKind::cut;
  /// n = 2: number of leading (merged, sorted) bads held by agent 1.
  /// p = 2: number of leading (sorted) agents eating bad a; for a split, the 1-based rank of the splitting agent.
  std::size_t position = 0;
  /// Splitting agent (p = 2) as an index into the problem's agents.
  std::optional<std::size_t> agent;
  /// Split bad (n = 2) as an index into the problem's items (first constituent of a merged composite).
  std::optional<std::size_t> item;
  Rational x;
  Rational y;
  /// 2k-1 for a k-split, 2k for a k/k+1 cut.
  std::size_t chain_key() const { return kind == CutSplitKind::split ? 2 * position - 1 : 2 * position; }
};

struct CompetitiveDivision {
  Allocation allocation;
  PriceVector price;
  UtilityProfile profile;
  KktCertificate certificate;
  std::optional<CutSplitDescriptor> descriptor;
};

/// Unique division supported by the forest, or nullopt when it is not competitive.
std::optional<CompetitiveDivision> solve_forest(const Problem& problem, const ConsumptionGraph& forest);

struct EnumerationOptions {
  /// Forest enumeration runs only when n + p does not exceed this bound.
  std::size_t max_vertices = 11;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Allow the floating-point proportional-response path for large goods problems.
  bool allow_numeric = true;
};

struct EnumerationResult {
  std::vector<CompetitiveDivision> divisions;
  /// False when the deadline cut the search short.
  bool complete = true;
  /// A closed form met one of its defining inequalities with equality.
  bool boundary_case = false;
  std::string method;
};

/// Every competitive division, one per profile.
EnumerationResult enumerate_competitive(const Problem& problem, const EnumerationOptions& options = {});

/// Forest enumeration regardless of closed forms (still guarded by options.max_vertices).
EnumerationResult enumerate_forests(const Problem& problem, const EnumerationOptions& options = {});

/// The unique competitive division of a goods problem.
CompetitiveDivision competitive_goods(const Problem& problem, const EnumerationOptions& options = {});

struct NumericOptions {
  double tolerance = 1e-9;
  double edge_threshold = 1e-6;
  std::size_t max_iterations = 200000;
  double damping = 0.5;
};

/// Proportional-response iteration followed by exact forest reconstruction.
CompetitiveDivision competitive_goods_numeric(const Problem& problem, const NumericOptions& options = {});

/// Closed form for two agents; divisions in chain order.
EnumerationResult competitive_bads_n2(const Problem& problem);

/// Closed form for two bads; divisions in chain order.
EnumerationResult competitive_bads_m2(const Problem& problem);

Rational nash_product(const UtilityProfile& profile);

/// Profile rescaled to U_i / (u_i . e).
UtilityProfile normalized_profile(const Problem& problem, const UtilityProfile& profile);

}  // namespace fairdiv
