#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

std::string_view rejection_name(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::ZeroUtilityAgent: return "ZeroUtilityAgent";
    case RejectionReason::PriceInconsistent: return "PriceInconsistent";
    case RejectionReason::InequalityViolated: return "InequalityViolated";
    case RejectionReason::HarmlessItemPriced: return "HarmlessItemPriced";
    case RejectionReason::PriceMismatch: return "PriceMismatch";
    case RejectionReason::PriceNotNormalized: return "PriceNotNormalized";
    case RejectionReason::BudgetViolated: return "BudgetViolated";
    case RejectionReason::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

namespace {

Verification reject(RejectionReason reason, std::string message, std::optional<std::size_t> agent = std::nullopt,
                    std::optional<std::size_t> item = std::nullopt, std::optional<std::size_t> other = std::nullopt) {
  Verification out;
  out.rejection = Rejection{reason, agent, item, other, std::move(message)};
  return out;
}

}  // namespace

Verification verify_competitive(const Problem& problem, const Allocation& allocation,
                                const std::optional<PriceVector>& price) {
  const std::size_t n = problem.agent_count();
  const std::size_t p = problem.item_count();
  const bool bads = problem.is_bads();
  if (allocation.agent_count() != n || allocation.item_count() != p || (price && price->p.size() != p)) {
    return reject(RejectionReason::DimensionMismatch, "dimensions do not match the problem");
  }
  const UtilityProfile profile = utility_profile(problem, allocation);
  std::vector<bool> harmless(p, false);
  for (std::size_t a : problem.items_with_zero()) harmless[a] = bads;

  if (price) {
    if (bads) {
      for (std::size_t a = 0; a < p; ++a) {
        if (harmless[a] && price->p[a] != 0) {
          return reject(RejectionReason::HarmlessItemPriced, "a bad harmless to some agent must have price 0",
                        std::nullopt, a);
        }
      }
    }
    if (price->normalization == PriceNormalization::sum_n && sum(price->p) != Rational(static_cast<long>(n))) {
      return reject(RejectionReason::PriceNotNormalized, "prices do not sum to the number of agents");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (profile[i] == 0) return reject(RejectionReason::ZeroUtilityAgent, "agent has zero utility", i);
  }

  std::vector<Rational> reconstructed(p);
  for (std::size_t a = 0; a < p; ++a) {
    if (harmless[a]) continue;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
      if (allocation.z(i, a) == 0) continue;
      const Rational ratio = problem.u(i, a) / profile[i];
      if (!first) {
        first = i;
        reconstructed[a] = ratio;
      } else if (ratio != reconstructed[a]) {
        return reject(RejectionReason::PriceInconsistent, "consumers imply different prices", *first, a, i);
      }
    }
  }

  PriceVector used{reconstructed, PriceNormalization::sum_n};
  if (price) {
    Rational scale = 1;
    if (price->normalization == PriceNormalization::raw) {
      const Rational total = sum(price->p);
      if (total == 0) return reject(RejectionReason::PriceMismatch, "raw price vector is zero");
      scale = Rational(static_cast<long>(n)) / total;
    }
    for (std::size_t a = 0; a < p; ++a) {
      if (price->p[a] * scale != reconstructed[a]) {
        return reject(RejectionReason::PriceMismatch, "supplied price differs from u_ia / U_i", std::nullopt, a);
      }
    }
  }

  KktCertificate certificate;
  certificate.kind = problem.kind();
  certificate.profile = profile;
  certificate.price = used;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      const Rational ratio = problem.u(i, a) / profile[i];
      const Rational& pa = reconstructed[a];
      Rational slack = bads ? Rational(ratio - pa) : Rational(pa - ratio);
      const bool consumed = allocation.z(i, a) > 0;
      if (slack < 0) {
        // A consumer j of a with u_ja / U_j on the wrong side of agent i's ratio.
        std::optional<std::size_t> consumer;
        for (std::size_t j = 0; j < n && !consumer; ++j) {
          if (allocation.z(j, a) > 0) consumer = j;
        }
        return reject(RejectionReason::InequalityViolated,
                      bads ? "consumer's disutility ratio exceeds another agent's"
                           : "consumer's utility ratio is below another agent's",
                      consumer, a, i);
      }
      if (consumed && slack != 0) {
        return reject(RejectionReason::InequalityViolated, "consumed item off the price line", i, a);
      }
      certificate.entries.push_back(KktEntry{i, a, consumed, ratio, pa, std::move(slack)});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    Rational spend = 0;
    for (std::size_t a = 0; a < p; ++a) spend += reconstructed[a] * allocation.z(i, a);
    if (spend != 1) return reject(RejectionReason::BudgetViolated, "agent does not spend exactly 1", i);
  }
  if (sum(reconstructed) != Rational(static_cast<long>(n))) {
    return reject(RejectionReason::PriceNotNormalized, "reconstructed prices do not sum to n");
  }
  Verification out;
  out.certificate = std::move(certificate);
  return out;
}

Rational nash_product(const UtilityProfile& profile) {
  Rational product = 1;
  for (const auto& v : profile) product *= v;
  return product;
}

UtilityProfile normalized_profile(const Problem& problem, const UtilityProfile& profile) {
  UtilityProfile out;
  for (std::size_t i = 0; i < profile.size(); ++i) out.push_back(profile[i] / problem.row_total(i));
  return out;
}

}  // namespace fairdiv
