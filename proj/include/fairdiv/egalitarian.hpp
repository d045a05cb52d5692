#pragma once

#include <optional>

#include "fairdiv/core_model.hpp"

namespace fairdiv {

struct EgalitarianResult {
  /// In the problem's original units.
  UtilityProfile profile;
  /// Forest-reduced LP vertex.
  Allocation allocation;
  /// True when the problem is generic, so the representing allocation is unique; empty when not checked.
  std::optional<bool> unique_allocation;
};

EgalitarianResult egalitarian_goods(const Problem& problem);
EgalitarianResult egalitarian_bads(const Problem& problem);
EgalitarianResult egalitarian(const Problem& problem);

}  // namespace fairdiv
