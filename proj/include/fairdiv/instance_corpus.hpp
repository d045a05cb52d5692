#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core_model.hpp"

namespace fairdiv {

enum class Provenance { stated, derived };

std::string_view provenance_name(Provenance provenance);

enum class ExpectationKind {
  /// Exact set of competitive profiles (order-free).
  competitive_profiles,
  /// Price of each listed competitive profile, aligned with competitive_profiles.
  competitive_prices,
  competitive_count,
  competitive_count_at_least,
  /// Allocations that must each pass verify_competitive.
  competitive_allocations,
  egalitarian_profile,
  /// Allocations that must each realize the egalitarian profile.
  egalitarian_allocation,
  ef_components,
};

std::string_view expectation_name(ExpectationKind kind);

struct Expectation {
  ExpectationKind kind;
  std::vector<std::vector<Rational>> rows;
  std::vector<RationalMatrix> allocations;
  std::size_t count = 0;
  Provenance provenance = Provenance::stated;
  std::string note;
};

using FixtureParams = std::map<std::string, std::string>;

struct Fixture {
  std::string name;
  std::string description;
  FixtureParams params;
  Problem problem;
  std::vector<Expectation> expectations;
};

struct FixtureInfo {
  std::string name;
  std::string description;
  /// Parameter names with their default values.
  FixtureParams defaults;
};

std::vector<FixtureInfo> corpus_catalog();

/// Throws Error(UnknownInstance) for unknown names, InvalidArgument for bad parameters.
Fixture build_fixture(std::string_view name, const FixtureParams& params = {});

/// Fixture instances written to data/corpus: every catalog entry at its defaults plus size variants.
std::vector<Fixture> exported_fixtures();

/// File stem used for an exported fixture, e.g. "comp_count_n4".
std::string fixture_stem(const Fixture& fixture);

}  // namespace fairdiv
