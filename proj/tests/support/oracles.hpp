#pragma once

#include <random>
#include <set>
#include <vector>

#include "fairdiv/core_model.hpp"

namespace oracle {

using fairdiv::Allocation;
using fairdiv::Problem;
using fairdiv::Rational;
using Profile = std::vector<Rational>;

/// Competitive profiles by brute force over every support pattern. Positive matrices only.
std::set<Profile> competitive_profiles(const Problem& problem);

/// Pareto efficiency of a 2x2 allocation from the exchange-ratio condition.
bool efficient_2x2(const Problem& problem, const Allocation& allocation);

/// Envy-free components of the efficient set of a two-bads problem with distinct ratios,
/// from a grid over each split family; families connect through their shared cuts.
std::size_t grid_components(const Problem& problem, std::size_t grid = 201);

/// Largest Nash product over allocations of two agents on a grid of the given step.
double nash_grid_max(const Problem& problem, double step = 1e-2);

/// Ratio characterization of a competitive profile: U >> 0, U = u.z, and whoever eats a has the
/// extreme ratio u_ia / U_i for it (largest for goods, smallest for bads).
bool ratio_conditions(const Problem& problem, const Allocation& allocation);

bool fair_share(const Problem& problem, const Profile& profile, bool strict = false);
bool envy_free(const Problem& problem, const Allocation& allocation);

Profile profile_of(const Problem& problem, const Allocation& allocation);

/// Integer entries in [low, high].
Problem random_problem(std::mt19937_64& rng, std::size_t agents, std::size_t items, fairdiv::ItemKind kind,
                       int low = 1, int high = 12);

}  // namespace oracle
