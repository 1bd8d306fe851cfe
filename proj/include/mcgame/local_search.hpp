#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/exact_dp.hpp"
#include "mcgame/rational.hpp"

namespace mcgame {

struct LocalSearchOptions {
  DpOptions dp;
  // Stop at the first improving subset (in enumeration order) instead of
  // returning the best improving neighbour.
  bool first_found = false;
};

// Players with at least two simple root-terminal paths. Everyone else is
// pinned to their current path in every profile.
std::vector<bool> movable_players(const Arena& arena, const StrategyProfile& s);

// A profile s' with potential(s') < potential(s) that changes at most k
// players' paths, or nullopt if none exists. Throws ArgumentError if k > n.
std::optional<StrategyProfile> improving_move(const Arena& arena, const StrategyProfile& s, std::size_t k,
                                              const LocalSearchOptions& options = {});

struct DynamicsStep {
  std::size_t player;
  Path old_path;
  Path new_path;
  Rational potential_after;
};

using DynamicsTrace = std::vector<DynamicsStep>;

struct DynamicsResult {
  StrategyProfile profile;
  DynamicsTrace trace;
  bool converged;
};

// Least-index improving player moves to its best response, until Nash or max_steps moves.
DynamicsResult best_response_dynamics(const Arena& arena, StrategyProfile s, std::size_t max_steps);

// Applies improving_move(., k) until it finds nothing or max_rounds moves were made.
StrategyProfile iterated_descent(const Arena& arena, StrategyProfile s, std::size_t k, std::size_t max_rounds,
                                 const LocalSearchOptions& options = {});

}  // namespace mcgame
