#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/rational.hpp"

namespace mcgame {

// 1 + 1/2 + ... + 1/h, zero for h == 0.
Rational harmonic(std::size_t h);

// sum_{j=1..h} c_e(j). Throws CostDomainError outside the cost function's domain.
Rational cumulative_cost(const Arena& arena, ArcId e, std::size_t h);

// Sum over used arcs of cumulative_cost(e, n_e(s)).
Rational potential(const Arena& arena, const StrategyProfile& s);

Rational player_cost(const Arena& arena, const StrategyProfile& s, std::size_t player);

Rational total_cost(const Arena& arena, const StrategyProfile& s);

// Number of players whose paths differ. Throws ArgumentError on player-count mismatch.
std::size_t hamming_distance(const StrategyProfile& a, const StrategyProfile& b);

struct PathChoice {
  Path path;
  Rational cost;
};

// Cheapest `from`-`to` path under the given per-arc weights (all >= 0).
// Ties: fewer arcs first, then lexicographically smallest vertex sequence.
std::optional<PathChoice> cheapest_path(const Arena& arena, VertexId from, VertexId to,
                                        const std::vector<Rational>& arc_weights);

// Best unilateral deviation of `player` against the others' paths in s; the
// returned cost is what the player would pay after switching.
PathChoice best_response(const Arena& arena, const StrategyProfile& s, std::size_t player);

struct NashCheck {
  bool is_nash = true;
  // Least-index player with a strictly cheaper deviation, if any.
  std::optional<std::size_t> player;
  std::optional<PathChoice> deviation;
};

NashCheck check_nash(const Arena& arena, const StrategyProfile& s);

inline bool is_nash(const Arena& arena, const StrategyProfile& s) { return check_nash(arena, s).is_nash; }

}  // namespace mcgame
