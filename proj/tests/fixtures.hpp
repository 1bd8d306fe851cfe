#pragma once

#include <random>
#include <string>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/random_instances.hpp"

namespace mcgame::testing {

// Diamond r->{a,b}->t with fair-share costs 4, 6, 1, 1 and two players at t.
inline Arena instance_a(std::size_t players = 2) {
  return Arena::create({"r", "a", "b", "t"}, "r",
                       {{"r", "a", CostFunction::fair_share(4)},
                        {"r", "b", CostFunction::fair_share(6)},
                        {"a", "t", CostFunction::fair_share(1)},
                        {"b", "t", CostFunction::fair_share(1)}},
                       std::vector<std::string>(players, "t"));
}

inline Path named_path(const Arena& arena, const std::vector<std::string>& names) {
  Path p;
  for (const auto& n : names) p.push_back(*arena.find_vertex(n));
  return p;
}

inline StrategyProfile profile_of(const Arena& arena, const std::vector<std::vector<std::string>>& paths) {
  std::vector<Path> out;
  for (const auto& p : paths) out.push_back(named_path(arena, p));
  return StrategyProfile::create(arena, std::move(out));
}

inline StrategyProfile a_shared(const Arena& a) { return profile_of(a, {{"r", "a", "t"}, {"r", "a", "t"}}); }
inline StrategyProfile a_split(const Arena& a) { return profile_of(a, {{"r", "a", "t"}, {"r", "b", "t"}}); }

// Desk-scale arenas near the oracles' comfortable limits.
inline RandomArenaParams desk_params() {
  RandomArenaParams p;
  p.min_vertices = 4;
  p.max_vertices = 7;
  p.min_arcs = 6;
  p.max_arcs = 10;
  p.min_players = 1;
  p.max_players = 4;
  return p;
}

// The corpus used across property tests: small mixed-cost arenas.
inline std::vector<Arena> random_corpus(std::uint64_t seed, std::size_t count,
                                        RandomArenaParams params = desk_params()) {
  std::mt19937_64 rng(seed);
  std::vector<Arena> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_arena(rng, params));
  return out;
}

}  // namespace mcgame::testing
