#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "mcgame/arena.hpp"

namespace mcgame {

struct RandomArenaParams {
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 7;
  std::size_t min_arcs = 0;  // raised to vertices - 1 when smaller
  std::size_t max_arcs = 10;
  std::size_t min_players = 0;
  std::size_t max_players = 4;
  std::int64_t max_base = 6;
  // Out of 100: chance an arc gets a cost table instead of a fair-share cost.
  unsigned table_percent = 40;
};

// Uniform integer in [lo, hi]; stable across standard libraries.
std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

// Vertices "v0".."v{n-1}" with root v0. A random tree from the root keeps
// every vertex reachable; extra random arcs (any direction) create cycles.
Arena random_arena(std::mt19937_64& rng, const RandomArenaParams& params = {});

// A random simple root-terminal path per player.
StrategyProfile random_profile(const Arena& arena, std::mt19937_64& rng);

}  // namespace mcgame
