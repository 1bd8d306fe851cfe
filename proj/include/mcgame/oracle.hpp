#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/rational.hpp"

namespace mcgame {

// Exhaustive reference routines. They refuse (CapacityError) rather than truncate.
struct OracleOptions {
  std::size_t path_cap = 10'000;          // simple paths per player
  std::uint64_t profile_cap = 5'000'000;  // profiles scanned
  std::size_t arc_cap = 22;               // arc subsets for the out-tree scan
};

// All simple from-to paths in lexicographic vertex order.
std::vector<Path> enumerate_paths(const Arena& arena, VertexId from, VertexId to, std::size_t cap);

struct BruteMin {
  Rational value;
  StrategyProfile profile;  // lexicographically first minimizer
};

BruteMin brute_min_potential(const Arena& arena, const OracleOptions& options = {});

// Minimum-potential strict improver among all profiles within Hamming distance k.
std::optional<StrategyProfile> brute_improving_move(const Arena& arena, const StrategyProfile& s, std::size_t k,
                                                    const OracleOptions& options = {});

// Minimum potential over profiles whose path union is an out-tree rooted at the root.
Rational brute_min_tree_potential(const Arena& arena, const OracleOptions& options = {});

}  // namespace mcgame
