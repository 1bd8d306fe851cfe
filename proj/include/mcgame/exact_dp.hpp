#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/rational.hpp"

namespace mcgame {

// Bitmask over the player slots of a subgame (bit i = i-th listed player).
using PlayerSet = std::uint32_t;

// Background load per arc: a subgame player set of size h on arc e pays
// c_e(shift[e] + 1) ... c_e(shift[e] + h) into the potential.
class CostShift {
 public:
  explicit CostShift(const Arena& arena) : load_(arena.arc_count(), 0) {}
  explicit CostShift(std::vector<std::uint32_t> background) : load_(std::move(background)) {}

  [[nodiscard]] std::uint32_t operator[](ArcId e) const { return load_.at(e); }
  [[nodiscard]] std::size_t size() const { return load_.size(); }

 private:
  std::vector<std::uint32_t> load_;
};

struct DpOptions {
  // Capacity guard on subgame size (the table has 2^players * |V| cells).
  std::size_t max_players = 24;
  unsigned workers = 1;
};

// Memoized table of the minimum shifted potential Psi(u, X, m): players X
// route from u to their terminals using at most m distinct arcs in total.
// Each cell is stored as the list of budgets at which the optimum strictly
// drops, so Psi(u, X, .) is a non-increasing step function of m.
class PotentialTable {
 public:
  // `players` are arena player indices; slot i of every PlayerSet refers to players[i].
  PotentialTable(const Arena& arena, std::vector<std::size_t> players, CostShift shift, std::size_t budget,
                 const DpOptions& options = {});

  // nullopt encodes an infeasible cell. Requires m <= budget().
  [[nodiscard]] std::optional<Rational> value(VertexId u, PlayerSet x, std::size_t m) const;

  // Paths (one per slot in x, indexed by slot; other entries empty) from u,
  // realizing value(u, x, m) with the fewest arcs among optimal choices.
  [[nodiscard]] std::vector<Path> reconstruct(VertexId u, PlayerSet x, std::size_t m) const;

  [[nodiscard]] std::size_t slot_count() const { return players_.size(); }
  [[nodiscard]] std::size_t budget() const { return budget_; }
  [[nodiscard]] const std::vector<std::size_t>& players() const { return players_; }
  [[nodiscard]] PlayerSet all_players() const;
  // sum_{h=1..count} c_e(shift[e] + h).
  [[nodiscard]] const Rational& shifted_cumulative(ArcId e, std::size_t count) const;

 private:
  // Step-function cells; values are held as integers over a common
  // denominator whenever every reachable value fits in 128 bits.
  struct Storage;

  void reconstruct_into(VertexId u, PlayerSet x, std::size_t m, std::vector<Path>& out) const;

  const Arena* arena_;
  std::vector<std::size_t> players_;
  CostShift shift_;
  std::size_t budget_;
  std::size_t vertex_count_;
  std::vector<PlayerSet> reach_;                 // per vertex: slots whose terminal is reachable
  std::vector<std::vector<Rational>> arc_sums_;  // [arc][h], h = 0..slots
  std::shared_ptr<const Storage> storage_;
};

struct SubgameSolution {
  std::optional<Rational> value;  // nullopt: some terminal unreachable within budget
  std::vector<Path> paths;        // aligned with the requested player list
};

// Minimum shifted potential for `players` routing from `origin` with at most
// `budget` arcs, plus a realizing set of simple paths.
SubgameSolution solve_subgame(const Arena& arena, VertexId origin, const std::vector<std::size_t>& players,
                              const CostShift& shift, std::size_t budget, const DpOptions& options = {});

struct MinPotential {
  Rational value;
  StrategyProfile profile;
};

// Global minimum of the potential over all strategy profiles.
MinPotential min_potential(const Arena& arena, const DpOptions& options = {});

// sum_e sum_{h=1..n_e} c_e(shift[e] + h) for an arbitrary set of simple paths.
Rational shifted_potential(const Arena& arena, const std::vector<Path>& paths, const CostShift& shift);

}  // namespace mcgame
