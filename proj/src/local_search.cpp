#include "mcgame/local_search.hpp"

#include <stdexcept>
#include <utility>

#include "mcgame/error.hpp"
#include "mcgame/game.hpp"
#include "mcgame/parallel.hpp"

namespace mcgame {

namespace {

// Is `target` reachable from `from` without entering a blocked vertex?
bool reachable_avoiding(const Arena& arena, VertexId from, VertexId target, const std::vector<bool>& blocked) {
  if (blocked[from]) return false;
  std::vector<bool> seen = blocked;
  std::vector<VertexId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    if (u == target) return true;
    for (ArcId e : arena.out_arcs(u)) {
      const VertexId v = arena.arc(e).to;
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return false;
}

// Advances `c` (strictly increasing indices into [0, universe)) to the next
// k-combination in colexicographic order, i.e. ascending bitmask order.
bool next_combination(std::vector<std::size_t>& c, std::size_t universe) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = i + 1 < k ? c[i + 1] : universe;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

struct Candidate {
  Rational value;
  std::vector<std::size_t> movers;
  std::vector<Path> paths;
};

std::optional<Candidate> evaluate_subset(const Arena& arena, const StrategyProfile& s, const Rational& current,
                                         const std::vector<std::size_t>& movers, const DpOptions& dp) {
  std::vector<std::uint32_t> background = s.loads();
  for (std::size_t p : movers) {
    for (ArcId e : s.arcs_of(p)) --background[e];
  }
  Rational fixed;
  for (ArcId e = 0; e < arena.arc_count(); ++e) {
    if (background[e] > 0) fixed += arena.arc(e).cost.cumulative(background[e]);
  }
  auto solution = solve_subgame(arena, arena.root(), movers, CostShift(std::move(background)),
                                arena.vertex_count() - 1, dp);
  if (!solution.value) return std::nullopt;
  Rational total = fixed + *solution.value;
  if (!(total < current)) return std::nullopt;
  return Candidate{std::move(total), movers, std::move(solution.paths)};
}

}  // namespace

std::vector<bool> movable_players(const Arena& arena, const StrategyProfile& s) {
  std::vector<bool> movable(s.player_count(), false);
  for (std::size_t i = 0; i < s.player_count(); ++i) {
    const Path& p = s.path(i);
    std::vector<bool> prefix(arena.vertex_count(), false);
    // A different simple path first leaves p at some p[idx] through an arc
    // not on p, then reaches the terminal avoiding p[0..idx].
    for (std::size_t idx = 0; idx + 1 < p.size() && !movable[i]; ++idx) {
      prefix[p[idx]] = true;
      for (ArcId e : arena.out_arcs(p[idx])) {
        const VertexId b = arena.arc(e).to;
        if (b == p[idx + 1]) continue;
        if (reachable_avoiding(arena, b, p.back(), prefix)) {
          movable[i] = true;
          break;
        }
      }
    }
  }
  return movable;
}

std::optional<StrategyProfile> improving_move(const Arena& arena, const StrategyProfile& s, std::size_t k,
                                              const LocalSearchOptions& options) {
  const std::size_t n = s.player_count();
  if (k > n) throw ArgumentError("k = " + std::to_string(k) + " exceeds the number of players " + std::to_string(n));
  if (k == 0) return std::nullopt;

  const Rational current = potential(arena, s);
  std::vector<std::size_t> candidates;
  const auto movable = movable_players(arena, s);
  for (std::size_t i = 0; i < n; ++i) {
    if (movable[i]) candidates.push_back(i);
  }
  if (candidates.empty()) return std::nullopt;

  // Pinned players can only keep their paths, so subsets of exactly
  // min(k, #movable) movable players cover the whole k-exchange neighbourhood.
  const std::size_t size = std::min(k, candidates.size());
  std::vector<std::size_t> combo(size);
  for (std::size_t j = 0; j < size; ++j) combo[j] = j;

  constexpr std::size_t kChunk = 256;
  std::optional<Candidate> best;
  bool more = true;
  while (more) {
    std::vector<std::vector<std::size_t>> chunk;
    while (more && chunk.size() < kChunk) {
      std::vector<std::size_t> movers(size);
      for (std::size_t j = 0; j < size; ++j) movers[j] = candidates[combo[j]];
      chunk.push_back(std::move(movers));
      more = next_combination(combo, candidates.size());
    }
    std::vector<std::optional<Candidate>> results(chunk.size());
    parallel_for(chunk.size(), options.dp.workers, [&](std::size_t i) {
      DpOptions dp = options.dp;
      dp.workers = 1;
      results[i] = evaluate_subset(arena, s, current, chunk[i], dp);
    });
    for (auto& r : results) {
      if (r && (!best || r->value < best->value)) best = std::move(r);
    }
    if (best && options.first_found) break;
  }
  if (!best) return std::nullopt;

  auto paths = s.paths();
  for (std::size_t j = 0; j < best->movers.size(); ++j) paths[best->movers[j]] = std::move(best->paths[j]);
  auto next = StrategyProfile::create(arena, std::move(paths));
  if (potential(arena, next) != best->value || hamming_distance(s, next) > k) {
    throw std::logic_error("improving_move produced an inconsistent neighbour");
  }
  return next;
}

DynamicsResult best_response_dynamics(const Arena& arena, StrategyProfile s, std::size_t max_steps) {
  DynamicsTrace trace;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto check = check_nash(arena, s);
    if (check.is_nash) return DynamicsResult{std::move(s), std::move(trace), true};
    const std::size_t i = *check.player;
    Path old_path = s.path(i);
    s = s.with_path(arena, i, check.deviation->path);
    trace.push_back(DynamicsStep{i, std::move(old_path), std::move(check.deviation->path), potential(arena, s)});
  }
  const bool converged = is_nash(arena, s);
  return DynamicsResult{std::move(s), std::move(trace), converged};
}

StrategyProfile iterated_descent(const Arena& arena, StrategyProfile s, std::size_t k, std::size_t max_rounds,
                                 const LocalSearchOptions& options) {
  for (std::size_t round = 0; round < max_rounds; ++round) {
    auto next = improving_move(arena, s, k, options);
    if (!next) break;
    s = std::move(*next);
  }
  return s;
}

}  // namespace mcgame
