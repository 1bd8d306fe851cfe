#include "mcgame/oracle.hpp"

#include <utility>

#include "mcgame/error.hpp"
#include "mcgame/game.hpp"

namespace mcgame {

namespace {

void collect_paths(const Arena& arena, VertexId to, std::size_t cap, Path& current, std::vector<bool>& on_path,
                   std::vector<Path>& out) {
  const VertexId u = current.back();
  if (u == to) {
    if (out.size() == cap) throw CapacityError("more than " + std::to_string(cap) + " simple paths");
    out.push_back(current);
    return;
  }
  for (ArcId e : arena.out_arcs(u)) {
    const VertexId v = arena.arc(e).to;
    if (on_path[v]) continue;
    on_path[v] = true;
    current.push_back(v);
    collect_paths(arena, to, cap, current, on_path, out);
    current.pop_back();
    on_path[v] = false;
  }
}

std::vector<std::vector<Path>> strategy_sets(const Arena& arena, const OracleOptions& options) {
  std::vector<std::vector<Path>> sets;
  sets.reserve(arena.player_count());
  for (std::size_t i = 0; i < arena.player_count(); ++i) {
    sets.push_back(enumerate_paths(arena, arena.root(), arena.terminal(i), options.path_cap));
  }
  return sets;
}

// Arc lists of every strategy, plus cumulative cost tables, so profile
// potentials are evaluated from running loads.
struct LoadTracker {
  LoadTracker(const Arena& arena, const std::vector<std::vector<Path>>& sets)
      : arena(arena), loads(arena.arc_count(), 0) {
    for (const auto& set : sets) {
      auto& arcs = strategy_arcs.emplace_back();
      for (const Path& p : set) arcs.push_back(*path_arcs(arena, p));
    }
    cumulative.resize(arena.arc_count());
    for (ArcId e = 0; e < arena.arc_count(); ++e) {
      auto& c = cumulative[e];
      const std::size_t n = arena.player_count();
      c.resize(n + 1);
      for (std::size_t h = 1; h <= n; ++h) c[h] = c[h - 1] + arena.arc(e).cost.at(h);
    }
  }

  void add(std::size_t player, std::size_t choice) {
    for (ArcId e : strategy_arcs[player][choice]) ++loads[e];
  }
  void remove(std::size_t player, std::size_t choice) {
    for (ArcId e : strategy_arcs[player][choice]) --loads[e];
  }
  [[nodiscard]] Rational potential() const {
    Rational phi;
    for (ArcId e = 0; e < loads.size(); ++e) {
      if (loads[e]) phi += cumulative[e][loads[e]];
    }
    return phi;
  }

  const Arena& arena;
  std::vector<std::vector<std::vector<ArcId>>> strategy_arcs;
  std::vector<std::vector<Rational>> cumulative;
  std::vector<std::uint32_t> loads;
};

StrategyProfile profile_from_choice(const Arena& arena, const std::vector<std::vector<Path>>& sets,
                                    const std::vector<std::size_t>& choice) {
  std::vector<Path> paths;
  paths.reserve(choice.size());
  for (std::size_t i = 0; i < choice.size(); ++i) paths.push_back(sets[i][choice[i]]);
  return StrategyProfile::create(arena, std::move(paths));
}

}  // namespace

std::vector<Path> enumerate_paths(const Arena& arena, VertexId from, VertexId to, std::size_t cap) {
  if (from >= arena.vertex_count() || to >= arena.vertex_count()) throw ArgumentError("vertex id out of range");
  std::vector<Path> out;
  Path current{from};
  std::vector<bool> on_path(arena.vertex_count(), false);
  on_path[from] = true;
  collect_paths(arena, to, cap, current, on_path, out);
  return out;
}

BruteMin brute_min_potential(const Arena& arena, const OracleOptions& options) {
  const auto sets = strategy_sets(arena, options);
  std::uint64_t total = 1;
  for (const auto& set : sets) {
    if (set.empty()) throw ValidationError("a terminal is unreachable");
    if (total > options.profile_cap / set.size()) {
      throw CapacityError("profile space exceeds " + std::to_string(options.profile_cap));
    }
    total *= set.size();
  }

  const std::size_t n = sets.size();
  LoadTracker tracker(arena, sets);
  std::vector<std::size_t> choice(n, 0);
  for (std::size_t i = 0; i < n; ++i) tracker.add(i, 0);
  std::optional<Rational> best;
  std::vector<std::size_t> best_choice;
  while (true) {
    Rational phi = tracker.potential();
    if (!best || phi < *best) {
      best = std::move(phi);
      best_choice = choice;
    }
    // Odometer with the last player fastest: lexicographic profile order.
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      tracker.remove(i, choice[i]);
      if (++choice[i] < sets[i].size()) {
        tracker.add(i, choice[i]);
        advanced = true;
        break;
      }
      choice[i] = 0;
      tracker.add(i, 0);
    }
    if (!advanced) break;
  }
  return BruteMin{std::move(*best), profile_from_choice(arena, sets, best_choice)};
}

std::optional<StrategyProfile> brute_improving_move(const Arena& arena, const StrategyProfile& s, std::size_t k,
                                                    const OracleOptions& options) {
  const std::size_t n = s.player_count();
  if (k > n) throw ArgumentError("k = " + std::to_string(k) + " exceeds the number of players " + std::to_string(n));
  if (k == 0) return std::nullopt;
  const auto sets = strategy_sets(arena, options);

  // ways[j]: profiles with exactly j changed players.
  std::vector<long double> ways(k + 1, 0);
  ways[0] = 1;
  for (const auto& set : sets) {
    for (std::size_t j = k; j > 0; --j) ways[j] += ways[j - 1] * static_cast<long double>(set.size() - 1);
  }
  long double neighbourhood = 0;
  for (auto w : ways) neighbourhood += w;
  if (neighbourhood > static_cast<long double>(options.profile_cap)) {
    throw CapacityError("k-exchange neighbourhood exceeds " + std::to_string(options.profile_cap) + " profiles");
  }

  std::vector<std::size_t> current(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < sets[i].size(); ++c) {
      if (sets[i][c] == s.path(i)) current[i] = c;
    }
  }
  LoadTracker tracker(arena, sets);
  const Rational phi = potential(arena, s);
  std::optional<Rational> best;
  std::vector<std::size_t> best_choice;
  std::vector<std::size_t> choice(n);

  auto visit = [&](auto&& self, std::size_t player, std::size_t changed) -> void {
    if (player == n) {
      Rational value = tracker.potential();
      if (value < phi && (!best || value < *best)) {
        best = std::move(value);
        best_choice = choice;
      }
      return;
    }
    choice[player] = current[player];
    tracker.add(player, current[player]);
    self(self, player + 1, changed);
    tracker.remove(player, current[player]);
    if (changed == k) return;
    for (std::size_t c = 0; c < sets[player].size(); ++c) {
      if (c == current[player]) continue;
      choice[player] = c;
      tracker.add(player, c);
      self(self, player + 1, changed + 1);
      tracker.remove(player, c);
    }
  };
  visit(visit, 0, 0);
  if (!best) return std::nullopt;
  return profile_from_choice(arena, sets, best_choice);
}

Rational brute_min_tree_potential(const Arena& arena, const OracleOptions& options) {
  const std::size_t arcs = arena.arc_count();
  if (arcs > options.arc_cap) {
    throw CapacityError("out-tree scan limited to " + std::to_string(options.arc_cap) + " arcs");
  }
  const std::size_t nv = arena.vertex_count();
  const std::size_t n = arena.player_count();
  std::optional<Rational> best;
  std::vector<int> parent_arc(nv);
  std::vector<bool> touched(nv);
  std::vector<bool> seen(nv);
  std::vector<std::uint32_t> loads(arcs);

  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << arcs); ++subset) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::fill(touched.begin(), touched.end(), false);
    touched[arena.root()] = true;
    bool ok = true;
    std::size_t used = 0;
    for (ArcId e = 0; e < arcs && ok; ++e) {
      if (!(subset >> e & 1)) continue;
      const Arc& a = arena.arc(e);
      ++used;
      touched[a.from] = touched[a.to] = true;
      if (a.to == arena.root() || parent_arc[a.to] != -1) ok = false;
      parent_arc[a.to] = static_cast<int>(e);
    }
    if (!ok) continue;
    // Every touched non-root vertex has exactly one parent; require all of
    // them to hang off the root (no detached cycles).
    std::fill(seen.begin(), seen.end(), false);
    std::vector<VertexId> stack{arena.root()};
    seen[arena.root()] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (ArcId e : arena.out_arcs(u)) {
        if (!(subset >> e & 1)) continue;
        const VertexId v = arena.arc(e).to;
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    std::size_t touched_count = 0;
    for (bool t : touched) touched_count += t ? 1 : 0;
    if (reached != touched_count || used + 1 != touched_count) continue;
    for (std::size_t i = 0; i < n && ok; ++i) ok = seen[arena.terminal(i)];
    if (!ok) continue;

    std::fill(loads.begin(), loads.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (VertexId v = arena.terminal(i); v != arena.root();) {
        const auto e = static_cast<ArcId>(parent_arc[v]);
        ++loads[e];
        v = arena.arc(e).from;
      }
    }
    Rational phi;
    for (ArcId e = 0; e < arcs; ++e) {
      if (loads[e]) phi += arena.arc(e).cost.cumulative(loads[e]);
    }
    if (!best || phi < *best) best = std::move(phi);
  }
  if (!best) throw ValidationError("no out-tree reaches every terminal");
  return *best;
}

}  // namespace mcgame
