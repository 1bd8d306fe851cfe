#include "mcgame/random_instances.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "mcgame/error.hpp"

namespace mcgame {

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

Arena random_arena(std::mt19937_64& rng, const RandomArenaParams& params) {
  if (params.min_vertices < 1 || params.min_vertices > params.max_vertices) {
    throw ArgumentError("invalid vertex range");
  }
  const std::size_t nv = uniform_int(rng, params.min_vertices, params.max_vertices);
  if (params.max_arcs + 1 < nv) throw ArgumentError("max_arcs too small to connect every vertex");
  const std::size_t players = uniform_int(rng, params.min_players, params.max_players);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));

  auto random_cost = [&]() -> CostFunction {
    if (uniform_int(rng, 0, 99) < params.table_percent) {
      std::vector<Rational> values;
      auto current = static_cast<std::int64_t>(uniform_int(rng, 0, static_cast<std::uint64_t>(params.max_base)));
      for (std::size_t h = 0; h < std::max<std::size_t>(players, 1); ++h) {
        values.emplace_back(current);
        current -= static_cast<std::int64_t>(uniform_int(rng, 0, static_cast<std::uint64_t>(current)));
      }
      return CostFunction::table(std::move(values));
    }
    const auto base = static_cast<std::int64_t>(uniform_int(rng, 0, 2 * static_cast<std::uint64_t>(params.max_base)));
    return CostFunction::fair_share(Rational(base, 2));
  };

  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<ArcSpec> arcs;
  for (std::size_t v = 1; v < nv; ++v) {
    const std::size_t parent = uniform_int(rng, 0, v - 1);
    used.emplace(parent, v);
    arcs.push_back({names[parent], names[v], random_cost()});
  }
  const std::size_t possible = nv * (nv - 1);
  const std::size_t fewest = std::min(std::max(params.min_arcs, nv - 1), params.max_arcs);
  const std::size_t target = std::min(possible, static_cast<std::size_t>(uniform_int(rng, fewest, params.max_arcs)));
  while (arcs.size() < target) {
    const std::size_t a = uniform_int(rng, 0, nv - 1);
    const std::size_t b = uniform_int(rng, 0, nv - 1);
    if (a == b || !used.emplace(a, b).second) continue;
    arcs.push_back({names[a], names[b], random_cost()});
  }

  std::vector<std::string> terminals;
  for (std::size_t i = 0; i < players; ++i) terminals.push_back(names[uniform_int(rng, 0, nv - 1)]);
  return Arena::create(names, names[0], std::move(arcs), terminals);
}

StrategyProfile random_profile(const Arena& arena, std::mt19937_64& rng) {
  std::vector<Path> paths;
  for (std::size_t i = 0; i < arena.player_count(); ++i) {
    const VertexId target = arena.terminal(i);
    Path current{arena.root()};
    std::vector<bool> on_path(arena.vertex_count(), false);
    on_path[arena.root()] = true;
    // Randomized depth-first search; succeeds because the terminal is reachable.
    auto dfs = [&](auto&& self) -> bool {
      const VertexId u = current.back();
      if (u == target) return true;
      auto out = arena.out_arcs(u);
      std::vector<ArcId> order(out.begin(), out.end());
      for (std::size_t j = order.size(); j > 1; --j) std::swap(order[j - 1], order[uniform_int(rng, 0, j - 1)]);
      for (ArcId e : order) {
        const VertexId v = arena.arc(e).to;
        if (on_path[v]) continue;
        on_path[v] = true;
        current.push_back(v);
        if (self(self)) return true;
        current.pop_back();
        on_path[v] = false;
      }
      return false;
    };
    dfs(dfs);
    paths.push_back(std::move(current));
  }
  return StrategyProfile::create(arena, std::move(paths));
}

}  // namespace mcgame
