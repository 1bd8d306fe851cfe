#include "mcgame/game.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

#include "mcgame/error.hpp"

namespace mcgame {

Rational harmonic(std::size_t h) {
  Rational sum;
  for (std::size_t j = 1; j <= h; ++j) sum += Rational(1, static_cast<std::int64_t>(j));
  return sum;
}

Rational cumulative_cost(const Arena& arena, ArcId e, std::size_t h) {
  if (e >= arena.arc_count()) throw ArgumentError("arc id " + std::to_string(e) + " out of range");
  return arena.arc(e).cost.cumulative(h);
}

Rational potential(const Arena& arena, const StrategyProfile& s) {
  Rational phi;
  const auto& loads = s.loads();
  for (ArcId e = 0; e < loads.size(); ++e) {
    if (loads[e] > 0) phi += arena.arc(e).cost.cumulative(loads[e]);
  }
  return phi;
}

Rational player_cost(const Arena& arena, const StrategyProfile& s, std::size_t player) {
  if (player >= s.player_count()) throw ArgumentError("player index " + std::to_string(player) + " out of range");
  Rational cost;
  for (ArcId e : s.arcs_of(player)) cost += arena.arc(e).cost.at(s.loads()[e]);
  return cost;
}

Rational total_cost(const Arena& arena, const StrategyProfile& s) {
  Rational sum;
  for (std::size_t i = 0; i < s.player_count(); ++i) sum += player_cost(arena, s, i);
  return sum;
}

std::size_t hamming_distance(const StrategyProfile& a, const StrategyProfile& b) {
  if (a.player_count() != b.player_count()) throw ArgumentError("profiles have different player counts");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.player_count(); ++i) d += a.path(i) != b.path(i) ? 1 : 0;
  return d;
}

namespace {

struct Distance {
  Rational cost;
  std::size_t hops = 0;

  friend bool operator==(const Distance&, const Distance&) = default;
  friend auto operator<=>(const Distance& a, const Distance& b) {
    if (auto c = a.cost <=> b.cost; c != 0) return c;
    return a.hops <=> b.hops;
  }
};

}  // namespace

std::optional<PathChoice> cheapest_path(const Arena& arena, VertexId from, VertexId to,
                                        const std::vector<Rational>& arc_weights) {
  const std::size_t n = arena.vertex_count();
  // Reverse adjacency so distances are measured *to* the target; the forward
  // greedy walk along tight arcs then yields the lexicographically smallest path.
  std::vector<std::vector<ArcId>> in_arcs(n);
  for (ArcId e = 0; e < arena.arc_count(); ++e) in_arcs[arena.arc(e).to].push_back(e);

  std::vector<std::optional<Distance>> dist(n);
  using Item = std::pair<Distance, VertexId>;
  auto greater = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(greater)> queue(greater);
  dist[to] = Distance{};
  queue.emplace(Distance{}, to);
  std::vector<bool> done(n, false);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    for (ArcId e : in_arcs[v]) {
      const VertexId u = arena.arc(e).from;
      Distance cand{d.cost + arc_weights[e], d.hops + 1};
      if (!dist[u] || cand < *dist[u]) {
        dist[u] = cand;
        queue.emplace(std::move(cand), u);
      }
    }
  }
  if (!dist[from]) return std::nullopt;

  PathChoice out{{from}, dist[from]->cost};
  VertexId u = from;
  while (u != to) {
    const Distance& du = *dist[u];
    std::optional<VertexId> next;
    for (ArcId e : arena.out_arcs(u)) {
      const VertexId v = arena.arc(e).to;
      if (dist[v] && dist[v]->hops + 1 == du.hops && dist[v]->cost + arc_weights[e] == du.cost) {
        next = v;
        break;
      }
    }
    if (!next) throw std::logic_error("cheapest_path: no tight arc out of " + arena.name(u));
    u = *next;
    out.path.push_back(u);
  }
  return out;
}

PathChoice best_response(const Arena& arena, const StrategyProfile& s, std::size_t player) {
  if (player >= s.player_count()) throw ArgumentError("player index " + std::to_string(player) + " out of range");
  std::vector<std::uint32_t> others = s.loads();
  for (ArcId e : s.arcs_of(player)) --others[e];
  std::vector<Rational> weights;
  weights.reserve(arena.arc_count());
  for (ArcId e = 0; e < arena.arc_count(); ++e) weights.push_back(arena.arc(e).cost.at(others[e] + 1));
  auto choice = cheapest_path(arena, arena.root(), arena.terminal(player), weights);
  if (!choice) throw ValidationError("player " + std::to_string(player) + ": terminal unreachable");
  return std::move(*choice);
}

NashCheck check_nash(const Arena& arena, const StrategyProfile& s) {
  for (std::size_t i = 0; i < s.player_count(); ++i) {
    auto br = best_response(arena, s, i);
    if (br.cost < player_cost(arena, s, i)) return NashCheck{false, i, std::move(br)};
  }
  return NashCheck{};
}

}  // namespace mcgame
