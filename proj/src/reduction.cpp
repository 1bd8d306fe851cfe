#include "mcgame/reduction.hpp"

#include <algorithm>
#include <set>

#include "mcgame/error.hpp"
#include "mcgame/game.hpp"

namespace mcgame {

namespace {

std::string player_vertex(const std::string& u, std::size_t colour) { return u + ":" + std::to_string(colour + 1); }
std::string bar_vertex(const std::string& u) { return "bar:" + u; }
std::string edge_vertex(const std::string& u, const std::string& v) { return "x:" + u + ":" + v; }

}  // namespace

ColouredGraph ColouredGraph::create(std::vector<std::vector<std::string>> classes,
                                    const std::vector<std::pair<std::string, std::string>>& edges) {
  ColouredGraph g;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (const auto& v : classes[i]) {
      if (v.empty() || v.find(':') != std::string::npos) {
        throw ValidationError("vertex name '" + v + "' must be nonempty and free of ':'");
      }
      if (!g.colour_.emplace(v, i).second) throw ValidationError("vertex '" + v + "' appears in two classes");
    }
  }
  g.classes_ = std::move(classes);
  std::set<std::pair<std::string, std::string>> seen;
  for (auto [a, b] : edges) {
    const auto ia = g.colour_.find(a);
    const auto ib = g.colour_.find(b);
    if (ia == g.colour_.end() || ib == g.colour_.end()) {
      throw ValidationError("edge {" + a + "," + b + "} has an unknown endpoint");
    }
    if (ia->second == ib->second) {
      throw ValidationError("edge {" + a + "," + b + "} lies inside class " + std::to_string(ia->second + 1));
    }
    if (ia->second > ib->second) std::swap(a, b);
    if (!seen.emplace(a, b).second) throw ValidationError("duplicate edge {" + a + "," + b + "}");
    g.edges_.emplace_back(a, b);
  }
  return g;
}

std::size_t ColouredGraph::class_of(const std::string& v) const {
  auto it = colour_.find(v);
  if (it == colour_.end()) throw ArgumentError("unknown vertex '" + v + "'");
  return it->second;
}

bool ColouredGraph::adjacent(const std::string& a, const std::string& b) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

const char* to_string(Label label) {
  switch (label) {
    case Label::Yes:
      return "yes";
    case Label::No:
      return "no";
    case Label::Unknown:
      return "unknown";
  }
  return "unknown";
}

ReductionParams reduction_params(std::size_t k) {
  if (k < 2) throw ArgumentError("the construction needs at least two colour classes");
  const auto kk = static_cast<std::int64_t>(k);
  ReductionParams p{k, k * (k - 1), Rational(kk * kk), Rational(kk - 1, kk * kk * kk * kk * kk), Rational{}};
  const Rational pairs(kk * (kk - 1) / 2);
  const Rational numerator = Rational(kk) * p.r_cost * harmonic(k - 1) - Rational(3, 2) * pairs - p.epsilon;
  p.w_cost = numerator / harmonic(p.radius);
  if (p.w_cost < Rational(1)) {
    throw ArgumentError("k = " + std::to_string(k) + " gives W = " + p.w_cost.to_string() + " < 1");
  }
  return p;
}

std::optional<std::vector<std::string>> clique_witness(const ColouredGraph& h, std::uint64_t cap) {
  const auto& classes = h.classes();
  long double space = 1;
  for (const auto& c : classes) space *= static_cast<long double>(c.size());
  if (space > static_cast<long double>(cap)) {
    throw CapacityError("clique scan space exceeds " + std::to_string(cap));
  }
  std::vector<std::string> chosen;
  auto extend = [&](auto&& self, std::size_t colour) -> bool {
    if (colour == classes.size()) return true;
    for (const auto& v : classes[colour]) {
      const bool fits = std::all_of(chosen.begin(), chosen.end(), [&](const auto& u) { return h.adjacent(u, v); });
      if (!fits) continue;
      chosen.push_back(v);
      if (self(self, colour + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return chosen;
}

GeneratedInstance generate(const ColouredGraph& h, const ReductionOptions& options) {
  const std::size_t k = h.class_count();
  ReductionParams params = reduction_params(k);

  std::vector<std::string> vertices{"r", "rp"};
  std::vector<ArcSpec> arcs{{"r", "rp", CostFunction::fair_share(params.w_cost)}};
  std::vector<std::string> players;
  std::vector<Path> initial_names;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& u : h.classes()[i]) {
      vertices.push_back(bar_vertex(u));
      arcs.push_back({"r", bar_vertex(u), CostFunction::fair_share(params.r_cost)});
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        vertices.push_back(player_vertex(u, j));
        arcs.push_back({bar_vertex(u), player_vertex(u, j), CostFunction::fair_share(Rational{})});
        players.push_back(player_vertex(u, j));
      }
    }
  }
  for (const auto& [u, v] : h.edges()) {
    const std::string x = edge_vertex(u, v);
    vertices.push_back(x);
    arcs.push_back({"rp", x, CostFunction::fair_share(Rational(1))});
    arcs.push_back({x, player_vertex(u, h.class_of(v)), CostFunction::fair_share(Rational{})});
    arcs.push_back({x, player_vertex(v, h.class_of(u)), CostFunction::fair_share(Rational{})});
  }

  Arena arena = Arena::create(vertices, "r", std::move(arcs), players);
  std::vector<Path> paths;
  paths.reserve(players.size());
  for (std::size_t p = 0; p < players.size(); ++p) {
    const VertexId t = arena.terminal(p);
    const std::string& name = arena.name(t);
    const std::string u = name.substr(0, name.rfind(':'));
    paths.push_back(Path{arena.root(), *arena.find_vertex(bar_vertex(u)), t});
  }
  StrategyProfile initial = StrategyProfile::create(arena, std::move(paths));

  GeneratedInstance out{std::move(arena), std::move(initial), std::move(params), Label::Unknown, std::nullopt};
  try {
    out.witness = clique_witness(h, options.clique_scan_cap);
    out.label = out.witness ? Label::Yes : (options.trust_no ? Label::No : Label::Unknown);
  } catch (const CapacityError&) {
    out.label = Label::Unknown;
  }
  return out;
}

StrategyProfile clique_to_profile(const ColouredGraph& h, const GeneratedInstance& instance,
                                  const std::vector<std::string>& clique) {
  const std::size_t k = h.class_count();
  if (clique.size() != k) throw ValidationError("clique must have exactly one vertex per class");
  std::vector<std::string> by_class(k);
  for (const auto& v : clique) {
    const std::size_t c = h.class_of(v);
    if (!by_class[c].empty()) throw ValidationError("two clique vertices in class " + std::to_string(c + 1));
    by_class[c] = v;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!h.adjacent(by_class[i], by_class[j])) {
        throw ValidationError("clique vertices " + by_class[i] + " and " + by_class[j] + " are not adjacent");
      }
    }
  }

  const Arena& arena = instance.arena;
  std::unordered_map<VertexId, std::size_t> player_at;
  for (std::size_t p = 0; p < arena.player_count(); ++p) player_at.emplace(arena.terminal(p), p);
  auto paths = instance.initial.paths();
  const VertexId rp = *arena.find_vertex("rp");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::string& u = by_class[i];
      const std::string& v = by_class[j];
      const VertexId x = *arena.find_vertex(edge_vertex(u, v));
      for (const std::string& target : {player_vertex(u, j), player_vertex(v, i)}) {
        const VertexId t = *arena.find_vertex(target);
        paths[player_at.at(t)] = Path{arena.root(), rp, x, t};
      }
    }
  }
  return StrategyProfile::create(arena, std::move(paths));
}

}  // namespace mcgame
