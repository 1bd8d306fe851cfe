#include "mcgame/arena.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "mcgame/error.hpp"

namespace mcgame {

CostFunction::CostFunction(FairShare f) : repr_(std::move(f)) {}
CostFunction::CostFunction(CostTable t) : repr_(std::move(t)) {}

Rational CostFunction::at(std::size_t h) const {
  if (h == 0) throw CostDomainError("cost function evaluated at load 0");
  if (const auto* f = as_fair_share()) return f->base / Rational(static_cast<std::int64_t>(h));
  const auto& values = std::get<CostTable>(repr_).values;
  if (h > values.size()) {
    throw CostDomainError("load " + std::to_string(h) + " exceeds cost table length " + std::to_string(values.size()));
  }
  return values[h - 1];
}

Rational CostFunction::cumulative(std::size_t h) const {
  Rational sum;
  for (std::size_t j = 1; j <= h; ++j) sum += at(j);
  return sum;
}

std::optional<std::size_t> CostFunction::domain_limit() const {
  if (const auto* t = as_table()) return t->values.size();
  return std::nullopt;
}

bool operator==(const CostFunction& a, const CostFunction& b) {
  if (a.is_fair_share() != b.is_fair_share()) return false;
  if (const auto* f = a.as_fair_share()) return f->base == b.as_fair_share()->base;
  return a.as_table()->values == b.as_table()->values;
}

namespace {

void validate_cost(const CostFunction& cost, std::size_t players, const std::string& where) {
  if (const auto* f = cost.as_fair_share()) {
    if (f->base.sign() < 0) throw ValidationError(where + ": negative fair-share base " + f->base.to_string());
    return;
  }
  const auto& values = cost.as_table()->values;
  if (values.empty()) throw ValidationError(where + ": empty cost table");
  if (values.size() < players) {
    throw ValidationError(where + ": cost table has " + std::to_string(values.size()) + " values but there are " +
                          std::to_string(players) + " players");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() < 0) throw ValidationError(where + ": negative cost " + values[i].to_string());
    if (i + 1 < values.size() && values[i] < values[i + 1]) {
      throw ValidationError(where + ": cost table increases at load " + std::to_string(i + 2));
    }
  }
}

}  // namespace

Arena Arena::create(std::vector<std::string> vertices, const std::string& root, std::vector<ArcSpec> arcs,
                    const std::vector<std::string>& players) {
  Arena a;
  a.names_ = std::move(vertices);
  for (std::size_t i = 0; i < a.names_.size(); ++i) {
    if (!a.index_.emplace(a.names_[i], static_cast<VertexId>(i)).second) {
      throw ValidationError("duplicate vertex '" + a.names_[i] + "'");
    }
  }
  const auto lookup = [&](const std::string& name, const std::string& what) {
    auto it = a.index_.find(name);
    if (it == a.index_.end()) throw ValidationError(what + " refers to unknown vertex '" + name + "'");
    return it->second;
  };
  a.root_ = lookup(root, "root");

  a.terminals_.reserve(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    a.terminals_.push_back(lookup(players[i], "player " + std::to_string(i)));
  }

  a.arcs_.reserve(arcs.size());
  for (auto& spec : arcs) {
    const std::string where = "arc (" + spec.from + "," + spec.to + ")";
    const VertexId from = lookup(spec.from, where);
    const VertexId to = lookup(spec.to, where);
    if (from == to) throw ValidationError(where + ": self-loop");
    validate_cost(spec.cost, players.size(), where);
    a.arcs_.push_back(Arc{from, to, std::move(spec.cost)});
  }
  std::sort(a.arcs_.begin(), a.arcs_.end(),
            [](const Arc& x, const Arc& y) { return std::pair(x.from, x.to) < std::pair(y.from, y.to); });
  for (std::size_t i = 1; i < a.arcs_.size(); ++i) {
    if (a.arcs_[i - 1].from == a.arcs_[i].from && a.arcs_[i - 1].to == a.arcs_[i].to) {
      throw ValidationError("duplicate arc (" + a.names_[a.arcs_[i].from] + "," + a.names_[a.arcs_[i].to] + ")");
    }
  }

  a.out_begin_.assign(a.names_.size() + 1, 0);
  for (const auto& arc : a.arcs_) ++a.out_begin_[arc.from + 1];
  for (std::size_t v = 0; v < a.names_.size(); ++v) a.out_begin_[v + 1] += a.out_begin_[v];
  a.out_ids_.resize(a.arcs_.size());
  for (std::size_t e = 0; e < a.arcs_.size(); ++e) a.out_ids_[e] = static_cast<ArcId>(e);  // already grouped by tail

  const auto reach = a.reachable_from(a.root_);
  for (std::size_t i = 0; i < a.terminals_.size(); ++i) {
    if (!reach[a.terminals_[i]]) {
      throw ValidationError("player " + std::to_string(i) + ": terminal '" + a.names_[a.terminals_[i]] +
                            "' is unreachable from root");
    }
  }
  return a;
}

std::optional<VertexId> Arena::find_vertex(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const ArcId> Arena::out_arcs(VertexId v) const {
  return std::span<const ArcId>(out_ids_).subspan(out_begin_.at(v), out_begin_.at(v + 1) - out_begin_.at(v));
}

std::optional<ArcId> Arena::find_arc(VertexId from, VertexId to) const {
  if (from >= names_.size()) return std::nullopt;
  for (ArcId e : out_arcs(from)) {
    if (arcs_[e].to == to) return e;
  }
  return std::nullopt;
}

std::vector<bool> Arena::reachable_from(VertexId from) const {
  std::vector<bool> seen(names_.size(), false);
  std::queue<VertexId> queue;
  seen.at(from) = true;
  queue.push(from);
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop();
    for (ArcId e : out_arcs(u)) {
      if (!seen[arcs_[e].to]) {
        seen[arcs_[e].to] = true;
        queue.push(arcs_[e].to);
      }
    }
  }
  return seen;
}

std::optional<std::vector<ArcId>> path_arcs(const Arena& arena, const Path& path) {
  std::vector<ArcId> out;
  if (path.empty()) return out;
  std::vector<bool> seen(arena.vertex_count(), false);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= arena.vertex_count() || seen[path[i]]) return std::nullopt;
    seen[path[i]] = true;
    if (i > 0) {
      auto e = arena.find_arc(path[i - 1], path[i]);
      if (!e) return std::nullopt;
      out.push_back(*e);
    }
  }
  return out;
}

std::string format_path(const Arena& arena, const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += "->";
    out += arena.name(path[i]);
  }
  return out;
}

StrategyProfile StrategyProfile::create(const Arena& arena, std::vector<Path> paths) {
  if (paths.size() != arena.player_count()) {
    throw ValidationError("profile has " + std::to_string(paths.size()) + " paths but arena has " +
                          std::to_string(arena.player_count()) + " players");
  }
  StrategyProfile s;
  s.loads_.assign(arena.arc_count(), 0);
  s.arc_paths_.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    const std::string who = "player " + std::to_string(i);
    if (p.empty() || p.front() != arena.root()) throw ValidationError(who + ": path does not start at root");
    if (p.back() != arena.terminal(i)) throw ValidationError(who + ": path does not end at its terminal");
    auto arcs = path_arcs(arena, p);
    if (!arcs) throw ValidationError(who + ": not a simple path of the arena");
    for (ArcId e : *arcs) ++s.loads_[e];
    s.arc_paths_.push_back(std::move(*arcs));
  }
  s.paths_ = std::move(paths);
  return s;
}

StrategyProfile StrategyProfile::with_path(const Arena& arena, std::size_t player, Path path) const {
  auto paths = paths_;
  paths.at(player) = std::move(path);
  return create(arena, std::move(paths));
}

}  // namespace mcgame
