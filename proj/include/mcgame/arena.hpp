#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mcgame/rational.hpp"

namespace mcgame {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;
using Path = std::vector<VertexId>;

// c_e(h) = base / h.
struct FairShare {
  Rational base;
};

// c_e(h) = values[h - 1]; must cover every load the game can produce.
struct CostTable {
  std::vector<Rational> values;
};

class CostFunction {
 public:
  CostFunction(FairShare f);  // NOLINT(google-explicit-constructor)
  CostFunction(CostTable t);  // NOLINT(google-explicit-constructor)

  static CostFunction fair_share(Rational base) { return CostFunction(FairShare{std::move(base)}); }
  static CostFunction table(std::vector<Rational> values) { return CostFunction(CostTable{std::move(values)}); }

  // Per-user cost when h >= 1 users share the arc.
  [[nodiscard]] Rational at(std::size_t h) const;
  // sum_{j=1..h} at(j); zero for h == 0.
  [[nodiscard]] Rational cumulative(std::size_t h) const;
  // Largest load the function is defined for; nullopt when unbounded.
  [[nodiscard]] std::optional<std::size_t> domain_limit() const;

  [[nodiscard]] bool is_fair_share() const { return std::holds_alternative<FairShare>(repr_); }
  [[nodiscard]] const FairShare* as_fair_share() const { return std::get_if<FairShare>(&repr_); }
  [[nodiscard]] const CostTable* as_table() const { return std::get_if<CostTable>(&repr_); }

  friend bool operator==(const CostFunction&, const CostFunction&);

 private:
  std::variant<FairShare, CostTable> repr_;
};

struct Arc {
  VertexId from;
  VertexId to;
  CostFunction cost;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct ArcSpec {
  std::string from;
  std::string to;
  CostFunction cost;
};

// Directed network with a root, per-player terminals and non-increasing arc costs.
// Arcs are kept sorted by (from, to) vertex index; vertex indices follow the
// order in which vertex names were supplied.
class Arena {
 public:
  // Validates every model invariant; throws ValidationError naming the offender.
  static Arena create(std::vector<std::string> vertices, const std::string& root, std::vector<ArcSpec> arcs,
                      const std::vector<std::string>& players);

  [[nodiscard]] std::size_t vertex_count() const { return names_.size(); }
  [[nodiscard]] std::size_t arc_count() const { return arcs_.size(); }
  [[nodiscard]] std::size_t player_count() const { return terminals_.size(); }

  [[nodiscard]] const std::vector<std::string>& vertex_names() const { return names_; }
  [[nodiscard]] const std::string& name(VertexId v) const { return names_.at(v); }
  [[nodiscard]] std::optional<VertexId> find_vertex(const std::string& name) const;
  [[nodiscard]] VertexId root() const { return root_; }
  [[nodiscard]] VertexId terminal(std::size_t player) const { return terminals_.at(player); }
  [[nodiscard]] const std::vector<VertexId>& terminals() const { return terminals_; }

  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  [[nodiscard]] const Arc& arc(ArcId e) const { return arcs_.at(e); }
  // Outgoing arcs of v in ascending head order.
  [[nodiscard]] std::span<const ArcId> out_arcs(VertexId v) const;
  [[nodiscard]] std::optional<ArcId> find_arc(VertexId from, VertexId to) const;

  // Vertices reachable from `from`, as a membership vector.
  [[nodiscard]] std::vector<bool> reachable_from(VertexId from) const;

  friend bool operator==(const Arena& a, const Arena& b) {
    return a.names_ == b.names_ && a.root_ == b.root_ && a.terminals_ == b.terminals_ && a.arcs_ == b.arcs_;
  }

 private:
  Arena() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  VertexId root_ = 0;
  std::vector<VertexId> terminals_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_begin_;  // CSR offsets into out_ids_
  std::vector<ArcId> out_ids_;
};

// One simple root-to-terminal path per player, with the derived arc loads.
class StrategyProfile {
 public:
  // Throws ValidationError naming the first offending player.
  static StrategyProfile create(const Arena& arena, std::vector<Path> paths);

  [[nodiscard]] std::size_t player_count() const { return paths_.size(); }
  [[nodiscard]] const std::vector<Path>& paths() const { return paths_; }
  [[nodiscard]] const Path& path(std::size_t player) const { return paths_.at(player); }
  // Arcs of each player's path, in traversal order.
  [[nodiscard]] const std::vector<ArcId>& arcs_of(std::size_t player) const { return arc_paths_.at(player); }
  // n_e(s), indexed by ArcId.
  [[nodiscard]] const std::vector<std::uint32_t>& loads() const { return loads_; }

  // Copy with one player's path replaced (revalidated).
  [[nodiscard]] StrategyProfile with_path(const Arena& arena, std::size_t player, Path path) const;

  friend bool operator==(const StrategyProfile& a, const StrategyProfile& b) { return a.paths_ == b.paths_; }

 private:
  StrategyProfile() = default;

  std::vector<Path> paths_;
  std::vector<std::vector<ArcId>> arc_paths_;
  std::vector<std::uint32_t> loads_;
};

// Arc sequence of a path, or nullopt if some consecutive pair is not an arc or a vertex repeats.
std::optional<std::vector<ArcId>> path_arcs(const Arena& arena, const Path& path);

std::string format_path(const Arena& arena, const Path& path);

}  // namespace mcgame
