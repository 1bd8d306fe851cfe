#include "mcgame/exact_dp.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>
#include <variant>

#include "mcgame/error.hpp"
#include "mcgame/parallel.hpp"

namespace mcgame {

namespace {

constexpr std::size_t kMaskBits = 31;
constexpr ArcId kBase = ~ArcId{0};

__extension__ using Int128 = __int128;

struct Choice {
  ArcId arc = kBase;  // kBase: every player in X already sits at u
  PlayerSet sub = 0;  // players sent across arc
  std::uint32_t rest_budget = 0;
  std::uint32_t sub_budget = 0;
};

template <class V>
struct Breakpoint {
  std::uint32_t budget;
  V value;
  Choice choice;
};

template <class V>
using Cell = std::vector<Breakpoint<V>>;

// Non-negative only; callers check the range first.
Int128 to_int128(const mpz_class& z) {
  const mpz_class high = z >> 64;
  const mpz_class low = z - (high << 64);
  return (static_cast<Int128>(high.get_ui()) << 64) | static_cast<Int128>(low.get_ui());
}

mpz_class to_mpz(Int128 v) {
  mpz_class high(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  mpz_class low(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (high << 64) + low;
}

struct LayerContext {
  const Arena& arena;
  const std::vector<std::size_t>& players;
  const std::vector<PlayerSet>& reach;
  std::size_t budget;
  std::size_t vertex_count;
};

template <class V>
class Filler {
 public:
  Filler(const LayerContext& ctx, std::vector<std::vector<V>> sums, std::vector<Cell<V>>& cells)
      : ctx_(ctx), sums_(std::move(sums)), cells_(cells) {}

  void fill(PlayerSet x);

 private:
  struct Entry {
    std::optional<V> value;
    Choice choice;
  };

  static void offer(Entry& slot, V value, const Choice& choice) {
    if (!slot.value || value < *slot.value) {
      slot.value = std::move(value);
      slot.choice = choice;
    }
  }

  [[nodiscard]] const Cell<V>& cell(VertexId u, PlayerSet x) const {
    return cells_[std::size_t{x} * ctx_.vertex_count + u];
  }

  const LayerContext& ctx_;
  std::vector<std::vector<V>> sums_;
  std::vector<Cell<V>>& cells_;
};

template <class V>
void Filler<V>::fill(PlayerSet x) {
  const Arena& arena = ctx_.arena;
  const std::size_t budget = ctx_.budget;
  const std::size_t count = std::popcount(x);

  std::vector<VertexId> units;
  std::vector<int> unit_of(ctx_.vertex_count, -1);
  for (VertexId u = 0; u < ctx_.vertex_count; ++u) {
    if ((x & ~ctx_.reach[u]) == 0) {
      unit_of[u] = static_cast<int>(units.size());
      units.push_back(u);
    }
  }
  if (units.empty()) return;

  // split[i][m]: best value at exactly budget m from splitting off a proper, nonempty Y.
  std::vector<std::vector<Entry>> split(units.size(), std::vector<Entry>(budget + 1));

  for (std::size_t i = 0; i < units.size(); ++i) {
    const VertexId u = units[i];
    bool all_here = true;
    for (PlayerSet rest = x; rest; rest &= rest - 1) {
      all_here = all_here && arena.terminal(ctx_.players[std::countr_zero(rest)]) == u;
    }
    if (all_here) offer(split[i][0], V{}, Choice{});

    for (ArcId e : arena.out_arcs(u)) {
      const VertexId v = arena.arc(e).to;
      const PlayerSet via = x & ctx_.reach[v];
      // Ascending enumeration of the nonempty submasks of `via`.
      for (PlayerSet y = (0 - via) & via; y != 0; y = (y - via) & via) {
        if (y == x) continue;
        const Cell<V>& rest_cell = cell(u, x ^ y);
        const Cell<V>& sub_cell = cell(v, y);
        if (rest_cell.empty() || sub_cell.empty()) continue;
        const V& arc_cost = sums_[e][std::popcount(y)];
        for (const auto& a : rest_cell) {
          for (const auto& b : sub_cell) {
            const std::size_t m = std::size_t{a.budget} + b.budget + 1;
            if (m > budget) break;
            offer(split[i][m], a.value + b.value + arc_cost, Choice{e, y, a.budget, b.budget});
          }
        }
      }
    }
  }

  // Y == X: every player of X crosses the same first arc. This is a
  // hop-bounded shortest path over the units, solved layer by layer in m.
  std::vector<Entry> prev(units.size());
  std::vector<Entry> next(units.size());
  std::vector<Cell<V>> result(units.size());
  for (std::size_t m = 0; m <= budget; ++m) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      Entry best = m > 0 ? prev[i] : Entry{};
      const bool had = best.value.has_value();
      const std::optional<V> before = best.value;
      if (split[i][m].value) offer(best, *split[i][m].value, split[i][m].choice);
      if (m > 0) {
        for (ArcId e : arena.out_arcs(units[i])) {
          const int j = unit_of[arena.arc(e).to];
          if (j < 0 || !prev[j].value) continue;
          offer(best, *prev[j].value + sums_[e][count], Choice{e, x, 0, static_cast<std::uint32_t>(m - 1)});
        }
      }
      if (best.value && (!had || *best.value < *before)) {
        result[i].push_back(Breakpoint<V>{static_cast<std::uint32_t>(m), *best.value, best.choice});
      }
      next[i] = std::move(best);
    }
    std::swap(prev, next);
  }

  for (std::size_t i = 0; i < units.size(); ++i) {
    cells_[std::size_t{x} * ctx_.vertex_count + units[i]] = std::move(result[i]);
  }
}

template <class V>
const Breakpoint<V>* find_breakpoint(const Cell<V>& c, std::size_t m) {
  auto it = std::upper_bound(c.begin(), c.end(), m,
                             [](std::size_t budget, const Breakpoint<V>& bp) { return budget < bp.budget; });
  if (it == c.begin()) return nullptr;
  return &*std::prev(it);
}

}  // namespace

struct PotentialTable::Storage {
  mpz_class scale;  // integer cells hold value * scale
  std::variant<std::vector<Cell<Int128>>, std::vector<Cell<Rational>>> cells;

  struct Found {
    std::uint32_t budget;
    Choice choice;
  };

  [[nodiscard]] std::optional<Found> find(std::size_t index, std::size_t m) const {
    return std::visit(
        [&](const auto& all) -> std::optional<Found> {
          const auto* bp = find_breakpoint(all[index], m);
          if (!bp) return std::nullopt;
          return Found{bp->budget, bp->choice};
        },
        cells);
  }

  [[nodiscard]] std::optional<Rational> value(std::size_t index, std::size_t m) const {
    if (const auto* fast = std::get_if<0>(&cells)) {
      const auto* bp = find_breakpoint((*fast)[index], m);
      if (!bp) return std::nullopt;
      return Rational(to_mpz(bp->value), scale);
    }
    const auto* bp = find_breakpoint(std::get<1>(cells)[index], m);
    if (!bp) return std::nullopt;
    return bp->value;
  }
};

PotentialTable::PotentialTable(const Arena& arena, std::vector<std::size_t> players, CostShift shift,
                               std::size_t budget, const DpOptions& options)
    : arena_(&arena),
      players_(std::move(players)),
      shift_(std::move(shift)),
      budget_(budget),
      vertex_count_(arena.vertex_count()) {
  const std::size_t slots = players_.size();
  if (slots > options.max_players || slots > kMaskBits) {
    throw CapacityError("subgame has " + std::to_string(slots) + " players; the exact solver is limited to " +
                        std::to_string(std::min(options.max_players, kMaskBits)));
  }
  if (shift_.size() != arena.arc_count()) throw ArgumentError("cost shift does not match the arena's arcs");
  for (std::size_t p : players_) {
    if (p >= arena.player_count()) throw ArgumentError("player index " + std::to_string(p) + " out of range");
  }
  budget_ = std::min<std::size_t>(budget_, UINT32_MAX - 1);

  arc_sums_.resize(arena.arc_count());
  for (ArcId e = 0; e < arena.arc_count(); ++e) {
    const auto& cost = arena.arc(e).cost;
    const std::size_t base = shift_[e];
    if (auto limit = cost.domain_limit(); limit && base + slots > *limit) {
      throw CostDomainError("arc (" + arena.name(arena.arc(e).from) + "," + arena.name(arena.arc(e).to) +
                            "): background load " + std::to_string(base) + " plus " + std::to_string(slots) +
                            " players exceeds cost table length " + std::to_string(*limit));
    }
    auto& sums = arc_sums_[e];
    sums.resize(slots + 1);
    for (std::size_t h = 1; h <= slots; ++h) sums[h] = sums[h - 1] + cost.at(base + h);
  }

  // reach_[u]: slots whose terminal u can reach (necessary for finiteness).
  reach_.assign(vertex_count_, 0);
  std::vector<std::vector<VertexId>> in_nbrs(vertex_count_);
  for (const Arc& a : arena.arcs()) in_nbrs[a.to].push_back(a.from);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const PlayerSet bit = PlayerSet{1} << slot;
    std::vector<VertexId> stack{arena.terminal(players_[slot])};
    reach_[stack.back()] |= bit;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : in_nbrs[v]) {
        if (!(reach_[u] & bit)) {
          reach_[u] |= bit;
          stack.push_back(u);
        }
      }
    }
  }

  // A table value is a sum of at most `budget` arc terms, each bounded by the
  // largest full-load sum; keep that (and one more addition) below 2^120.
  auto storage = std::make_shared<Storage>();
  storage->scale = 1;
  for (const auto& sums : arc_sums_) {
    for (const Rational& r : sums) storage->scale = lcm(storage->scale, r.denominator());
  }
  mpz_class largest = 0;
  auto scaled = [&](const Rational& r) -> mpz_class { return r.numerator() * (storage->scale / r.denominator()); };
  for (const auto& sums : arc_sums_) largest = std::max(largest, scaled(sums.back()));
  const bool fits = largest * (budget_ + 2) < (mpz_class(1) << 120);

  const std::size_t subsets = std::size_t{1} << slots;
  const LayerContext ctx{arena, players_, reach_, budget_, vertex_count_};
  auto run = [&](auto& cells, auto sums) {
    using V = std::decay_t<decltype(sums[0][0])>;
    cells.resize(subsets * vertex_count_);
    for (VertexId u = 0; u < vertex_count_; ++u) cells[u].push_back(Breakpoint<V>{0, V{}, Choice{}});
    Filler<V> filler(ctx, std::move(sums), cells);
    // Every proper subset of X has smaller popcount, so one popcount layer can
    // be filled concurrently once the previous layers are complete.
    std::vector<std::vector<PlayerSet>> by_size(slots + 1);
    for (std::size_t x = 1; x < subsets; ++x) by_size[std::popcount(x)].push_back(static_cast<PlayerSet>(x));
    for (std::size_t size = 1; size <= slots; ++size) {
      const auto& layer = by_size[size];
      parallel_for(layer.size(), options.workers, [&](std::size_t i) { filler.fill(layer[i]); });
    }
  };
  if (fits) {
    std::vector<std::vector<Int128>> sums(arc_sums_.size());
    for (std::size_t e = 0; e < arc_sums_.size(); ++e) {
      for (const Rational& r : arc_sums_[e]) sums[e].push_back(to_int128(scaled(r)));
    }
    auto& cells = storage->cells.emplace<0>();
    run(cells, std::move(sums));
  } else {
    auto& cells = storage->cells.emplace<1>();
    run(cells, arc_sums_);
  }
  storage_ = std::move(storage);
}

PlayerSet PotentialTable::all_players() const {
  return players_.empty() ? 0 : static_cast<PlayerSet>((std::uint64_t{1} << players_.size()) - 1);
}

const Rational& PotentialTable::shifted_cumulative(ArcId e, std::size_t count) const {
  return arc_sums_.at(e).at(count);
}

std::optional<Rational> PotentialTable::value(VertexId u, PlayerSet x, std::size_t m) const {
  if (u >= vertex_count_) throw ArgumentError("vertex id out of range");
  if ((x & ~all_players()) != 0) throw ArgumentError("player set has bits outside the subgame");
  if (m > budget_) throw ArgumentError("budget " + std::to_string(m) + " exceeds table budget");
  return storage_->value(std::size_t{x} * vertex_count_ + u, m);
}

std::vector<Path> PotentialTable::reconstruct(VertexId u, PlayerSet x, std::size_t m) const {
  if (!value(u, x, m)) throw ArgumentError("cannot reconstruct an infeasible cell");
  std::vector<Path> out(players_.size());
  reconstruct_into(u, x, m, out);
  return out;
}

void PotentialTable::reconstruct_into(VertexId u, PlayerSet x, std::size_t m, std::vector<Path>& out) const {
  if (x == 0) return;
  const auto found = storage_->find(std::size_t{x} * vertex_count_ + u, m);
  if (!found) throw std::logic_error("reconstruction reached an infeasible cell");
  const Choice& c = found->choice;
  if (c.arc == kBase) {
    for (PlayerSet rest = x; rest; rest &= rest - 1) out[std::countr_zero(rest)] = Path{u};
    return;
  }
  reconstruct_into(u, x ^ c.sub, c.rest_budget, out);
  const VertexId v = arena_->arc(c.arc).to;
  std::vector<Path> below(players_.size());
  reconstruct_into(v, c.sub, c.sub_budget, below);
  for (PlayerSet rest = c.sub; rest; rest &= rest - 1) {
    const int slot = std::countr_zero(rest);
    Path& tail = below[slot];
    auto hit = std::find(tail.begin(), tail.end(), u);
    if (hit != tail.end()) {
      // The sub-path already passes through u: keep only its suffix from u.
      out[slot] = Path(hit, tail.end());
    } else {
      Path p;
      p.reserve(tail.size() + 1);
      p.push_back(u);
      p.insert(p.end(), tail.begin(), tail.end());
      out[slot] = std::move(p);
    }
  }
}

Rational shifted_potential(const Arena& arena, const std::vector<Path>& paths, const CostShift& shift) {
  std::vector<std::uint32_t> loads(arena.arc_count(), 0);
  for (const Path& p : paths) {
    auto arcs = path_arcs(arena, p);
    if (!arcs) throw ValidationError("not a simple path: " + format_path(arena, p));
    for (ArcId e : *arcs) ++loads[e];
  }
  Rational phi;
  for (ArcId e = 0; e < arena.arc_count(); ++e) {
    if (loads[e] == 0) continue;
    const auto& cost = arena.arc(e).cost;
    for (std::uint32_t h = 1; h <= loads[e]; ++h) phi += cost.at(shift[e] + h);
  }
  return phi;
}

SubgameSolution solve_subgame(const Arena& arena, VertexId origin, const std::vector<std::size_t>& players,
                              const CostShift& shift, std::size_t budget, const DpOptions& options) {
  if (origin >= arena.vertex_count()) throw ArgumentError("origin vertex out of range");
  PotentialTable table(arena, players, shift, budget, options);
  SubgameSolution out;
  const PlayerSet all = table.all_players();
  out.value = table.value(origin, all, table.budget());
  if (!out.value) return out;
  out.paths = table.reconstruct(origin, all, table.budget());
  const Rational check = shifted_potential(arena, out.paths, shift);
  if (check != *out.value) {
    throw std::logic_error("reconstructed profile has potential " + check.to_string() + " but the table holds " +
                           out.value->to_string());
  }
  return out;
}

MinPotential min_potential(const Arena& arena, const DpOptions& options) {
  std::vector<std::size_t> everyone(arena.player_count());
  for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
  const std::size_t budget = arena.vertex_count() - 1;
  auto solution = solve_subgame(arena, arena.root(), everyone, CostShift(arena), budget, options);
  if (!solution.value) throw ValidationError("some terminal is unreachable from the root");
  return MinPotential{std::move(*solution.value), StrategyProfile::create(arena, std::move(solution.paths))};
}

}  // namespace mcgame
