#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mcgame/error.hpp"
#include "mcgame/game.hpp"
#include "mcgame/oracle.hpp"

using namespace mcgame;
using namespace mcgame::testing;

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == Rational(0));
  CHECK(harmonic(1) == Rational(1));
  CHECK(harmonic(2) == Rational(3, 2));
  CHECK(harmonic(3) == Rational(11, 6));
  CHECK(harmonic(6) == Rational(49, 20));
}

TEST_CASE("cumulative cost") {
  const Arena arena = Arena::create({"r", "t", "u"}, "r",
                                    {{"r", "t", CostFunction::fair_share(6)},
                                     {"r", "u", CostFunction::table({Rational(4), Rational(2), Rational(2)})}},
                                    {"t", "u", "t"});
  const ArcId fair = *arena.find_arc(0, 1);
  const ArcId table = *arena.find_arc(0, 2);
  CHECK(cumulative_cost(arena, fair, 2) == Rational(9));
  CHECK(cumulative_cost(arena, fair, 3) == Rational(11));
  CHECK(cumulative_cost(arena, table, 2) == Rational(6));
  CHECK(cumulative_cost(arena, fair, 3) == Rational(6) * harmonic(3));
  CHECK_THROWS_AS(cumulative_cost(arena, table, 4), CostDomainError);

  // Increments are the per-user costs and never grow.
  for (ArcId e : {fair, table}) {
    for (std::size_t h = 1; h + 1 <= 3; ++h) {
      const Rational step = cumulative_cost(arena, e, h + 1) - cumulative_cost(arena, e, h);
      CHECK(step == arena.arc(e).cost.at(h + 1));
      CHECK(step <= arena.arc(e).cost.at(h));
    }
  }
}

TEST_CASE("potential, player cost and total cost on the diamond") {
  const Arena a = instance_a();
  const auto shared = a_shared(a);
  const auto split = a_split(a);
  CHECK(potential(a, shared) == Rational(15, 2));
  CHECK(potential(a, split) == Rational(12));
  CHECK(player_cost(a, shared, 0) == Rational(5, 2));
  CHECK(player_cost(a, split, 1) == Rational(7));
  CHECK(total_cost(a, shared) == Rational(5));
  CHECK(total_cost(a, split) == Rational(12));
  CHECK_THROWS_AS(player_cost(a, shared, 2), ArgumentError);

  const Arena empty = instance_a(0);
  const auto nobody = StrategyProfile::create(empty, {});
  CHECK(potential(empty, nobody) == Rational(0));
  CHECK(total_cost(empty, nobody) == Rational(0));
  CHECK(is_nash(empty, nobody));
}

TEST_CASE("a player whose terminal is the root pays nothing") {
  const Arena arena = Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::fair_share(3)}}, {"r", "t"});
  const auto s = profile_of(arena, {{"r"}, {"r", "t"}});
  CHECK(player_cost(arena, s, 0) == Rational(0));
  CHECK(player_cost(arena, s, 1) == Rational(3));
  CHECK(best_response(arena, s, 0).path == Path{0});
}

TEST_CASE("hamming distance") {
  const Arena a = instance_a();
  CHECK(hamming_distance(a_shared(a), a_shared(a)) == 0);
  CHECK(hamming_distance(a_shared(a), a_split(a)) == 1);
  const auto both_b = profile_of(a, {{"r", "b", "t"}, {"r", "b", "t"}});
  CHECK(hamming_distance(a_shared(a), both_b) == 2);
  const Arena three = instance_a(3);
  CHECK_THROWS_AS(hamming_distance(a_shared(a), profile_of(three, {{"r", "a", "t"}, {"r", "a", "t"}, {"r", "a", "t"}})),
                  ArgumentError);
}

namespace {

// Cheapest deviation by enumerating every simple path.
PathChoice enumerated_best_response(const Arena& arena, const StrategyProfile& s, std::size_t i) {
  std::optional<PathChoice> best;
  for (Path& p : enumerate_paths(arena, arena.root(), arena.terminal(i), 100000)) {
    Rational c = player_cost(arena, s.with_path(arena, i, p), i);
    if (!best || c < best->cost || (c == best->cost && (p.size() < best->path.size() ||
                                                        (p.size() == best->path.size() && p < best->path)))) {
      best = PathChoice{std::move(p), std::move(c)};
    }
  }
  return *best;
}

}  // namespace

TEST_CASE("best response on the diamond") {
  const Arena a = instance_a();
  auto br = best_response(a, a_split(a), 1);
  CHECK(br.path == named_path(a, {"r", "a", "t"}));
  CHECK(br.cost == Rational(5, 2));
  br = best_response(a, a_shared(a), 0);
  CHECK(br.path == named_path(a, {"r", "a", "t"}));
  CHECK(br.cost == Rational(5, 2));

  const Arena single = Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::fair_share(7)}}, {"t"});
  br = best_response(single, profile_of(single, {{"r", "t"}}), 0);
  CHECK(br.path == Path{0, 1});
  CHECK(br.cost == Rational(7));
}

TEST_CASE("best response ties prefer fewer arcs, then the lexicographically smaller path") {
  // r->t direct costs 2; r->a->t and r->b->t cost 1+1. All tie on cost.
  const Arena arena = Arena::create({"r", "b", "a", "t"}, "r",
                                    {{"r", "t", CostFunction::fair_share(2)},
                                     {"r", "a", CostFunction::fair_share(1)},
                                     {"a", "t", CostFunction::fair_share(1)},
                                     {"r", "b", CostFunction::fair_share(1)},
                                     {"b", "t", CostFunction::fair_share(1)}},
                                    {"t"});
  const auto s = profile_of(arena, {{"r", "a", "t"}});
  CHECK(best_response(arena, s, 0).path == named_path(arena, {"r", "t"}));

  const Arena no_direct = Arena::create({"r", "b", "a", "t"}, "r",
                                        {{"r", "a", CostFunction::fair_share(1)},
                                         {"a", "t", CostFunction::fair_share(1)},
                                         {"r", "b", CostFunction::fair_share(1)},
                                         {"b", "t", CostFunction::fair_share(1)}},
                                        {"t"});
  // Vertex order is declaration order, so b (index 1) precedes a (index 2).
  CHECK(best_response(no_direct, profile_of(no_direct, {{"r", "a", "t"}}), 0).path ==
        named_path(no_direct, {"r", "b", "t"}));
}

TEST_CASE("best response matches path enumeration on random arenas") {
  std::mt19937_64 rng(11);
  for (const Arena& arena : random_corpus(101, 150)) {
    const auto s = random_profile(arena, rng);
    for (std::size_t i = 0; i < s.player_count(); ++i) {
      const auto fast = best_response(arena, s, i);
      const auto slow = enumerated_best_response(arena, s, i);
      CHECK(fast.cost == slow.cost);
      CHECK(fast.path == slow.path);
    }
  }
}

TEST_CASE("Nash check on the diamond") {
  const Arena a = instance_a();
  CHECK(is_nash(a, a_shared(a)));
  const auto check = check_nash(a, a_split(a));
  CHECK_FALSE(check.is_nash);
  // Player 0 already improves: r->b->t costs 6/2 + 1/2 < 5.
  REQUIRE(check.player.has_value());
  CHECK(*check.player == 0);
  CHECK(check.deviation->path == named_path(a, {"r", "b", "t"}));
  CHECK(check.deviation->cost == Rational(7, 2));
}

TEST_CASE("exact potential property on random unilateral deviations") {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (const Arena& arena : random_corpus(202, 120)) {
    if (arena.player_count() == 0) continue;
    const auto s = random_profile(arena, rng);
    const std::size_t i = uniform_int(rng, 0, arena.player_count() - 1);
    const auto paths = enumerate_paths(arena, arena.root(), arena.terminal(i), 100000);
    const auto t = s.with_path(arena, i, paths[uniform_int(rng, 0, paths.size() - 1)]);
    CHECK(potential(arena, t) - potential(arena, s) == player_cost(arena, t, i) - player_cost(arena, s, i));
    CHECK(potential(arena, t) >= Rational(0));
    CHECK(total_cost(arena, t) >= Rational(0));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("fair-share total cost is the sum of used bases") {
  std::mt19937_64 rng(9);
  RandomArenaParams params = desk_params();
  params.table_percent = 0;
  for (const Arena& arena : random_corpus(303, 80, params)) {
    const auto s = random_profile(arena, rng);
    Rational bases;
    for (ArcId e = 0; e < arena.arc_count(); ++e) {
      if (s.loads()[e] > 0) bases += arena.arc(e).cost.as_fair_share()->base;
    }
    CHECK(total_cost(arena, s) == bases);
  }
}

TEST_CASE("arena validation") {
  using V = std::vector<std::string>;
  const auto fs = [](int c) { return CostFunction::fair_share(c); };
  CHECK_THROWS_AS(Arena::create({"r", "r"}, "r", {}, {}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r"}, "x", {}, {}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"r", "r", fs(1)}}, {}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"r", "t", fs(1)}, {"r", "t", fs(2)}}, {}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"t", "r", fs(1)}}, V{"t"}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"r", "t", fs(-1)}}, V{"t"}), ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"r", "t", fs(1)}}, V{"q"}), ValidationError);
  // Cost tables must not increase and must cover every player.
  CHECK_THROWS_AS(
      Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::table({Rational(1), Rational(2)})}}, V{"t", "t"}),
      ValidationError);
  CHECK_THROWS_AS(
      Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::table({Rational(4), Rational(2)})}}, V{"t", "t", "t"}),
      ValidationError);
  CHECK_THROWS_AS(Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::table({})}}, V{}), ValidationError);
  CHECK_NOTHROW(Arena::create({"r", "t"}, "r", {{"r", "t", CostFunction::table({Rational(4), Rational(2)})}}, V{"t"}));
}

TEST_CASE("profile validation names the offending player") {
  const Arena a = instance_a();
  auto expect_player = [&](std::vector<Path> paths, const std::string& who) {
    try {
      StrategyProfile::create(a, std::move(paths));
      FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(who) != std::string::npos);
    }
  };
  const Path good = named_path(a, {"r", "a", "t"});
  expect_player({good, named_path(a, {"a", "t"})}, "player 1");
  expect_player({named_path(a, {"r", "a"}), good}, "player 0");
  expect_player({good, named_path(a, {"r", "t"})}, "player 1");
  CHECK_THROWS_AS(StrategyProfile::create(a, {good}), ValidationError);

  // Walks that revisit a vertex are not strategies.
  const Arena cyc = Arena::create({"r", "a", "t"}, "r",
                                  {{"r", "a", CostFunction::fair_share(1)},
                                   {"a", "r", CostFunction::fair_share(1)},
                                   {"a", "t", CostFunction::fair_share(1)}},
                                  {"t"});
  CHECK_THROWS_AS(profile_of(cyc, {{"r", "a", "r", "a", "t"}}), ValidationError);
}
