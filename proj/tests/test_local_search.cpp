#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mcgame/error.hpp"
#include "mcgame/exact_dp.hpp"
#include "mcgame/game.hpp"
#include "mcgame/local_search.hpp"
#include "mcgame/oracle.hpp"

using namespace mcgame;
using namespace mcgame::testing;

namespace {

RandomArenaParams small_params() {
  RandomArenaParams p = desk_params();
  p.min_players = 1;
  p.max_players = 5;
  return p;
}

}  // namespace

TEST_CASE("k = 0 never moves") {
  const Arena a = instance_a();
  CHECK_FALSE(improving_move(a, a_split(a), 0).has_value());
  CHECK_FALSE(improving_move(a, a_shared(a), 0).has_value());
}

TEST_CASE("diamond split profile improves to the shared one") {
  const Arena a = instance_a();
  const auto move = improving_move(a, a_split(a), 1);
  REQUIRE(move.has_value());
  CHECK(*move == a_shared(a));
  CHECK(potential(a, *move) == Rational(15, 2));
  CHECK(potential(a, a_split(a)) == Rational(12));
}

TEST_CASE("diamond optimum has no improving move") {
  const Arena a = instance_a();
  for (std::size_t k = 0; k <= 2; ++k) CHECK_FALSE(improving_move(a, a_shared(a), k).has_value());
  CHECK_THROWS_AS(improving_move(a, a_shared(a), 3), ArgumentError);
}

TEST_CASE("only players with an alternative path are movable") {
  const Arena a = Arena::create({"r", "a", "b", "t", "c"}, "r",
                                {{"r", "a", CostFunction::fair_share(4)},
                                 {"r", "b", CostFunction::fair_share(6)},
                                 {"a", "t", CostFunction::fair_share(1)},
                                 {"b", "t", CostFunction::fair_share(1)},
                                 {"a", "c", CostFunction::fair_share(1)},
                                 {"c", "r", CostFunction::fair_share(1)}},
                                {"t", "a", "c", "r"});
  const auto s = profile_of(a, {{"r", "b", "t"}, {"r", "a"}, {"r", "a", "c"}, {"r"}});
  CHECK(movable_players(a, s) == std::vector<bool>{true, false, false, false});
  for (std::size_t i = 0; i < a.player_count(); ++i) {
    const bool several = enumerate_paths(a, a.root(), a.terminal(i), 100).size() >= 2;
    CHECK(movable_players(a, s)[i] == several);
  }
  const auto move = improving_move(a, s, 1);
  REQUIRE(move.has_value());
  CHECK(move->path(0) == named_path(a, {"r", "a", "t"}));
}

TEST_CASE("movable players match path counts on random arenas") {
  std::mt19937_64 rng(3);
  for (const Arena& arena : random_corpus(31, 100, small_params())) {
    const auto s = random_profile(arena, rng);
    const auto movable = movable_players(arena, s);
    for (std::size_t i = 0; i < arena.player_count(); ++i) {
      CHECK(movable[i] == (enumerate_paths(arena, arena.root(), arena.terminal(i), 100000).size() >= 2));
    }
  }
}

TEST_CASE("improving_move agrees with the exhaustive neighbourhood scan") {
  std::mt19937_64 rng(5);
  int improving = 0;
  for (const Arena& arena : random_corpus(32, 150, small_params())) {
    const auto s = random_profile(arena, rng);
    const std::size_t k = uniform_int(rng, 0, std::min<std::size_t>(3, arena.player_count()));
    const auto fast = improving_move(arena, s, k);
    const auto slow = brute_improving_move(arena, s, k);
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) continue;
    ++improving;
    CHECK(potential(arena, *fast) < potential(arena, s));
    CHECK(hamming_distance(s, *fast) <= k);
    // Both return a minimum-potential member of the neighbourhood.
    CHECK(potential(arena, *fast) == potential(arena, *slow));

    LocalSearchOptions first;
    first.first_found = true;
    const auto any = improving_move(arena, s, k, first);
    REQUIRE(any.has_value());
    CHECK(potential(arena, *any) < potential(arena, s));
    CHECK(hamming_distance(s, *any) <= k);
  }
  CHECK(improving > 20);
}

TEST_CASE("radius one is exactly the Nash test") {
  std::mt19937_64 rng(7);
  for (const Arena& arena : random_corpus(33, 150, small_params())) {
    const auto s = random_profile(arena, rng);
    CHECK(is_nash(arena, s) == !improving_move(arena, s, 1).has_value());
  }
}

TEST_CASE("radius n decides global optimality") {
  std::mt19937_64 rng(9);
  for (const Arena& arena : random_corpus(34, 80, small_params())) {
    const auto s = random_profile(arena, rng);
    const auto best = min_potential(arena);
    const auto move = improving_move(arena, s, arena.player_count());
    CHECK(move.has_value() == (potential(arena, s) != best.value));
    if (move) CHECK(potential(arena, *move) == best.value);
  }
}

TEST_CASE("results do not depend on the worker count") {
  std::mt19937_64 rng(11);
  RandomArenaParams params = desk_params();
  params.max_vertices = 8;
  params.max_arcs = 14;
  params.min_players = 4;
  params.max_players = 7;
  for (const Arena& arena : random_corpus(35, 20, params)) {
    const auto s = random_profile(arena, rng);
    LocalSearchOptions threaded;
    threaded.dp.workers = 3;
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(improving_move(arena, s, k) == improving_move(arena, s, k, threaded));
    }
  }
}

TEST_CASE("best-response dynamics examples") {
  const Arena a = instance_a();
  auto at_nash = best_response_dynamics(a, a_shared(a), 10);
  CHECK(at_nash.converged);
  CHECK(at_nash.trace.empty());
  CHECK(at_nash.profile == a_shared(a));

  auto from_split = best_response_dynamics(a, a_split(a), 10);
  CHECK(from_split.converged);
  CHECK(from_split.profile == profile_of(a, {{"r", "b", "t"}, {"r", "b", "t"}}));
  REQUIRE(from_split.trace.size() == 1);
  CHECK(from_split.trace[0].player == 0);
  CHECK(from_split.trace[0].potential_after == Rational(21, 2));

  auto capped = best_response_dynamics(a, a_split(a), 0);
  CHECK_FALSE(capped.converged);
  CHECK(capped.trace.empty());
  CHECK(capped.profile == a_split(a));
}

TEST_CASE("each dynamics step lowers the potential by the mover's saving") {
  std::mt19937_64 rng(13);
  for (const Arena& arena : random_corpus(36, 100, small_params())) {
    StrategyProfile s = random_profile(arena, rng);
    const auto result = best_response_dynamics(arena, s, 10 * arena.player_count() * arena.vertex_count());
    CHECK(result.converged);
    CHECK(is_nash(arena, result.profile));
    for (const auto& step : result.trace) {
      CHECK(s.path(step.player) == step.old_path);
      const StrategyProfile next = s.with_path(arena, step.player, step.new_path);
      CHECK(potential(arena, next) == step.potential_after);
      CHECK(potential(arena, s) - potential(arena, next) ==
            player_cost(arena, s, step.player) - player_cost(arena, next, step.player));
      CHECK(step.potential_after < potential(arena, s));
      s = next;
    }
    CHECK(s == result.profile);
  }
}

TEST_CASE("iterated descent") {
  std::mt19937_64 rng(15);
  for (const Arena& arena : random_corpus(37, 60, small_params())) {
    const auto s = random_profile(arena, rng);
    CHECK(iterated_descent(arena, s, 1, 0) == s);
    CHECK(is_nash(arena, iterated_descent(arena, s, 1, 1000)));
    const auto global = iterated_descent(arena, s, arena.player_count(), 1000);
    CHECK(potential(arena, global) == min_potential(arena).value);
  }
}
