#include "mcgame.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <random>
#include <string>
#include <utility>

#include "mcgame/error.hpp"
#include "mcgame/exact_dp.hpp"
#include "mcgame/game.hpp"
#include "mcgame/io.hpp"
#include "mcgame/local_search.hpp"
#include "mcgame/oracle.hpp"
#include "mcgame/random_instances.hpp"
#include "mcgame/reduction.hpp"

struct mcg_arena {
  std::shared_ptr<const mcgame::Arena> arena;
};

struct mcg_profile {
  std::shared_ptr<const mcgame::Arena> arena;
  mcgame::StrategyProfile profile;
};

namespace {

thread_local std::string last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
mcg_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const mcgame::CapacityError& e) {
    last_error = e.what();
    return MCG_ERR_CAPACITY;
  } catch (const mcgame::ArgumentError& e) {
    last_error = e.what();
    return MCG_ERR_USAGE;
  } catch (const mcgame::Error& e) {
    last_error = e.what();
    return MCG_ERR_VALIDATION;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return MCG_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return MCG_ERR_INTERNAL;
  }
}

mcg_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return MCG_ERR_USAGE;
}

mcgame::DpOptions dp_options(const mcg_options* options) {
  mcg_options defaults;
  mcg_options_init(&defaults);
  const mcg_options& o = options ? *options : defaults;
  mcgame::DpOptions dp;
  dp.workers = o.workers == 0 ? 1 : o.workers;
  dp.max_players = o.max_dp_players;
  return dp;
}

mcgame::OracleOptions oracle_options(const mcg_options* options) {
  mcgame::OracleOptions out;
  if (options && options->oracle_profile_cap > 0) out.profile_cap = options->oracle_profile_cap;
  return out;
}

mcg_profile* wrap(std::shared_ptr<const mcgame::Arena> arena, mcgame::StrategyProfile s) {
  return new mcg_profile{std::move(arena), std::move(s)};
}

}  // namespace

extern "C" {

void mcg_options_init(mcg_options* options) {
  if (options == nullptr) return;
  options->workers = 1;
  options->max_dp_players = 24;
  options->oracle_profile_cap = mcgame::OracleOptions{}.profile_cap;
  options->first_found = 0;
  options->trust_no = 0;
  if (const char* env = std::getenv("MCGAME_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) options->workers = static_cast<unsigned>(n);
  }
}

const char* mcg_last_error(void) { return last_error.c_str(); }

const char* mcg_version(void) { return "1.0.0"; }

void mcg_string_free(char* s) { std::free(s); }

mcg_status mcg_arena_parse(const char* json, mcg_arena** out) {
  if (!json || !out) return null_argument("mcg_arena_parse");
  return guarded([&] {
    auto arena = std::make_shared<const mcgame::Arena>(mcgame::parse_arena(json));
    *out = new mcg_arena{std::move(arena)};
    return MCG_OK;
  });
}

mcg_status mcg_arena_random(uint64_t seed, size_t max_vertices, size_t max_arcs, size_t max_players,
                            mcg_arena** out) {
  if (!out) return null_argument("mcg_arena_random");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    mcgame::RandomArenaParams params;
    params.max_vertices = max_vertices;
    params.max_arcs = max_arcs;
    params.min_players = std::min<std::size_t>(1, max_players);
    params.max_players = max_players;
    *out = new mcg_arena{std::make_shared<const mcgame::Arena>(mcgame::random_arena(rng, params))};
    return MCG_OK;
  });
}

mcg_status mcg_arena_to_json(const mcg_arena* arena, char** out) {
  if (!arena || !out) return null_argument("mcg_arena_to_json");
  return guarded([&] {
    *out = copy_string(mcgame::to_json(*arena->arena));
    return MCG_OK;
  });
}

size_t mcg_arena_player_count(const mcg_arena* arena) { return arena ? arena->arena->player_count() : 0; }

void mcg_arena_free(mcg_arena* arena) { delete arena; }

mcg_status mcg_profile_parse(const mcg_arena* arena, const char* json, mcg_profile** out) {
  if (!arena || !json || !out) return null_argument("mcg_profile_parse");
  return guarded([&] {
    *out = wrap(arena->arena, mcgame::parse_profile(json, *arena->arena));
    return MCG_OK;
  });
}

mcg_status mcg_profile_random(const mcg_arena* arena, uint64_t seed, mcg_profile** out) {
  if (!arena || !out) return null_argument("mcg_profile_random");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    *out = wrap(arena->arena, mcgame::random_profile(*arena->arena, rng));
    return MCG_OK;
  });
}

mcg_status mcg_profile_to_json(const mcg_profile* profile, char** out) {
  if (!profile || !out) return null_argument("mcg_profile_to_json");
  return guarded([&] {
    *out = copy_string(mcgame::to_json(*profile->arena, profile->profile));
    return MCG_OK;
  });
}

void mcg_profile_free(mcg_profile* profile) { delete profile; }

mcg_status mcg_potential(const mcg_profile* profile, char** out) {
  if (!profile || !out) return null_argument("mcg_potential");
  return guarded([&] {
    *out = copy_string(mcgame::potential(*profile->arena, profile->profile).to_string());
    return MCG_OK;
  });
}

mcg_status mcg_hamming_distance(const mcg_profile* a, const mcg_profile* b, size_t* out) {
  if (!a || !b || !out) return null_argument("mcg_hamming_distance");
  return guarded([&] {
    *out = mcgame::hamming_distance(a->profile, b->profile);
    return MCG_OK;
  });
}

mcg_status mcg_eval(const mcg_profile* profile, char** out_json) {
  if (!profile || !out_json) return null_argument("mcg_eval");
  return guarded([&] {
    *out_json = copy_string(mcgame::eval_report(*profile->arena, profile->profile));
    return MCG_OK;
  });
}

mcg_status mcg_solve_min(const mcg_arena* arena, const mcg_options* options, mcg_profile** out) {
  if (!arena || !out) return null_argument("mcg_solve_min");
  return guarded([&] {
    auto result = mcgame::min_potential(*arena->arena, dp_options(options));
    *out = wrap(arena->arena, std::move(result.profile));
    return MCG_OK;
  });
}

mcg_status mcg_local_search(const mcg_profile* profile, size_t k, const mcg_options* options, mcg_profile** out) {
  if (!profile || !out) return null_argument("mcg_local_search");
  return guarded([&] {
    mcgame::LocalSearchOptions ls;
    ls.dp = dp_options(options);
    ls.first_found = options && options->first_found;
    auto next = mcgame::improving_move(*profile->arena, profile->profile, k, ls);
    if (!next) {
      last_error = "no improving profile within distance " + std::to_string(k);
      return MCG_NO_IMPROVEMENT;
    }
    *out = wrap(profile->arena, std::move(*next));
    return MCG_OK;
  });
}

mcg_status mcg_best_response_dynamics(const mcg_profile* profile, size_t max_steps, mcg_profile** out,
                                      char** report_json) {
  if (!profile || !out) return null_argument("mcg_best_response_dynamics");
  return guarded([&] {
    auto result = mcgame::best_response_dynamics(*profile->arena, profile->profile, max_steps);
    if (report_json) *report_json = copy_string(mcgame::dynamics_report(*profile->arena, profile->profile, result));
    *out = wrap(profile->arena, std::move(result.profile));
    return MCG_OK;
  });
}

mcg_status mcg_oracle_min(const mcg_arena* arena, const mcg_options* options, mcg_profile** out) {
  if (!arena || !out) return null_argument("mcg_oracle_min");
  return guarded([&] {
    auto result = mcgame::brute_min_potential(*arena->arena, oracle_options(options));
    *out = wrap(arena->arena, std::move(result.profile));
    return MCG_OK;
  });
}

mcg_status mcg_oracle_local(const mcg_profile* profile, size_t k, const mcg_options* options, mcg_profile** out) {
  if (!profile || !out) return null_argument("mcg_oracle_local");
  return guarded([&] {
    auto next = mcgame::brute_improving_move(*profile->arena, profile->profile, k, oracle_options(options));
    if (!next) {
      last_error = "no improving profile within distance " + std::to_string(k);
      return MCG_NO_IMPROVEMENT;
    }
    *out = wrap(profile->arena, std::move(*next));
    return MCG_OK;
  });
}

mcg_status mcg_generate_reduction(const char* graph_json, const mcg_options* options, mcg_arena** arena,
                                  mcg_profile** initial, char** metadata_json) {
  if (!graph_json || !arena || !initial) return null_argument("mcg_generate_reduction");
  return guarded([&] {
    mcgame::ReductionOptions ro;
    ro.trust_no = options && options->trust_no;
    auto instance = mcgame::generate(mcgame::parse_coloured_graph(graph_json), ro);
    std::string metadata = mcgame::reduction_metadata(instance);
    auto shared = std::make_shared<const mcgame::Arena>(std::move(instance.arena));
    auto* profile = wrap(shared, std::move(instance.initial));
    char* meta = metadata_json ? copy_string(metadata) : nullptr;
    *arena = new mcg_arena{shared};
    *initial = profile;
    if (metadata_json) *metadata_json = meta;
    return MCG_OK;
  });
}

}  // extern "C"
