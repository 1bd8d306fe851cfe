/* C interface to the multicast cost-sharing game solvers.
 *
 * Every fallible call returns an mcg_status. On failure the out-parameters
 * are left untouched and mcg_last_error() describes the problem (the message
 * is thread-local and valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * mcg_string_free(); handles are released with their *_free function.
 */
#ifndef MCGAME_H
#define MCGAME_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MCGAME_API __declspec(dllexport)
#else
#define MCGAME_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the command-line exit codes. */
typedef enum mcg_status {
  MCG_OK = 0,
  MCG_ERR_USAGE = 1,
  MCG_ERR_VALIDATION = 2,
  MCG_NO_IMPROVEMENT = 3,
  MCG_ERR_CAPACITY = 4,
  MCG_ERR_INTERNAL = 5
} mcg_status;

typedef struct mcg_arena mcg_arena;
/* A profile owns a reference to the arena it was validated against. */
typedef struct mcg_profile mcg_profile;

typedef struct mcg_options {
  unsigned workers;            /* worker threads for DP layers and subset scans */
  unsigned max_dp_players;     /* exact solver capacity guard */
  uint64_t oracle_profile_cap; /* brute-force scan capacity */
  int first_found;             /* local search: stop at the first improving subset */
  int trust_no;                /* reduction: label "no" when no clique exists */
} mcg_options;

/* Defaults; honours the MCGAME_WORKERS environment variable. */
MCGAME_API void mcg_options_init(mcg_options* options);

MCGAME_API const char* mcg_last_error(void);
MCGAME_API const char* mcg_version(void);
MCGAME_API void mcg_string_free(char* s);

MCGAME_API mcg_status mcg_arena_parse(const char* json, mcg_arena** out);
MCGAME_API mcg_status mcg_arena_random(uint64_t seed, size_t max_vertices, size_t max_arcs, size_t max_players,
                                       mcg_arena** out);
MCGAME_API mcg_status mcg_arena_to_json(const mcg_arena* arena, char** out);
MCGAME_API size_t mcg_arena_player_count(const mcg_arena* arena);
MCGAME_API void mcg_arena_free(mcg_arena* arena);

MCGAME_API mcg_status mcg_profile_parse(const mcg_arena* arena, const char* json, mcg_profile** out);
MCGAME_API mcg_status mcg_profile_random(const mcg_arena* arena, uint64_t seed, mcg_profile** out);
MCGAME_API mcg_status mcg_profile_to_json(const mcg_profile* profile, char** out);
MCGAME_API void mcg_profile_free(mcg_profile* profile);

/* Potential as a canonical rational string ("15/2"). */
MCGAME_API mcg_status mcg_potential(const mcg_profile* profile, char** out);
MCGAME_API mcg_status mcg_hamming_distance(const mcg_profile* a, const mcg_profile* b, size_t* out);
/* JSON: potential, total_cost, player_costs, nash, deviation. */
MCGAME_API mcg_status mcg_eval(const mcg_profile* profile, char** out_json);

/* Exact global minimum of the potential. */
MCGAME_API mcg_status mcg_solve_min(const mcg_arena* arena, const mcg_options* options, mcg_profile** out);
/* MCG_NO_IMPROVEMENT when no profile within Hamming distance k has smaller potential. */
MCGAME_API mcg_status mcg_local_search(const mcg_profile* profile, size_t k, const mcg_options* options,
                                       mcg_profile** out);
/* report_json (optional): converged flag, trace and final profile. */
MCGAME_API mcg_status mcg_best_response_dynamics(const mcg_profile* profile, size_t max_steps, mcg_profile** out,
                                                 char** report_json);

/* Brute-force references; MCG_ERR_CAPACITY when the instance is too large. */
MCGAME_API mcg_status mcg_oracle_min(const mcg_arena* arena, const mcg_options* options, mcg_profile** out);
MCGAME_API mcg_status mcg_oracle_local(const mcg_profile* profile, size_t k, const mcg_options* options,
                                       mcg_profile** out);

/* Builds the local-search instance for a coloured graph document. */
MCGAME_API mcg_status mcg_generate_reduction(const char* graph_json, const mcg_options* options, mcg_arena** arena,
                                             mcg_profile** initial, char** metadata_json);

#ifdef __cplusplus
}
#endif

#endif /* MCGAME_H */
