/* mastermind.h -- C interface to the Mastermind solver library */

#ifndef MASTERMIND_H
#define MASTERMIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MASTERMIND_BUILDING)
#    define MM_API __declspec(dllexport)
#  else
#    define MM_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define MM_API __attribute__((visibility("default")))
#else
#  define MM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mm_status {
    MM_OK = 0,
    MM_INVALID_ARGUMENT = 1,
    MM_OVERFLOW = 2,
    MM_MEMORY_BUDGET = 3,
    MM_INFEASIBLE = 4,
    MM_BOUND_TOO_LOW = 5,
    MM_PARSE = 6,
    MM_VERIFY = 7,
    MM_IO = 8,
    MM_INTERNAL = 9
} mm_status;

typedef enum mm_mode { MM_MODE_FULL = 0, MM_MODE_POSSIBLE = 1, MM_MODE_EXTENDED = 2 } mm_mode;

typedef enum mm_policy {
    MM_POLICY_MAX_SIZE = 0,
    MM_POLICY_EXPECTED_SIZE = 1,
    MM_POLICY_ENTROPY = 2,
    MM_POLICY_MOST_PARTS = 3
} mm_policy;

typedef enum mm_tie_order { MM_TIE_FIRST = 0, MM_TIE_LAST = 1 } mm_tie_order;

typedef enum mm_entropy_ties { MM_ENTROPY_TOLERANT = 0, MM_ENTROPY_STRICT = 1 } mm_entropy_ties;

typedef enum mm_format { MM_FORMAT_JSON = 0, MM_FORMAT_DOT = 1 } mm_format;

typedef struct mm_solve_config mm_solve_config;
typedef struct mm_result mm_result;
typedef struct mm_tree mm_tree;

/* Message of the last failure on the calling thread; "" after success. */
MM_API const char *mm_last_error(void);
MM_API const char *mm_status_name(mm_status status);
MM_API const char *mm_version(void);

/* Strings returned through char** are owned by the caller. */
MM_API void mm_string_free(char *text);

MM_API mm_status mm_parse_mode(const char *text, mm_mode *out);
MM_API mm_status mm_parse_policy(const char *text, mm_policy *out);

/* ---- solve ---- */

MM_API mm_status mm_solve_config_create(mm_solve_config **out);
MM_API void mm_solve_config_destroy(mm_solve_config *config);
MM_API mm_status mm_solve_config_set_mode(mm_solve_config *config, mm_mode mode);
/* A known achievable L; values <= 0 clear it. */
MM_API mm_status mm_solve_config_set_upper_bound(mm_solve_config *config, int64_t bound);
MM_API mm_status mm_solve_config_set_symmetry(mm_solve_config *config, int enabled);
MM_API mm_status mm_solve_config_set_shortcuts(mm_solve_config *config, int enabled);
MM_API mm_status mm_solve_config_set_grade_table(mm_solve_config *config, int enabled);
MM_API mm_status mm_solve_config_set_k_factor(mm_solve_config *config, int enabled);
MM_API mm_status mm_solve_config_set_workers(mm_solve_config *config, int workers);
MM_API mm_status mm_solve_config_set_deterministic(mm_solve_config *config, int enabled);
/* NULL or "" disables the result cache. */
MM_API mm_status mm_solve_config_set_cache_path(mm_solve_config *config, const char *path);
/* The flag value when non-empty, else $MASTERMIND_CACHE, else "". */
MM_API mm_status mm_resolve_cache_path(const char *flag_value, char **out);
/* 0 removes the cap. */
MM_API mm_status mm_solve_config_set_max_guesses(mm_solve_config *config, int max_guesses);
MM_API mm_status mm_solve_config_set_want_tree(mm_solve_config *config, int enabled);
MM_API mm_status mm_solve_config_set_minimize_worst(mm_solve_config *config, int enabled);
/* Progress trace on standard error. */
MM_API mm_status mm_solve_config_set_verbose(mm_solve_config *config, int enabled);

/* config may be NULL for defaults. */
MM_API mm_status mm_solve(int pegs, int colors, const mm_solve_config *config, mm_result **out);

/* ---- heuristics ---- */

/* first_guess may be NULL. */
MM_API mm_status mm_heuristic(int pegs, int colors, mm_policy policy, mm_tie_order tie, mm_entropy_ties ties,
                              const char *first_guess, int want_tree, mm_result **out);
MM_API mm_status mm_consistency(int pegs, int colors, const char *first_guess, int want_tree, mm_result **out);

/* ---- results ---- */

MM_API void mm_result_destroy(mm_result *result);
MM_API int64_t mm_result_total(const mm_result *result);
MM_API int64_t mm_result_secrets(const mm_result *result);
MM_API int mm_result_worst(const mm_result *result);
/* Writes up to cap entries of f (codes found at guess 1, 2, ...); returns
   the full histogram length. */
MM_API size_t mm_result_histogram(const mm_result *result, int64_t *out, size_t cap);
MM_API mm_status mm_result_first_guess(const mm_result *result, char **out);
MM_API uint64_t mm_result_nodes(const mm_result *result);
MM_API size_t mm_result_warning_count(const mm_result *result);
/* Borrowed pointer, valid until the result is destroyed. */
MM_API const char *mm_result_warning(const mm_result *result, size_t index);
/* Moves the strategy tree out of the result; MM_INVALID_ARGUMENT if none. */
MM_API mm_status mm_result_take_tree(mm_result *result, mm_tree **out);

/* ---- strategy trees ---- */

MM_API void mm_tree_destroy(mm_tree *tree);
MM_API mm_status mm_tree_from_json(const char *text, mm_tree **out);
MM_API mm_status mm_tree_load(const char *path, mm_tree **out);
MM_API mm_status mm_tree_save(const mm_tree *tree, const char *path, mm_format format);
MM_API mm_status mm_tree_export(const mm_tree *tree, mm_format format, char **out);
MM_API int mm_tree_pegs(const mm_tree *tree);
MM_API int mm_tree_colors(const mm_tree *tree);
MM_API mm_mode mm_tree_mode(const mm_tree *tree);
MM_API size_t mm_tree_node_count(const mm_tree *tree);
/* Replays every secret. The result carries the recomputed statistics and
   any header mismatch warnings. */
MM_API mm_status mm_tree_verify(const mm_tree *tree, mm_result **out);

/* ---- combinatorics and reference values ---- */

MM_API mm_status mm_grade(const char *a, const char *b, int *black, int *white);
MM_API mm_status mm_combinatorics(int pegs, int colors, uint64_t *codes, uint64_t *grades);
/* Writes C_i and Z_pi for i = 1..min(p,c); *count receives that length. */
MM_API mm_status mm_color_census(int pegs, int colors, uint64_t *class_counts, uint64_t *placements, size_t cap,
                                 size_t *count);
MM_API mm_status mm_lower_bound(int64_t m, int factor, int grade_count, int64_t *out);
/* Flags report which of E (as a reduced fraction) and W are known. */
MM_API mm_status mm_closed_form(int pegs, int colors, int *has_expected, int64_t *num, int64_t *den, int *has_worst,
                                int *worst);
/* num/den rounded half-up to `digits` decimals. */
MM_API mm_status mm_format_decimal(int64_t num, int64_t den, int digits, char **out);

#ifdef __cplusplus
}
#endif

#endif
