/*
 * Copyright 2026 The shapaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHAPAUDIT_SHAPAUDIT_H_
#define SHAPAUDIT_SHAPAUDIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SHAPAUDIT_BUILDING_LIBRARY)
#define SHAPAUDIT_API __attribute__((visibility("default")))
#else
#define SHAPAUDIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Every fallible call returns a status. On failure a one-line description is
// available from shapaudit_last_error() on the calling thread until the next
// call on that thread.
typedef enum shapaudit_status {
  SHAPAUDIT_OK = 0,
  SHAPAUDIT_INVALID_ARGUMENT = 1,
  SHAPAUDIT_CAPACITY = 2,
  SHAPAUDIT_VALIDATION = 3,
  SHAPAUDIT_NUMERIC = 4,
  SHAPAUDIT_IO = 5,
  SHAPAUDIT_INTERNAL = 6,
} shapaudit_status;

typedef enum shapaudit_format {
  SHAPAUDIT_FORMAT_CSV = 0,
  SHAPAUDIT_FORMAT_JSON = 1,
} shapaudit_format;

// Coalitions cross the boundary as bitmasks: bit i set iff player i
// (0-based) is a member.
typedef uint64_t shapaudit_coalition;

typedef struct shapaudit_game shapaudit_game;
typedef struct shapaudit_attribution shapaudit_attribution;

SHAPAUDIT_API const char* shapaudit_version(void);
SHAPAUDIT_API const char* shapaudit_last_error(void);
SHAPAUDIT_API const char* shapaudit_status_name(shapaudit_status status);

// Games. `raw_values` holds 2^num_players entries indexed by bitmask; values
// are normalized against raw_values[0]. `labels` may be NULL for "1".."d".
SHAPAUDIT_API shapaudit_status shapaudit_game_create(
    int num_players, const char* const* labels, const double* raw_values,
    size_t num_values, shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_load(const char* path,
                                                   shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_save(const shapaudit_game* game,
                                                   const char* path);
// "taxicab" or "secret_holder".
SHAPAUDIT_API shapaudit_status shapaudit_game_builtin(const char* name,
                                                      shapaudit_game** out);
SHAPAUDIT_API void shapaudit_game_free(shapaudit_game* game);

SHAPAUDIT_API int shapaudit_game_num_players(const shapaudit_game* game);
// NULL when `player` is out of range. Owned by the game.
SHAPAUDIT_API const char* shapaudit_game_label(const shapaudit_game* game,
                                               int player);
SHAPAUDIT_API shapaudit_status shapaudit_game_value(
    const shapaudit_game* game, shapaudit_coalition coalition, double* out);
SHAPAUDIT_API double shapaudit_game_offset(const shapaudit_game* game);

SHAPAUDIT_API shapaudit_status shapaudit_game_add(const shapaudit_game* a,
                                                  const shapaudit_game* b,
                                                  shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_scale(const shapaudit_game* game,
                                                    double factor,
                                                    shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_restrict(
    const shapaudit_game* game, int player, shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_with_dummy(
    const shapaudit_game* game, const char* label, shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_penalize(
    const shapaudit_game* game, double lambda, shapaudit_game** out);
SHAPAUDIT_API shapaudit_status shapaudit_game_is_monotonic(
    const shapaudit_game* game, int* out);

// Attributions.
SHAPAUDIT_API shapaudit_status shapaudit_shapley_exact(
    const shapaudit_game* game, shapaudit_attribution** out);
// Averages marginal contributions over all d! orders; d <= 8.
SHAPAUDIT_API shapaudit_status shapaudit_shapley_permutation(
    const shapaudit_game* game, shapaudit_attribution** out);
SHAPAUDIT_API void shapaudit_attribution_free(shapaudit_attribution* attr);
SHAPAUDIT_API int shapaudit_attribution_size(const shapaudit_attribution* attr);
// Array of shapaudit_attribution_size() values, owned by `attr`.
SHAPAUDIT_API const double* shapaudit_attribution_values(
    const shapaudit_attribution* attr);
// sum(phi) - C(F).
SHAPAUDIT_API shapaudit_status shapaudit_efficiency_residual(
    const shapaudit_game* game, const shapaudit_attribution* attr,
    double* out);

// Reports as JSON text. Release with shapaudit_string_free.
SHAPAUDIT_API shapaudit_status shapaudit_audit_json(const shapaudit_game* game,
                                                    const shapaudit_game* other,
                                                    double tol, char** out);
// `boundary` may be NULL.
SHAPAUDIT_API shapaudit_status shapaudit_pathology_json(
    const shapaudit_game* game, int k, const shapaudit_coalition* boundary,
    double tol, char** out);
SHAPAUDIT_API void shapaudit_string_free(char* text);

// Selection.
SHAPAUDIT_API shapaudit_status shapaudit_top_k(
    const shapaudit_attribution* attr, int k, shapaudit_coalition* out);
SHAPAUDIT_API shapaudit_status shapaudit_threshold(
    const shapaudit_attribution* attr, double tau, shapaudit_coalition* out);
SHAPAUDIT_API shapaudit_status shapaudit_selection_regret(
    const shapaudit_game* game, int k, double* out);
SHAPAUDIT_API shapaudit_status shapaudit_efficiency_waste(
    const shapaudit_game* game, double* out);

// Experiments write a report to `out_path`. `params` and `formulations`
// (comma separated) may be NULL; n = 0 picks the experiment default.
// `rows_written` may be NULL.
SHAPAUDIT_API shapaudit_status shapaudit_run_experiment(
    const char* experiment, const char* params, int64_t n, uint64_t seed,
    const char* formulations, shapaudit_format format, const char* out_path,
    size_t* rows_written);
// jobs = 0 picks SHAPAUDIT_JOBS or 1.
SHAPAUDIT_API shapaudit_status shapaudit_run_sweep(
    const char* experiment, const char* grid, int64_t n, uint64_t seed,
    const char* formulations, int jobs, shapaudit_format format,
    const char* out_path, size_t* rows_written);
// Writes a sampled dataset as CSV.
SHAPAUDIT_API shapaudit_status shapaudit_sample_dataset(
    const char* experiment, const char* params, int64_t n, uint64_t seed,
    const char* out_path);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // SHAPAUDIT_SHAPAUDIT_H_
