// Copyright 2026 The Mousetrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/*
 * C interface to the mousetrap simulator.
 *
 * Every call returns an mt_status; on failure, mt_last_error() holds a message for the
 * calling thread until its next failing call. Objects are opaque and owned by the
 * caller, who releases them with the matching *_destroy function.
 */
#ifndef MOUSETRAP_H_
#define MOUSETRAP_H_

#include <stddef.h>

#if defined(MOUSETRAP_BUILDING_DLL)
#define MT_API __attribute__((visibility("default")))
#else
#define MT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mt_status {
  MT_OK = 0,
  MT_ERR_USAGE = 2,     /* invalid argument or configuration */
  MT_ERR_NUMERICAL = 3, /* non-convergence, lost tracking, gap below floor */
  MT_ERR_IO = 4,        /* file could not be read or written */
  MT_ERR_INTERNAL = 5
} mt_status;

typedef struct mt_config mt_config;
typedef struct mt_table mt_table;

MT_API const char* mt_version(void);
MT_API const char* mt_last_error(void);

/* ---- configuration ---------------------------------------------------- */

MT_API mt_status mt_config_create(mt_config** out);
MT_API void mt_config_destroy(mt_config* config);
/* Key is a flag name ("epsilon") or section-qualified ("waveform.epsilon"). */
MT_API mt_status mt_config_set(mt_config* config, const char* key, const char* value);
MT_API mt_status mt_config_load(mt_config* config, const char* path);
/* Value of a key as text (the default when unset); release with mt_string_free. */
MT_API mt_status mt_config_get(const mt_config* config, const char* key, char** out);
/* 1 when the key was set explicitly, 0 when unset, -1 for an unknown key. */
MT_API int mt_config_is_set(const mt_config* config, const char* key);
/* Resolves and validates every setting without running anything. */
MT_API mt_status mt_config_validate(const mt_config* config);

/* Key catalogue, for building front ends: index in [0, mt_config_key_count()). */
MT_API size_t mt_config_key_count(void);
MT_API const char* mt_config_key_name(size_t index);
MT_API const char* mt_config_key_section(size_t index);
MT_API const char* mt_config_key_default(size_t index);
MT_API const char* mt_config_key_help(size_t index);
MT_API int mt_config_key_is_flag(size_t index);

/* ---- runs ------------------------------------------------------------- */

/* command: spectrum, evolve, sweep, timeline, direction or error. */
MT_API mt_status mt_run(const mt_config* config, const char* command, mt_table** out);
/* figure: fig2, fig3, fig4 or fig5. Unset keys take the figure's settings. */
MT_API mt_status mt_reproduce(const mt_config* config, const char* figure, mt_table** out);

/* ---- result tables ---------------------------------------------------- */

MT_API void mt_table_destroy(mt_table* table);
MT_API size_t mt_table_rows(const mt_table* table);
MT_API size_t mt_table_cols(const mt_table* table);
MT_API const char* mt_table_column_name(const mt_table* table, size_t col);
MT_API mt_status mt_table_value(const mt_table* table, size_t row, size_t col, double* out);
MT_API size_t mt_table_metadata_count(const mt_table* table);
MT_API const char* mt_table_metadata_key(const mt_table* table, size_t index);
MT_API const char* mt_table_metadata_value(const mt_table* table, size_t index);
/* One-line digest of the run; empty for plain listings. */
MT_API const char* mt_table_summary(const mt_table* table);
MT_API mt_status mt_table_write_csv(const mt_table* table, const char* path);
MT_API mt_status mt_table_write_json(const mt_table* table, const char* path);
/* Serialized table; release with mt_string_free. format: "csv" or "json". */
MT_API mt_status mt_table_format(const mt_table* table, const char* format, char** out);
/* Writes <dir>/<stem>.csv and/or .json (format csv, json or both). */
MT_API mt_status mt_table_write_outputs(const mt_table* table, const char* dir, const char* stem,
                                        const char* format);

MT_API void mt_string_free(char* text);

/* ---- direct queries --------------------------------------------------- */

/* Trimer eigenvalues l1..l8 for a cardinal-axis field b. */
MT_API mt_status mt_trimer_eigenvalues(double b, double out[8]);
/* Labelled eigenvalues of a named model; *count receives the dimension. */
MT_API mt_status mt_sensor_eigenvalues(const char* model, double b, double* out, size_t capacity,
                                       size_t* count);
/* Series coefficient tables as JSON; release with mt_string_free. */
MT_API mt_status mt_series_coefficients_json(char** out);

MT_API mt_status mt_ramsey_probability(double chi, double* out);
/* mode: "product" or "ghz". */
MT_API mt_status mt_multi_sensor_probability(double chi, int n, const char* mode, double* out);
MT_API mt_status mt_fisher_information(double chi, int n, const char* mode, double* out);
MT_API mt_status mt_qcrb(int n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MOUSETRAP_H_ */
