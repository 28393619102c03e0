/* Copyright 2026 The egohl Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the egohl highlight pipeline.
 *
 * Every call returns an egohl_status; on failure egohl_last_error() holds a
 * message for the calling thread. JSON results come back as egohl_buffer
 * handles released with egohl_buffer_free. */

#ifndef EGOHL_EGOHL_H_
#define EGOHL_EGOHL_H_

#include <stddef.h>

#if defined(EGOHL_BUILDING_LIBRARY)
#define EGOHL_API __attribute__((visibility("default")))
#else
#define EGOHL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum egohl_status {
  EGOHL_OK = 0,
  EGOHL_ERR_INVALID_INPUT = 1,
  EGOHL_ERR_EMPTY_INPUT = 2,
  EGOHL_ERR_LOOKUP = 3,
  EGOHL_ERR_IO = 4,
  EGOHL_ERR_DECODE = 5,
  EGOHL_ERR_PIPELINE = 6,
  EGOHL_ERR_INTERNAL = 99
} egohl_status;

typedef enum egohl_baseline_mode {
  EGOHL_BASELINE_GEO = 0,
  EGOHL_BASELINE_CHRONO = 1
} egohl_baseline_mode;

typedef struct egohl_pipeline egohl_pipeline;
typedef struct egohl_buffer egohl_buffer;

EGOHL_API const char* egohl_version(void);
EGOHL_API const char* egohl_last_error(void);
EGOHL_API const char* egohl_status_name(egohl_status status);

/* "trace", "debug", "info", "warn", "error" or "off". Logs go to stderr. */
EGOHL_API egohl_status egohl_set_log_level(const char* level);

EGOHL_API const char* egohl_buffer_data(const egohl_buffer* buffer);
EGOHL_API size_t egohl_buffer_size(const egohl_buffer* buffer);
EGOHL_API void egohl_buffer_free(egohl_buffer* buffer);

/* Pipeline handle holding a validated configuration. */
EGOHL_API egohl_status egohl_pipeline_create(egohl_pipeline** out);
EGOHL_API egohl_status egohl_pipeline_create_from_file(const char* config_path,
                                                      egohl_pipeline** out);
EGOHL_API egohl_status egohl_pipeline_create_from_json(const char* config_json,
                                                      egohl_pipeline** out);
EGOHL_API void egohl_pipeline_destroy(egohl_pipeline* pipeline);

/* Dotted key ("rank.lambda1", "runtime.parallelism"); value is JSON text or
 * a bare string. The configuration is revalidated. */
EGOHL_API egohl_status egohl_pipeline_set(egohl_pipeline* pipeline, const char* key,
                                          const char* value);
EGOHL_API egohl_status egohl_pipeline_config_json(const egohl_pipeline* pipeline,
                                                  egohl_buffer** out);
EGOHL_API egohl_status egohl_pipeline_config_hash(const egohl_pipeline* pipeline,
                                                  egohl_buffer** out);

/* Per-frame score report (also written to <output_dir>/report.json). */
EGOHL_API egohl_status egohl_run_score(egohl_pipeline* pipeline, const char* manifest_path,
                                       egohl_buffer** report);

/* Full pipeline with export to <output_dir>/album. Returns
 * {"report_path", "album_path", "entries", "truncated"}. */
EGOHL_API egohl_status egohl_run_album(egohl_pipeline* pipeline, const char* manifest_path,
                                       egohl_buffer** summary);

/* GeoJSON FeatureCollection of the track's nodes. */
EGOHL_API egohl_status egohl_geo_nodes(const egohl_pipeline* pipeline, const char* track_path,
                                       egohl_buffer** geojson);

/* {"nodes": GeoJSON, "intervals": [...], "threshold", "lookup_failures"}.
 * POIs come from poi_cache_dir, or the HTTP service when its key is set. */
EGOHL_API egohl_status egohl_geo_score(const egohl_pipeline* pipeline, const char* track_path,
                                       const char* poi_cache_dir, egohl_buffer** out);

EGOHL_API egohl_status egohl_baseline(const egohl_pipeline* pipeline, const char* manifest_path,
                                      egohl_baseline_mode mode, int x, egohl_buffer** out);

/* Crop-improvement report at the configured lambdas; with sweep != 0 the
 * report also holds the lambda curve and `csv` (optional) receives it. */
EGOHL_API egohl_status egohl_eval_crops(const egohl_pipeline* pipeline, const char* dataset_dir,
                                        int sweep, egohl_buffer** report, egohl_buffer** csv);

/* The entry of one frame in a report.json file. */
EGOHL_API egohl_status egohl_inspect(const char* report_path, const char* source_id,
                                     long long frame_index, egohl_buffer** out);

EGOHL_API egohl_status egohl_haversine_km(double lat1, double lon1, double lat2, double lon2,
                                          double* out_km);

#ifdef __cplusplus
}
#endif

#endif /* EGOHL_EGOHL_H_ */
