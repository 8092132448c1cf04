// Copyright 2026 The Guwen Authors
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


#ifndef GUWEN_GUWEN_H_
#define GUWEN_GUWEN_H_

#include <stddef.h>

#if defined(_WIN32)
#define GW_API __declspec(dllexport)
#else
#define GW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gw_status {
  GW_OK = 0,
  GW_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown task or stage name */
  GW_ERR_FORMAT = 2,           /* input text failed to parse */
  GW_ERR_VALIDATION = 3,       /* data or config rejected; outputs may still be written */
  GW_ERR_IO = 4,
  GW_ERR_CLIENT = 5, /* model endpoint or embedding provider failure */
  GW_ERR_INTERNAL = 6
} gw_status;

/* Holds the last error message. One context per thread. */
typedef struct gw_context gw_context;

GW_API const char* gw_version(void);
GW_API const char* gw_status_name(gw_status status);

GW_API gw_status gw_context_new(gw_context** out);
GW_API void gw_context_free(gw_context* ctx);
/* Message for the last failing call on ctx; "" after a success. */
GW_API const char* gw_last_error(const gw_context* ctx);

/* Every char** result is heap-allocated and released with gw_string_free. */
GW_API void gw_string_free(char* s);

/* Text primitives. Inputs are UTF-8. */
GW_API gw_status gw_normalize(gw_context* ctx, const char* text, char** out);
/* Base text with every inventory mark removed. */
GW_API gw_status gw_strip_punctuation(gw_context* ctx, const char* text, char** out);
/* [[segment, tag], ...] as JSON. Strict: unknown tags fail with GW_ERR_FORMAT. */
GW_API gw_status gw_parse_slash_tags(gw_context* ctx, const char* line, char** out_json);
/* {"characters": [...], "place": [...], "time": [...], "official positions": [...]} */
GW_API gw_status gw_parse_entities(gw_context* ctx, const char* text, char** out_json);

/* Extracts an answer from a raw model response and scores it against gold
 * for the named task (punctuation, pos, ner, translation, word_explanation,
 * reverse_dictionary). Reverse dictionary uses a deterministic mock
 * embedding. Result: {"extracted", "scored", "precision", "recall", "f1",
 * "bleu": [4], "headline"} as JSON. */
GW_API gw_status gw_score(gw_context* ctx, const char* task, const char* gold, const char* response,
                          char** out_json);
/* Unsmoothed character-level BLEU-1..4 for one pair. */
GW_API gw_status gw_bleu(gw_context* ctx, const char* candidate, const char* reference, double out[4]);

/* key=value training hyperparameters for stage "pretrain" or "sft". */
GW_API gw_status gw_training_config(gw_context* ctx, const char* stage, char** out);

/* Pipelines. config_path may be NULL; overrides_json (may be NULL) is an
 * RFC 7386 merge patch applied to the config before it is read. Relative
 * paths resolve against the config file's directory, or the working
 * directory without one. summary_json may be NULL. */
GW_API gw_status gw_run_clean(gw_context* ctx, const char* config_path, const char* overrides_json,
                              const char* out_dir, char** summary_json);
/* Extra override key "stages": list of stage names. */
GW_API gw_status gw_run_datagen(gw_context* ctx, const char* config_path, const char* overrides_json,
                                const char* out_dir, char** summary_json);
/* Extra override key "select_models": model names; "mock" needs no config.
 * Returns GW_ERR_VALIDATION after writing results when items were rejected
 * or official counts differ. */
GW_API gw_status gw_run_eval(gw_context* ctx, const char* config_path, const char* overrides_json,
                             const char* out_dir, char** summary_json);
GW_API gw_status gw_run_report(gw_context* ctx, const char* config_path, const char* overrides_json,
                               const char* out_dir, char** summary_json);
/* kind is "bench" or "records". The report lists path:line: reason lines,
 * then per-task counts. GW_ERR_VALIDATION when anything is invalid. */
GW_API gw_status gw_validate(gw_context* ctx, const char* path, const char* kind, const char* config_path,
                             int check_official, char** report);

#ifdef __cplusplus
}
#endif

#endif /* GUWEN_GUWEN_H_ */
