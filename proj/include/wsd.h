/* C interface to the word-sense toolkit. All functions return ws_status;
 * WS_OK means success and anything else leaves a message retrievable with
 * ws_last_error() (thread-local). Strings returned through out-parameters
 * are heap-allocated and must be released with ws_string_free(). */

#ifndef WSD_H
#define WSD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ws_status {
    WS_OK = 0,
    WS_ERR = 1,        /* internal or unclassified failure */
    WS_ERR_CONFIG = 2, /* bad key, bad value, missing required input */
    WS_ERR_IO = 3,     /* filesystem or file-format trouble */
    WS_ERR_DOMAIN = 4  /* input violates a precondition */
} ws_status;

typedef struct ws_config ws_config;
typedef struct ws_model ws_model;

const char* ws_version(void);

/* Message from the most recent failing call on this thread. */
const char* ws_last_error(void);

void ws_string_free(char* s);

/* ---- configuration -------------------------------------------------- */

ws_status ws_config_create(ws_config** out);
ws_status ws_config_load(const char* path, ws_config** out);
ws_status ws_config_set(ws_config* config, const char* key, const char* value);
/* Raw value previously set or loaded; WS_ERR_CONFIG if the key is absent. */
ws_status ws_config_get(const ws_config* config, const char* key, char** value_out);
void ws_config_free(ws_config* config);

/* ---- pipeline commands ---------------------------------------------- */
/* Each command validates the configuration, writes its artifacts under the
 * configured output directory, and hands back a JSON summary. summary_json
 * may be NULL when the caller only wants the status. */

ws_status ws_cmd_train(ws_config* config, char** summary_json);
ws_status ws_cmd_contexts(ws_config* config, const char* target, char** summary_json);
ws_status ws_cmd_grid(ws_config* config, const char* contexts_path, char** summary_json);
ws_status ws_cmd_label(ws_config* config, const char* contexts_path, double epsilon,
                       int min_samples, char** summary_json);
/* targets == NULL falls back to the targets configured in the file. */
ws_status ws_cmd_pipeline(ws_config* config, const char* const* targets, int n_targets,
                          char** summary_json);
ws_status ws_cmd_synth(ws_config* config, char** summary_json);

/* ---- trained models -------------------------------------------------- */

ws_status ws_model_open(const char* path, ws_model** out);
void ws_model_close(ws_model* model);

int64_t ws_model_vocab_size(const ws_model* model);
int32_t ws_model_dimension(const ws_model* model);
int ws_model_contains(const ws_model* model, const char* word);

/* Top-k neighbors of a word in one embedding space (0 = IN, 1 = OUT) as a
 * JSON array of {"word": ..., "similarity": ...} objects. */
ws_status ws_model_neighbors(const ws_model* model, const char* word, int space, int k,
                             char** json_out);

#ifdef __cplusplus
}
#endif

#endif
