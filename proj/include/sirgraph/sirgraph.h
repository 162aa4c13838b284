#ifndef SIRGRAPH_SIRGRAPH_H
#define SIRGRAPH_SIRGRAPH_H

/* C interface to the epidemic-on-metric-graph simulator. All entry points
 * return a status code; details for the most recent failure on the calling
 * thread are available via sg_last_error(). Strings returned through
 * out-parameters are owned by the caller and released with sg_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_CONFIG = 1,    /* invalid configuration or input */
  SG_ERR_STABILITY = 2, /* dt above the stability bound */
  SG_ERR_NUMERICAL = 3, /* non-finite state, failed solve */
  SG_ERR_IO = 4         /* file read/write failure */
} sg_status;

typedef struct sg_config sg_config;

/* Parse and validate a configuration from a file or a JSON string. */
sg_status sg_config_load(const char* path, sg_config** out);
sg_status sg_config_parse(const char* json_text, sg_config** out);
void sg_config_free(sg_config* config);

/* Hypothesis check of the configured scenario. *report_json receives a
 * JSON document with ok/violations/warnings. Returns SG_OK even when the
 * hypotheses fail; inspect the report. */
sg_status sg_validate(const sg_config* config, char** report_json);

/* Run the simulation, writing any configured outputs. *summary_json
 * (optional, may be NULL) receives the run summary. */
sg_status sg_run(const sg_config* config, char** summary_json);

/* Asymptotic analysis only (no PDE integration). */
sg_status sg_analyze(const sg_config* config, char** report_json);

/* Parameter sweep; writes the configured table CSV. *table_csv (optional)
 * receives the table content. On per-value failure the remaining values
 * still run; the first failure determines the returned status. */
sg_status sg_sweep(const sg_config* config, char** table_csv);

/* Real-branch Lambert W (branch 0 or -1); returns SG_ERR_CONFIG outside
 * the branch domain. */
sg_status sg_lambert_w(int branch, double x, double* out);

/* Message for the most recent failure on this thread ("" if none). */
const char* sg_last_error(void);

void sg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SIRGRAPH_SIRGRAPH_H */
