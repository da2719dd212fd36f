/* C interface to the radarknn library.
 *
 * Handles are opaque; every entry point returns a status code (or NULL for
 * constructors) and leaves a message for rk_last_error() on failure. Status
 * codes match the CLI exit codes: 2 configuration, 3 numerical, 1 other.
 * Strings returned through out-parameters are owned by the caller and must
 * be released with rk_string_free().
 */
#ifndef RADARKNN_H
#define RADARKNN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

enum {
    RK_OK = 0,
    RK_ERR_OTHER = 1,
    RK_ERR_CONFIG = 2,
    RK_ERR_NUMERICAL = 3
};

typedef struct rk_config rk_config;

/* Thread-local message for the most recent failure; never NULL. */
RK_API const char* rk_last_error(void);

RK_API const char* rk_version(void);

/* Fresh configuration with library defaults. */
RK_API rk_config* rk_config_new(void);

/* Parse a flat key-value config file; NULL on error. */
RK_API rk_config* rk_config_load(const char* path);

/* Set one dotted key, e.g. rk_config_set(c, "knn.k", "50"). */
RK_API int rk_config_set(rk_config* cfg, const char* key, const char* value);

/* Apply RADARKNN_* environment overrides ('.' spelled as '__'). */
RK_API int rk_config_apply_env(rk_config* cfg);

RK_API int rk_config_validate(const rk_config* cfg);

/* Configured output path ("" when unset); caller frees via rk_string_free. */
RK_API int rk_config_output_path(const rk_config* cfg, char** path_out);

RK_API void rk_config_free(rk_config* cfg);

/* Experiment drivers; *csv_out receives a NUL-terminated CSV document. */
RK_API int rk_run_calibrate(const rk_config* cfg, char** csv_out);
RK_API int rk_run_pfa(const rk_config* cfg, char** csv_out);
RK_API int rk_run_pd_curve(const rk_config* cfg, char** csv_out);
RK_API int rk_run_cfar_sweep(const rk_config* cfg, char** csv_out);

/* Plain-text oracle report; *all_pass_out is 1 when every check passed. */
RK_API int rk_run_oracle_check(const rk_config* cfg, char** report_out,
                               int* all_pass_out);

/* Mismatch geometry of the configured scenario: squared cosine between the
 * actual and nominal steering vectors, and the resolved Doppler offset. */
RK_API int rk_scenario_geometry(const rk_config* cfg, double* cos2_out,
                                double* offset_out);

/* Closed-form Kelly threshold with false-alarm rate pfa. */
RK_API int rk_kelly_threshold(int n, int k_s, double pfa, double* out);

RK_API void rk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
