#ifndef REBOUND_REBOUND_H
#define REBOUND_REBOUND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RB_BUILDING_LIBRARY)
#define RB_API __attribute__((visibility("default")))
#else
#define RB_API
#endif

typedef struct rb_dataset rb_dataset;
typedef struct rb_config rb_config;

typedef enum rb_status {
  RB_OK = 0,
  RB_ERR_INVALID_ARGUMENT = 1,
  RB_ERR_PRECONDITION = 2,
  RB_ERR_NUMERIC = 3,
  RB_ERR_PARSE = 4,
  RB_ERR_IO = 5,
  RB_ERR_INTERNAL = 6
} rb_status;

typedef enum rb_sweep_param {
  RB_SWEEP_FROM_CONFIG = -1,
  RB_SWEEP_A2B2 = 0,
  RB_SWEEP_A1B1 = 1
} rb_sweep_param;

RB_API const char* rb_version(void);
RB_API const char* rb_status_name(rb_status status);

/* Message and error-kind name of the last failure on the calling thread. */
RB_API const char* rb_last_error(void);
RB_API const char* rb_last_error_kind(void);

/* Strings returned through char** out-parameters are owned by the caller. */
RB_API void rb_string_free(char* s);

RB_API rb_status rb_dataset_read_csv(const char* path, rb_dataset** out);
RB_API rb_status rb_dataset_from_summaries(size_t k, const int* m, const double* ybar, double sse, rb_dataset** out);
RB_API void rb_dataset_free(rb_dataset* ds);
RB_API size_t rb_dataset_group_count(const rb_dataset* ds);
RB_API double rb_dataset_grand_mean(const rb_dataset* ds);
RB_API rb_status rb_dataset_stats(const rb_dataset* ds, char** json_out);

RB_API rb_status rb_config_load(const char* path, rb_config** out);
/* base_dir resolves relative data paths; NULL means the working directory. */
RB_API rb_status rb_config_parse(const char* text, const char* base_dir, rb_config** out);
RB_API void rb_config_free(rb_config* cfg);
RB_API rb_status rb_config_set_seed(rb_config* cfg, uint64_t seed);
/* Replaces the configured data source with a copy of ds. */
RB_API rb_status rb_config_set_data(rb_config* cfg, const rb_dataset* ds);
/* *path_out is NULL when the config names no output file. */
RB_API rb_status rb_config_output_path(const rb_config* cfg, char** path_out);
RB_API rb_status rb_config_iterations(const rb_config* cfg, uint64_t* out);

RB_API rb_status rb_burnin(const rb_config* cfg, char** report_out);
/* values may be NULL to use the values listed in the config. */
RB_API rb_status rb_sweep(const rb_config* cfg, rb_sweep_param param, const double* values, size_t count,
                          char** csv_out);
/* Streams the trace CSV to path, or to stdout when path is NULL. */
RB_API rb_status rb_simulate(const rb_config* cfg, uint64_t iterations, const char* path);
/* cfg may be NULL for the built-in certificate cases; suite NULL or "all" runs every suite. */
RB_API rb_status rb_validate(const rb_config* cfg, const char* suite, uint64_t seed, char** report_out,
                             int* all_passed);

RB_API rb_status rb_rosenthal_bound(double gamma, double b, double epsilon, double d_R, double r, double V0,
                                    double n, double* out);
RB_API rb_status rb_rt_bound(double rho, double L, double epsilon, double d_RT, double W0, double k,
                             double* out);

#ifdef __cplusplus
}
#endif

#endif
