#ifndef CYQ_H
#define CYQ_H

#if defined(_WIN32)
#  if defined(CYQ_BUILDING)
#    define CYQ_API __declspec(dllexport)
#  else
#    define CYQ_API __declspec(dllimport)
#  endif
#else
#  define CYQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as the command-line exit codes. */
typedef enum cyq_status {
  CYQ_OK = 0,
  CYQ_CHECK_FAILED = 1,
  CYQ_INVALID_QUIVER = 2,
  CYQ_PARSE_ERROR = 3,
  CYQ_INADMISSIBLE_POTENTIAL = 4,
  CYQ_INADMISSIBLE_TRANSFORM = 5,
  CYQ_INVALID_ARGUMENT = 6,
  CYQ_INTERNAL = 7
} cyq_status;

typedef struct cyq_quiver cyq_quiver;
typedef struct cyq_series cyq_series;

/* Message of the last failure on this thread; empty after success. */
CYQ_API const char* cyq_last_error(void);
CYQ_API const char* cyq_version(void);

/* Every char* returned through an out parameter must go back here. */
CYQ_API void cyq_string_free(char* s);

/* Quivers. JSON layout: {"d", "vertices", "arrows": [{"id","src","tgt","deg"}], "half"}. */
CYQ_API cyq_status cyq_quiver_from_json(const char* json, cyq_quiver** out);
CYQ_API cyq_status cyq_quiver_from_ext_table(const char* ext_json, const char* orientation_json,
                                             cyq_quiver** out);
CYQ_API cyq_status cyq_quiver_double(const cyq_quiver* q, cyq_quiver** out);
CYQ_API cyq_status cyq_quiver_to_json(const cyq_quiver* q, char** out);
CYQ_API cyq_status cyq_quiver_ext_table(const cyq_quiver* q, char** out_json);
CYQ_API int cyq_quiver_dimension(const cyq_quiver* q);
CYQ_API int cyq_quiver_is_half(const cyq_quiver* q);
CYQ_API void cyq_quiver_free(cyq_quiver* q);

/* Validation writes {"ok", "violations": [...]} and returns CYQ_INVALID_QUIVER when not ok. */
CYQ_API cyq_status cyq_validate_quiver_json(const char* json, char** report_json);
CYQ_API cyq_status cyq_validate_ext_table_json(const char* json, char** report_json);

/* Potentials over the alphabet of a double quiver (a half quiver is doubled first). */
enum {
  CYQ_PARSE_ANY = 0,
  CYQ_PARSE_HOMOGENEOUS = 1, /* every term of degree 3-d */
  CYQ_PARSE_MINIMAL = 2      /* every term of length at least 3 */
};
CYQ_API cyq_status cyq_series_parse(const cyq_quiver* qbar, const char* text, int flags,
                                    cyq_series** out, char** warnings_json);
CYQ_API cyq_status cyq_series_print(const cyq_series* p, char** out);
CYQ_API cyq_status cyq_series_canonical(const cyq_quiver* qbar, cyq_series** out);
CYQ_API cyq_status cyq_series_lift(const cyq_series* w0, cyq_series** out);
CYQ_API cyq_status cyq_series_restrict(const cyq_series* w, cyq_series** out);
CYQ_API cyq_status cyq_series_bracket(const cyq_series* f, const cyq_series* g, cyq_series** out);
CYQ_API cyq_status cyq_series_derivative(const cyq_series* p, const char* coordinate, char** out);
CYQ_API int cyq_series_is_zero(const cyq_series* p);
CYQ_API int cyq_series_equal(const cyq_series* a, const cyq_series* b);
CYQ_API void cyq_series_free(cyq_series* p);

/* Checks. The report is JSON keyed by mode; the status is CYQ_CHECK_FAILED if any check fails. */
enum {
  CYQ_CHECK_MASTER = 1,
  CYQ_CHECK_MC = 2,
  CYQ_CHECK_AINFTY = 4,
  CYQ_CHECK_ALL = 7
};
/* max_arity <= 0 selects the arity that covers every term of w. */
CYQ_API cyq_status cyq_check(const cyq_series* w, int modes, int max_arity, char** report_json);

/* Gauge actions, truncated at word length `truncation` (at least 3). */
CYQ_API cyq_status cyq_gauge_automorphism(const cyq_series* w, const char* transform_json,
                                          int truncation, cyq_series** out);
CYQ_API cyq_status cyq_gauge_flow(const cyq_series* w, const char* hamiltonian, int truncation,
                                  cyq_series** out);

/* Structure constants as [{"n", "inputs", "output": [{"basis","coeff"}]}]. */
CYQ_API cyq_status cyq_extract_products(const cyq_series* w, int max_arity, char** out_json);

/* Cohomology rank table for cyclic degrees 1..window, with the comparison-map probe. */
CYQ_API cyq_status cyq_dgla_report(const cyq_quiver* qbar, int window, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
