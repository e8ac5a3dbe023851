/* C interface to the zero-cycle center library. */
#ifndef ZCC_ZCC_H
#define ZCC_ZCC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  ifdef ZCC_BUILDING
#    define ZCC_API __declspec(dllexport)
#  else
#    define ZCC_API __declspec(dllimport)
#  endif
#else
#  define ZCC_API __attribute__((visibility("default")))
#endif

/* Values double as process exit codes for the command line tool. */
typedef enum zcc_status {
  ZCC_OK = 0,
  ZCC_ERR_INPUT = 2,
  ZCC_ERR_NUMERIC = 3,
  ZCC_ERR_CAP = 4,
  ZCC_ERR_INTERNAL = 5
} zcc_status;

typedef struct zcc_problem zcc_problem;

ZCC_API zcc_status zcc_problem_from_file(const char* path, zcc_problem** out);
ZCC_API zcc_status zcc_problem_from_string(const char* text, zcc_problem** out);
/* which = 1 or 2 */
ZCC_API zcc_status zcc_problem_builtin(int which, zcc_problem** out);
ZCC_API void zcc_problem_free(zcc_problem* p);

/* Keys: "tol" (tracker Newton tolerance), "seed", "max_degree". */
ZCC_API zcc_status zcc_problem_set_option(zcc_problem* p, const char* key, const char* value);

/* Outputs are heap strings released with zcc_string_free. */
ZCC_API zcc_status zcc_analyze(const zcc_problem* p, char** json_out);
ZCC_API zcc_status zcc_summary(const zcc_problem* p, char** text_out);

/* eps_range is "a:b:c". Pass t_circle > 0 for a circle, otherwise t_segment "z1:z2".
   warnings_out (optional) receives newline-separated warnings. */
ZCC_API zcc_status zcc_grid(const zcc_problem* p, const char* eps_range, double t_circle, const char* t_segment,
                            int t_points, char** csv_out, char** warnings_out);

ZCC_API void zcc_string_free(char* s);

/* Message of the last failed call on this thread; empty after success. */
ZCC_API const char* zcc_last_error(void);
ZCC_API const char* zcc_version(void);

#ifdef __cplusplus
}
#endif

#endif
