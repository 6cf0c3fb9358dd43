/* C interface to the tinv library. All strings are UTF-8 and NUL-terminated.
   Reports are JSON documents with sorted keys; see README.md for the schema. */
#ifndef TINV_TINV_H
#define TINV_TINV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TINV_API __declspec(dllexport)
#else
#define TINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tinv_status {
  TINV_OK = 0,
  TINV_INVALID_INPUT = 2,
  TINV_RESOURCE_LIMIT = 3,
  TINV_IO_ERROR = 4,
  TINV_INTERNAL_ERROR = 5
} tinv_status;

typedef enum tinv_filter { TINV_FILTER_ALL = 0, TINV_FILTER_INVARIANT = 1, TINV_FILTER_NILPOTENT = 2 } tinv_filter;

typedef struct tinv_report tinv_report;
typedef struct tinv_algebra tinv_algebra;

TINV_API const char* tinv_version(void);
/* Message for the most recent failing call on this thread; "" if none. */
TINV_API const char* tinv_last_error(void);

/* Operation names accepted by tinv_run, in sorted order. */
TINV_API size_t tinv_operation_count(void);
TINV_API const char* tinv_operation_name(size_t index);

/* Runs a named operation on a JSON parameter object. */
TINV_API tinv_status tinv_run(const char* operation, const char* params_json, tinv_report** out);
/* The built-in verification grid as a JSON array. Owned by the library. */
TINV_API const char* tinv_default_grid(void);

TINV_API const char* tinv_report_json(const tinv_report* report);
TINV_API int tinv_report_passed(const tinv_report* report);
TINV_API void tinv_report_free(tinv_report* report);

TINV_API tinv_status tinv_gl2_landmarks(uint32_t p, uint32_t r, tinv_report** out);
TINV_API tinv_status tinv_sl2_landmarks(uint32_t p, uint32_t r, tinv_report** out);
TINV_API tinv_status tinv_quillen_verify(uint32_t p, uint32_t r, tinv_report** out);
TINV_API tinv_status tinv_exponent_check(uint32_t n, uint32_t p, uint32_t r, uint64_t samples, uint64_t seed,
                                         tinv_report** out);
TINV_API tinv_status tinv_essential_kernel(uint32_t n, uint32_t p, tinv_report** out);
TINV_API tinv_status tinv_theorem_lowest_gl(uint32_t n, uint32_t p, uint32_t r, tinv_report** out);
TINV_API tinv_status tinv_theorem_borel2(uint32_t n, uint32_t r, tinv_report** out);

TINV_API tinv_status tinv_algebra_from_json(const char* spec_json, tinv_algebra** out);
TINV_API tinv_status tinv_algebra_gl2(uint32_t p, uint32_t r, tinv_algebra** out);
TINV_API tinv_status tinv_algebra_sl2(uint32_t p, uint32_t r, tinv_algebra** out);
TINV_API tinv_status tinv_algebra_gr_un(uint32_t n, uint32_t p, uint32_t r, tinv_algebra** out);
TINV_API size_t tinv_algebra_generator_count(const tinv_algebra* alg);
/* Canonical spec JSON and its hash, owned by the handle. */
TINV_API const char* tinv_algebra_json(const tinv_algebra* alg);
TINV_API const char* tinv_algebra_hash(const tinv_algebra* alg);
/* Fills dims[0..max_degree]; dims must hold max_degree + 1 entries. */
TINV_API tinv_status tinv_algebra_series(const tinv_algebra* alg, unsigned max_degree, tinv_filter filter,
                                         uint64_t* dims);
TINV_API void tinv_algebra_free(tinv_algebra* alg);

#ifdef __cplusplus
}
#endif

#endif
