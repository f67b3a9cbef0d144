#ifndef TCWB_TCWB_H
#define TCWB_TCWB_H

/*
 * C interface to the tcwb library: cohomology rings of simplicial complexes,
 * certified bounds on category and topological complexity, k-cover
 * combinatorics, motion planners and the symmetric square of the sphere.
 *
 * Conventions
 *   - Every fallible call returns a tcwb_status; TCWB_OK is zero.
 *   - On failure tcwb_last_error() describes the problem. The message is
 *     thread-local and valid until the next failing call on that thread.
 *   - Objects are opaque handles released with their *_free function;
 *     passing NULL to a *_free function is a no-op.
 *   - Strings returned through char** are heap-allocated, NUL-terminated
 *     and released with tcwb_string_free().
 *   - Reports are JSON documents. Their keys are stable across releases.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TCWB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define TCWB_API __attribute__((visibility("default")))
#else
#define TCWB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcwb_status {
  TCWB_OK = 0,
  TCWB_ERR_INVALID_ARGUMENT = 1,
  TCWB_ERR_PARSE = 2,
  TCWB_ERR_IO = 3,
  /* A derivation pushed a lower bound above an upper bound. */
  TCWB_ERR_INCONSISTENT = 4,
  /* An exhaustive enumeration would exceed the safety guard. */
  TCWB_ERR_GUARD = 5,
  /* A construction or check failed; the report says where. */
  TCWB_ERR_VERIFICATION = 6,
  TCWB_ERR_INTERNAL = 7
} tcwb_status;

typedef enum tcwb_field { TCWB_FIELD_Q = 0, TCWB_FIELD_F2 = 1 } tcwb_field;

TCWB_API const char* tcwb_version(void);
TCWB_API const char* tcwb_last_error(void);
TCWB_API const char* tcwb_status_name(tcwb_status status);
TCWB_API void tcwb_string_free(char* s);

/* "q" / "Q" / "rational" or "f2" / "F2" / "gf2". */
TCWB_API tcwb_status tcwb_field_parse(const char* text, tcwb_field* out);

/* ---- Simplicial complexes and cohomology rings ------------------------- */

typedef struct tcwb_complex tcwb_complex;
typedef struct tcwb_ring tcwb_ring;

/* One maximal simplex per line, '#' comments. */
TCWB_API tcwb_status tcwb_complex_parse(const char* text, tcwb_complex** out);
TCWB_API tcwb_status tcwb_complex_load(const char* path, tcwb_complex** out);
TCWB_API void tcwb_complex_free(tcwb_complex* c);
TCWB_API tcwb_status tcwb_complex_info(const tcwb_complex* c, size_t* vertices, size_t* dimension);

TCWB_API tcwb_status tcwb_ring_from_complex(const tcwb_complex* c, tcwb_field field, tcwb_ring** out);
/* Any space expression accepted by tcwb_bounds_derive. */
TCWB_API tcwb_status tcwb_ring_from_expr(const char* expr, tcwb_field field, tcwb_ring** out);
TCWB_API void tcwb_ring_free(tcwb_ring* r);
TCWB_API tcwb_status tcwb_ring_total_dim(const tcwb_ring* r, size_t* out);
TCWB_API tcwb_status tcwb_ring_cup_length(const tcwb_ring* r, size_t* out);
TCWB_API tcwb_status tcwb_ring_zero_divisor_cup_length(const tcwb_ring* r, size_t* out);
/*
 * {field, dims, basis, cup_length, zero_divisor_cup_length?, axioms}.
 * zdcl is computed when total dimension <= zdcl_max_dim.
 */
TCWB_API tcwb_status tcwb_ring_report(const tcwb_ring* r, size_t zdcl_max_dim, uint64_t seed, char** json);

/* ---- Bounds engine ----------------------------------------------------- */

typedef struct tcwb_bounds_options tcwb_bounds_options;
typedef struct tcwb_bounds tcwb_bounds;

TCWB_API tcwb_status tcwb_bounds_options_new(tcwb_bounds_options** out);
TCWB_API void tcwb_bounds_options_free(tcwb_bounds_options* o);
/* Restrict ring computations to a single field (default: both). */
TCWB_API tcwb_status tcwb_bounds_options_set_field(tcwb_bounds_options* o, tcwb_field field);
/* "A>B": B is a retract of A. */
TCWB_API tcwb_status tcwb_bounds_options_add_retract(tcwb_bounds_options* o, const char* decl);
/* "A->B": A is a covering space of B. */
TCWB_API tcwb_status tcwb_bounds_options_add_covering(tcwb_bounds_options* o, const char* decl);
/* Known lower bound for cat((X x X)/diagonal). */
TCWB_API tcwb_status tcwb_bounds_options_add_quotient_cat(tcwb_bounds_options* o, const char* space, long value);
TCWB_API tcwb_status tcwb_bounds_options_disable_rule(tcwb_bounds_options* o, const char* rule);
TCWB_API tcwb_status tcwb_bounds_options_enable_rule(tcwb_bounds_options* o, const char* rule);

/* options may be NULL. Returns TCWB_ERR_INCONSISTENT naming both certificates. */
TCWB_API tcwb_status tcwb_bounds_derive(const char* expr, const tcwb_bounds_options* options, tcwb_bounds** out);
TCWB_API void tcwb_bounds_free(tcwb_bounds* b);
/*
 * quantity: cat, tc, tcm, cuplen, zdcl, dim, conn. node: expression text or
 * NULL for the root. *hi_bounded is 0 when the upper end is unbounded.
 */
TCWB_API tcwb_status tcwb_bounds_interval(const tcwb_bounds* b, const char* node, const char* quantity, long* lo,
                                          long* hi, int* hi_bounded);
TCWB_API tcwb_status tcwb_bounds_report(const tcwb_bounds* b, char** json);
/* side: "lo" or "hi". Human-readable derivation tree. */
TCWB_API tcwb_status tcwb_bounds_explain(const tcwb_bounds* b, const char* node, const char* quantity, const char* side,
                                         char** text);
TCWB_API tcwb_status tcwb_monoidal_criterion_applicable(long connectivity, long dim, long tc_lo, int* out);

/* ---- Covers ------------------------------------------------------------- */

typedef struct tcwb_set_system tcwb_set_system;

/* First line N, then one set per line; "-" is the empty set. */
TCWB_API tcwb_status tcwb_set_system_parse(const char* text, tcwb_set_system** out);
TCWB_API tcwb_status tcwb_set_system_load(const char* path, tcwb_set_system** out);
TCWB_API void tcwb_set_system_free(tcwb_set_system* s);
TCWB_API tcwb_status tcwb_set_system_to_text(const tcwb_set_system* s, char** text);

/* k = 0 asks for the minimal k. *is_cover is 0 with the witness in json. */
TCWB_API tcwb_status tcwb_cover_verify(const tcwb_set_system* s, size_t k, int* is_cover, char** json);
/* Extends an (n+1)-set cover to m+1 sets; *out may be NULL. */
TCWB_API tcwb_status tcwb_cover_extend(const tcwb_set_system* s, size_t m, tcwb_set_system** out, char** json);
/*
 * a: (n+1)-cover, b: (m+1)-cover, each with n+m+1 sets. On a violated
 * hypothesis returns TCWB_ERR_VERIFICATION and still fills json.
 */
TCWB_API tcwb_status tcwb_cover_product(const tcwb_set_system* a, const tcwb_set_system* b, size_t n, size_t m,
                                        char** json);
TCWB_API tcwb_status tcwb_cover_nary(const tcwb_set_system* const* systems, const size_t* strengths, size_t count,
                                     char** json);

/* ---- Motion planners ---------------------------------------------------- */

typedef struct tcwb_planner tcwb_planner;

typedef struct tcwb_verify_config {
  size_t random_pairs;   /* used when grid == 0 and pairs_file == NULL */
  uint64_t seed;
  size_t grid;           /* nonzero: all pairs of an n-point grid */
  const char* pairs_file;
  size_t diagonal;
  size_t continuity_pairs;
  double tol;
} tcwb_verify_config;

TCWB_API void tcwb_verify_config_default(tcwb_verify_config* c);

/* Circles and tori (Lie planner), S<n> for n >= 2, wedges of two tori. */
TCWB_API tcwb_status tcwb_planner_create(const char* space, tcwb_planner** out);
TCWB_API void tcwb_planner_free(tcwb_planner* p);
TCWB_API tcwb_status tcwb_planner_pieces(const tcwb_planner* p, size_t* out);
/* {name, space, pieces, reserved, regions:[names]} */
TCWB_API tcwb_status tcwb_planner_describe(const tcwb_planner* p, char** json);
/* pair: "x coords | y coords". Samples the path at `samples` + 1 times. */
TCWB_API tcwb_status tcwb_planner_plan(const tcwb_planner* p, const char* pair, size_t samples, char** json);
/* Returns TCWB_OK when the check ran; *passed carries the verdict. */
TCWB_API tcwb_status tcwb_planner_verify(const tcwb_planner* p, const tcwb_verify_config* config, int* passed,
                                         char** json);

/* ---- Symmetric square of the sphere ------------------------------------- */

/* part: "roundtrip", "equivariance", "cover" or "all". */
TCWB_API tcwb_status tcwb_ak_verify(const char* part, size_t samples, uint64_t seed, int* passed, char** json);
/* Complex literals "a+bi"; for points on the sphere also "inf". */
TCWB_API tcwb_status tcwb_ak_roots(const char* a, const char* b, const char* c, char** json);
TCWB_API tcwb_status tcwb_ak_quadratic(const char* w1, const char* w2, char** json);
TCWB_API tcwb_status tcwb_ak_classify(const char* w1, const char* w2, char** json);

#ifdef __cplusplus
}
#endif

#endif
