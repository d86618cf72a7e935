/* fqdirs: direction sets of planar point sets over small finite fields.
 *
 * The library exposes a C interface over the C++ core so that it can be
 * loaded from any language with a foreign-function layer. All functions
 * return a status code; payloads come back as malloc'd JSON strings that
 * the caller releases with fqdirs_string_free. Handles are opaque and
 * must be destroyed with their paired destructor.
 */
#ifndef FQDIRS_H
#define FQDIRS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FQDIRS_API __declspec(dllexport)
#else
#define FQDIRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fqdirs_status {
  FQDIRS_OK = 0,
  FQDIRS_EINVAL = 1,   /* bad argument or configuration */
  FQDIRS_EPARSE = 2,   /* malformed element, point, set, or polynomial text */
  FQDIRS_EDOMAIN = 3,  /* mathematically out of range (size, slope, field) */
  FQDIRS_ECAP = 4,     /* enumeration would exceed the configured cap */
  FQDIRS_EABORT = 5,   /* the line callback stopped the stream */
  FQDIRS_ECHECK = 6,   /* a verification run found failures */
  FQDIRS_EINTERNAL = 7 /* unexpected internal error */
} fqdirs_status;

/* An immutable field context: F_p (ext = 1) or F_{p^2} (ext = 2), with p an
 * odd prime. Extension fields are presented as F_p[w] / (w^2 - n) for the
 * least quadratic non-residue n of p. */
typedef struct fqdirs_field fqdirs_field;

FQDIRS_API fqdirs_status fqdirs_field_create(uint32_t p, uint32_t ext, fqdirs_field** out);
FQDIRS_API void fqdirs_field_destroy(fqdirs_field* f);
FQDIRS_API uint64_t fqdirs_field_order(const fqdirs_field* f);
FQDIRS_API uint32_t fqdirs_field_char(const fqdirs_field* f);
FQDIRS_API uint32_t fqdirs_field_degree(const fqdirs_field* f);
/* The reduction constant n, or 0 for prime fields. */
FQDIRS_API uint32_t fqdirs_field_nonresidue(const fqdirs_field* f);

/* Releases a string returned through any char** out parameter. */
FQDIRS_API void fqdirs_string_free(char* s);

/* A thread-local description of the most recent failure in this thread.
 * Valid until the next fqdirs call on the thread; never free it. */
FQDIRS_API const char* fqdirs_last_error(void);

FQDIRS_API const char* fqdirs_version(void);

/* Directions determined by the Cartesian square A x A. `set_csv` is a
 * comma-separated element list such as "0,1,1+1w". The result is a JSON
 * object with the sorted direction list and its count. */
FQDIRS_API fqdirs_status fqdirs_directions(const fqdirs_field* f, const char* set_csv,
                                           char** out_json);

/* Full single-direction profile of A x A at the given slope: the lexicon
 * polynomial R, its reductions H and Q, both multiplicity parameters, and
 * the witness root when one exists. Fails with FQDIRS_EDOMAIN when the
 * slope is not determined or |A|^2 exceeds the field order. */
FQDIRS_API fqdirs_status fqdirs_redei(const fqdirs_field* f, const char* set_csv,
                                      const char* slope, char** out_json);

/* Streaming scan callback. Receives one complete record line (no trailing
 * newline). Return nonzero to continue, zero to abort the scan. */
typedef int (*fqdirs_line_cb)(void* user, const char* line, size_t len);

typedef struct fqdirs_scan_config {
  uint32_t p;
  uint32_t ext;
  uint32_t size_min;
  uint32_t size_max;
  int sample_mode;      /* 0 = exhaustive, 1 = sampled */
  uint64_t samples;     /* candidate count in sampled mode */
  uint64_t seed;
  double k_constant;    /* window threshold multiplier */
  uint64_t cap;         /* hard ceiling on candidates */
  uint32_t jobs;        /* worker threads; 0 or 1 = sequential */
  int survey;           /* 1 = skip per-direction profiles */
  int csv;              /* 1 = CSV records, 0 = JSON lines */
} fqdirs_scan_config;

FQDIRS_API void fqdirs_scan_config_init(fqdirs_scan_config* cfg);

typedef struct fqdirs_scan_result {
  uint64_t records;
  uint64_t failures;
} fqdirs_scan_result;

/* Scans subsets A of the field, one record per set A x A. Records stream
 * through `cb`; the JSON summary lands in out_summary. A zero return from
 * the callback yields FQDIRS_EABORT. FQDIRS_ECHECK reports that the scan
 * completed with failing records. */
FQDIRS_API fqdirs_status fqdirs_scan_products(const fqdirs_scan_config* cfg, fqdirs_line_cb cb,
                                              void* user, fqdirs_scan_result* out,
                                              char** out_summary);

/* Scans sampled point sets of the affine plane (sample mode only). */
FQDIRS_API fqdirs_status fqdirs_scan_pointsets(const fqdirs_scan_config* cfg, fqdirs_line_cb cb,
                                               void* user, fqdirs_scan_result* out,
                                               char** out_summary);

/* Exhaustive minimum of |D(A)| over all size-`set_size` subsets, reported
 * separately for prime-field cosets and everything else. */
FQDIRS_API fqdirs_status fqdirs_min_directions(uint32_t p, uint32_t ext, uint32_t set_size,
                                               uint64_t cap, char** out_json);

typedef struct fqdirs_verify_budget {
  uint32_t max_subset_size;
  uint64_t exhaustive_cap;   /* switch to sampling above this many sets */
  uint64_t sample_sets;
  uint64_t plunnecke_trials;
  uint64_t pigeonhole_trials;
  uint64_t pair_samples;
} fqdirs_verify_budget;

FQDIRS_API void fqdirs_verify_budget_init(fqdirs_verify_budget* b);

typedef struct fqdirs_verify_result {
  int all_pass;
  uint64_t sections;
  uint64_t failures;
} fqdirs_verify_result;

/* Runs the lemma suite (dilate cardinality, sum growth, subfield closure,
 * multiplicity collapse, direction pigeonhole) over the chosen field.
 * FQDIRS_ECHECK signals at least one failing section; the JSON report is
 * produced either way. */
FQDIRS_API fqdirs_status fqdirs_verify_lemmas(uint32_t p, uint32_t ext, uint64_t seed,
                                              const fqdirs_verify_budget* budget,
                                              fqdirs_verify_result* out, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FQDIRS_H */
