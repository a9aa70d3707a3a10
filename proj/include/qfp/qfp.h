/* C interface to the qfp library.
 *
 * Objects are opaque handles released with the matching *_free call.
 * Every function returns a qfp_status; on failure qfp_last_error() holds a
 * message for the calling thread until its next call into the library.
 * Strings handed out by the library are freed with qfp_string_free unless
 * stated otherwise.
 */
#ifndef QFP_QFP_H
#define QFP_QFP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QFP_API __declspec(dllexport)
#else
#define QFP_API __attribute__((visibility("default")))
#endif

typedef enum qfp_status {
  QFP_OK = 0,
  QFP_ERR_ARGUMENT = 1, /* violated precondition or bad option */
  QFP_ERR_PARSE = 2,    /* polynomial text does not match the grammar */
  QFP_ERR_RANGE = 3,    /* prime, exponent or variable count out of range */
  QFP_ERR_IO = 4,       /* file could not be read or written */
  QFP_ERR_INTERNAL = 5  /* invariant failure; please report */
} qfp_status;

typedef enum qfp_certificate {
  QFP_CERT_NONE = 0,
  QFP_CERT_A = 1,         /* f^(p-2) in m^[p] */
  QFP_CERT_B = 2,         /* f^(p-1) in m^[p] and f^((p+1)(p-2)) Delta_1(f) in m^[p^2] */
  QFP_CERT_STABILIZED = 3 /* I_{m+1} = I_m inside m^[p] */
} qfp_certificate;

typedef enum qfp_method { QFP_METHOD_AUTO = 0, QFP_METHOD_EXACT = 1, QFP_METHOD_GRADED = 2 } qfp_method;

typedef enum qfp_outcome { QFP_HEIGHT_FINITE = 0, QFP_HEIGHT_INFINITE = 1, QFP_HEIGHT_UNKNOWN = 2 } qfp_outcome;

typedef struct qfp_poly qfp_poly;
/* A computed result: typed accessors for the headline values plus a JSON view. */
typedef struct qfp_report qfp_report;

typedef struct qfp_height_options {
  unsigned cutoff;        /* default 4 */
  qfp_method method;      /* default auto */
  int certificates;       /* nonzero: try CertA/CertB first (default 1) */
  uint64_t window_cap;    /* graded degree cap, 0 for none */
  uint64_t row_limit;     /* graded row budget, 0 for the default */
} qfp_height_options;

typedef struct qfp_sample_options {
  uint32_t p;
  unsigned n, d;
  uint64_t count;
  uint64_t seed;
  int smooth_origin;    /* keep isolated singularities only */
  int homogeneous_only; /* keep standard-graded draws only */
  unsigned threads;     /* 0: one per core */
  unsigned emax;        /* nu table depth, default 2 */
  int timings;          /* nonzero adds wall-clock fields (output no longer reproducible) */
  qfp_height_options height;
} qfp_sample_options;

/* Receives one JSON line (no newline) per record, in index order. Return
 * nonzero to abort the run with QFP_ERR_IO. */
typedef int (*qfp_record_sink)(const char* json_line, void* user);

QFP_API const char* qfp_version(void);
QFP_API const char* qfp_last_error(void);
QFP_API const char* qfp_status_name(qfp_status s);
QFP_API void qfp_string_free(char* s);

QFP_API void qfp_height_options_init(qfp_height_options* o);
QFP_API void qfp_sample_options_init(qfp_sample_options* o);

/* vars: comma separated names, or NULL/"" to infer x1..xn or x,y,z,w. */
QFP_API qfp_status qfp_poly_parse(const char* text, uint32_t p, const char* vars, qfp_poly** out);
QFP_API qfp_status qfp_poly_fermat(unsigned n, unsigned d, uint32_t p, qfp_poly** out);
QFP_API void qfp_poly_free(qfp_poly* f);
QFP_API qfp_status qfp_poly_to_string(const qfp_poly* f, char** out);
QFP_API qfp_status qfp_poly_info(const qfp_poly* f, uint32_t* p, unsigned* nvars, unsigned* degree);

QFP_API qfp_status qfp_nu(const qfp_poly* f, unsigned e, uint64_t* out);
QFP_API qfp_status qfp_fedder(const qfp_poly* f, int* f_pure);
QFP_API qfp_status qfp_delta1(const qfp_poly* f, qfp_poly** out);
QFP_API qfp_status qfp_certify(const qfp_poly* f, qfp_certificate* out);
QFP_API qfp_status qfp_wics(unsigned n, uint64_t D, uint64_t k, uint64_t* out);

/* nu table for e <= emax, bounds, and the exact value when it resolves. */
QFP_API qfp_status qfp_fpt(const qfp_poly* f, unsigned emax, qfp_report** out);
QFP_API qfp_status qfp_height(const qfp_poly* f, const qfp_height_options* o, qfp_report** out);
QFP_API qfp_status qfp_classify_fermat(unsigned n, unsigned d, uint32_t p, qfp_report** out);
QFP_API qfp_status qfp_moduli(unsigned n, unsigned d, uint32_t p, qfp_report** out);
/* Full record for one polynomial, the same shape the sampler writes. */
QFP_API qfp_status qfp_analyze(const qfp_poly* f, unsigned emax, const qfp_height_options* o, qfp_report** out);
/* Recomputes a record line; the report lists mismatching keys. */
QFP_API qfp_status qfp_rerun(const char* json_line, qfp_report** out);
QFP_API qfp_status qfp_sample(const qfp_sample_options* o, qfp_record_sink sink, void* user);
/* corpus_path NULL uses the corpus installed with the library. full: nonzero for the long entries. */
QFP_API qfp_status qfp_verify_paper(const char* corpus_path, int full, qfp_report** out);

QFP_API void qfp_report_free(qfp_report* r);
/* Owned by the report; valid until qfp_report_free. */
QFP_API const char* qfp_report_json(const qfp_report* r);
/* Overall verdict: F-pure for fedder-like reports, all checks passed for verify, no diffs for rerun. */
QFP_API int qfp_report_ok(const qfp_report* r);
/* Height reports only. */
QFP_API qfp_status qfp_report_height(const qfp_report* r, qfp_outcome* outcome, unsigned* height,
                                     qfp_certificate* cert);

#ifdef __cplusplus
}
#endif

#endif /* QFP_QFP_H */
