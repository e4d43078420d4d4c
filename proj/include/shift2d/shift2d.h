#ifndef SHIFT2D_H
#define SHIFT2D_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(S2D_BUILDING)
#    define S2D_API __declspec(dllexport)
#  else
#    define S2D_API __declspec(dllimport)
#  endif
#else
#  define S2D_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum s2d_status {
  S2D_OK = 0,
  S2D_ERR_INVALID_ARGUMENT = 1,
  S2D_ERR_NOT_PSD = 2,
  S2D_ERR_NON_COMMUTING = 3,
  S2D_ERR_NON_POSITIVE_WEIGHT = 4,
  S2D_ERR_OUT_OF_CLASS = 5,
  S2D_ERR_SCHEMA = 6,
  S2D_ERR_IO = 7,
  S2D_ERR_LEVEL_OUT_OF_RANGE = 8,
  S2D_ERR_NO_STABILIZATION = 9,
  S2D_ERR_CAP_TOO_SMALL = 10,
  S2D_ERR_FORMULA_MISMATCH = 11,
  S2D_ERR_INCONSISTENT_LATTICE = 12,
  S2D_ERR_OVERFLOW = 13,
  S2D_ERR_INTERNAL = 14
} s2d_status;

S2D_API const char* s2d_status_name(s2d_status status);

/* Message of the most recent failing call on this thread ("" if none). */
S2D_API const char* s2d_last_error(void);

/* Tolerance arguments: a value <= 0 selects the default relative slack. */
S2D_API double s2d_default_tolerance(void);

/* ---- 2x2 kernel ---- */

typedef struct s2d_sym2 {
  double a11;
  double a12;
  double a22;
} s2d_sym2;

typedef struct s2d_sqrt_diff {
  int psd;
  s2d_sym2 diff;
  double trace;
  double det;
  double lambda_min;
} s2d_sqrt_diff;

S2D_API s2d_status s2d_sqrt_psd(s2d_sym2 m, double tol, s2d_sym2* out);
S2D_API s2d_status s2d_is_psd(s2d_sym2 m, double tol, int* psd, double* lambda_min);
S2D_API s2d_status s2d_sqrt_diff_psd(s2d_sym2 l, s2d_sym2 r, double tol, s2d_sqrt_diff* out);
S2D_API s2d_status s2d_flat_extension(s2d_sym2 m, double tol, int* flat, double* w);

/* ---- weight diagrams ---- */

typedef struct s2d_diagram s2d_diagram;

/* spec: drury-arveson | helton-howe | ex215:a,b | ex216:a,b | axy:a,x,y | embed:FILE */
S2D_API s2d_status s2d_diagram_named(const char* spec, s2d_diagram** out);
S2D_API s2d_status s2d_diagram_axy(double a, double x, double y, s2d_diagram** out);
/* alpha and beta are n1*n2 arrays indexed [k1*n2 + k2]; tail is "constant" or "formula:<id>". */
S2D_API s2d_status s2d_diagram_create(const char* name, int n1, int n2, const double* alpha, const double* beta,
                                      const char* tail, s2d_diagram** out);
S2D_API s2d_status s2d_diagram_load(const char* path, s2d_diagram** out);
S2D_API s2d_status s2d_diagram_save(const s2d_diagram* d, const char* path);
S2D_API void s2d_diagram_free(s2d_diagram* d);

S2D_API const char* s2d_diagram_name(const s2d_diagram* d);
S2D_API int s2d_diagram_has_formula_tail(const s2d_diagram* d);
S2D_API s2d_status s2d_diagram_weight(const s2d_diagram* d, int k1, int k2, double* alpha, double* beta);
S2D_API s2d_status s2d_diagram_moment(const s2d_diagram* d, int k1, int k2, double* gamma);
S2D_API s2d_status s2d_diagram_stabilization(const s2d_diagram* d, int* level);
/* Mid block i (1..n) of L|K(n) and R|K(n). */
S2D_API s2d_status s2d_diagram_block(const s2d_diagram* d, int n, int i, s2d_sym2* l, s2d_sym2* r);
S2D_API s2d_status s2d_diagram_head_tail(const s2d_diagram* d, int n, double* l_head, double* l_tail);

typedef struct s2d_validation {
  int ok;
  int violations;
  double worst;
  int first_k1;
  int first_k2;
} s2d_validation;

S2D_API s2d_status s2d_validate(const s2d_diagram* d, s2d_validation* out);

/* ---- tests ---- */

typedef enum s2d_verdict_code { S2D_PASS = 0, S2D_FAIL = 1, S2D_INCONCLUSIVE = 2 } s2d_verdict_code;

typedef enum s2d_witness_kind {
  S2D_WITNESS_NONE = 0,
  S2D_WITNESS_BLOCK = 1,
  S2D_WITNESS_LATTICE_POINT = 2,
  S2D_WITNESS_LAMBDA = 3
} s2d_witness_kind;

typedef struct s2d_witness {
  int kind;
  int n;
  int index;
  int k1;
  int k2;
  double lambda_re;
  double lambda_im;
  double value;
  double trace;
  double det;
  double lhs;
  double rhs;
  char detail[128];
} s2d_witness;

typedef struct s2d_verdict {
  int verdict;
  int levels_checked;
  int by_grid;
  int routes_agree; /* -1 when not cross-checked */
  double margin;
  s2d_witness witness;
  size_t failure_count;
} s2d_verdict;

typedef enum s2d_test {
  S2D_TEST_SIX_POINT = 0,
  S2D_TEST_L_POSITIVITY = 1,
  S2D_TEST_SEMI_HYPO = 2,
  S2D_TEST_WEAK_HYPO = 3,
  S2D_TEST_QUASINORMAL = 4,
  S2D_TEST_K_HYPO = 5
} s2d_test;

/* ncap <= 0 selects the automatic cap.  k is used by S2D_TEST_K_HYPO only.
   Up to max_failures failure witnesses are copied to failures (may be NULL). */
S2D_API s2d_status s2d_run_test(const s2d_diagram* d, s2d_test test, int k, int ncap, double tol, s2d_verdict* out,
                                s2d_witness* failures, size_t max_failures);

typedef struct s2d_entries_commute {
  int l;
  int r;
  int r_literal;
  int weight;
  int cap;
} s2d_entries_commute;

S2D_API s2d_status s2d_entries_commute_test(const s2d_diagram* d, int ncap, s2d_entries_commute* out);

/* ---- the family W(a,x,y) ---- */

typedef enum s2d_label {
  S2D_SUBNORMAL = 0,
  S2D_HYPO_NOT_SUB = 1,
  S2D_SH_AND_WH_NOT_H = 2,
  S2D_SH_NOT_WH = 3,
  S2D_WH_NOT_SH = 4,
  S2D_NEITHER = 5,
  S2D_OUT = 6
} s2d_label;

typedef enum s2d_method { S2D_CLOSED_FORM = 0, S2D_DIRECT = 1 } s2d_method;

S2D_API const char* s2d_label_name(int label);
S2D_API const char* s2d_method_name(int method);

typedef struct s2d_region {
  double a;
  double x;
  double y;
  int label;
  int sub;
  int hyp;
  int sh;
  int wh;
  double margin_sub;
  double margin_hypo;
  double margin_sh;
  double margin_wh;
  int boundary;
  int method;
} s2d_region;

S2D_API s2d_status s2d_classify(double a, double x, double y, int method, double tol, s2d_region* out);

/* ---- atlas ---- */

typedef struct s2d_atlas_params {
  double a;
  double xmin;
  double xmax;
  double ymin;
  double ymax;
  int nx;
  int ny;
  int method;
  int threads; /* 0: hardware concurrency */
  double tol;
} s2d_atlas_params;

typedef struct s2d_atlas s2d_atlas;

S2D_API void s2d_atlas_params_default(s2d_atlas_params* p);
S2D_API s2d_status s2d_atlas_run(const s2d_atlas_params* p, s2d_atlas** out);
S2D_API size_t s2d_atlas_size(const s2d_atlas* atlas);
S2D_API s2d_status s2d_atlas_row(const s2d_atlas* atlas, size_t i, s2d_region* row);
S2D_API s2d_status s2d_atlas_write_csv(const s2d_atlas* atlas, const char* path);
S2D_API s2d_status s2d_atlas_write_svg(const s2d_atlas* atlas, const char* path);
S2D_API void s2d_atlas_free(s2d_atlas* atlas);

/* ---- semi-hyponormality formula audit ---- */

typedef struct s2d_e3_audit {
  double a;
  double xmin;
  double xmax;
  double ymin;
  double ymax;
  int nx;
  int ny;
  long points;
  long valid;
  long printed_mismatch;
  long printed_mismatch_outside_band;
  long corrected_mismatch;
  long corrected_mismatch_outside_band;
  long closed_form_mismatch;
} s2d_e3_audit;

S2D_API s2d_status s2d_e3_audit_run(double a, double xmin, double xmax, double ymin, double ymax, int nx, int ny,
                                    double tol, s2d_e3_audit* out);
/* Writes the text report (NUL-terminated, truncated to len) and returns its full length. */
S2D_API size_t s2d_e3_audit_format(const s2d_e3_audit* audit, char* buf, size_t len);

#ifdef __cplusplus
}
#endif

#endif
