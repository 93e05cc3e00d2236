#ifndef DBLCAT_CAPI_H
#define DBLCAT_CAPI_H

/* C interface to the dblcat library: opaque handles, integer status codes,
 * strings owned by the library and released with dbl_string_free. Inputs are
 * either document text (see docs/format.md) or specs of the form
 * "corpus:NAME" / "file:PATH". All functions are safe to call from several
 * threads on distinct handles. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dbl_cat dbl_cat;         /* finite double category */
typedef struct dbl_twocat dbl_twocat;   /* finite 2-category */
typedef struct dbl_fun dbl_fun;         /* double functor */
typedef struct dbl_twofun dbl_twofun;   /* 2-functor */
typedef struct dbl_report dbl_report;   /* check report */

typedef enum {
  DBL_OK = 0,
  DBL_E_PARSE = 1,
  DBL_E_VALIDATE = 2,
  DBL_E_UNKNOWN_NAME = 3,
  DBL_E_PRECONDITION = 4,
  DBL_E_LIMIT = 5,        /* caps: infinite tensor, saturation, depth */
  DBL_E_BADARG = 6,
  DBL_E_INTERNAL = 7
} dbl_status;

/* Message for the most recent failure on this thread. */
const char* dbl_last_error(void);

/* Loading: spec is "corpus:NAME", "file:PATH" or raw document text. */
dbl_status dbl_cat_load(const char* spec, dbl_cat** out);
dbl_status dbl_twocat_load(const char* spec, dbl_twocat** out);
dbl_status dbl_fun_load(const char* spec, dbl_fun** out);
dbl_status dbl_twofun_load(const char* spec, dbl_twofun** out);

void dbl_cat_free(dbl_cat*);
void dbl_twocat_free(dbl_twocat*);
void dbl_fun_free(dbl_fun*);
void dbl_twofun_free(dbl_twofun*);
void dbl_report_free(dbl_report*);
void dbl_string_free(char*);

/* Canonical document text; caller frees with dbl_string_free. */
dbl_status dbl_cat_serialize(const dbl_cat*, char** out);
dbl_status dbl_twocat_serialize(const dbl_twocat*, char** out);
dbl_status dbl_fun_serialize(const dbl_fun*, char** out);

/* Checks. Reports carry a verdict plus located witnesses. */
dbl_status dbl_check_whi(const dbl_cat*, dbl_report** out);
dbl_status dbl_check_cofibrant(const dbl_cat*, dbl_report** out);
dbl_status dbl_check_dblbieq(const dbl_fun*, dbl_report** out);
dbl_status dbl_check_trivfib(const dbl_fun*, dbl_report** out);
dbl_status dbl_check_jwinj(const dbl_fun*, dbl_report** out);
dbl_status dbl_check_weq_whi_source(const dbl_fun*, dbl_report** out);
dbl_status dbl_check_weq_truncated(const dbl_fun*, int depth, dbl_report** out);
dbl_status dbl_check_lackfib(const dbl_twofun*, dbl_report** out);
dbl_status dbl_check_bieq2(const dbl_twofun*, dbl_report** out);

int dbl_report_verdict(const dbl_report*); /* 1 pass, 0 fail */
/* format: "text" or "machine" (stable JSON). */
dbl_status dbl_report_render(const dbl_report*, const char* format, char** out);
dbl_status dbl_report_parse(const char* json, dbl_report** out);

/* Constructions. */
dbl_status dbl_construct_product(const dbl_cat*, const dbl_cat*, dbl_cat** out);
dbl_status dbl_construct_gray(const dbl_cat*, const dbl_cat*, int cap, dbl_cat** out);
/* The Gray projection to the cartesian product, as a functor. */
dbl_status dbl_construct_gray_projection(const dbl_cat*, const dbl_cat*, int cap,
                                         dbl_fun** out);
dbl_status dbl_construct_hsim(const dbl_twocat*, dbl_cat** out);
dbl_status dbl_construct_hsim_inclusion(const dbl_twocat*, dbl_fun** out);
dbl_status dbl_construct_quintet(const dbl_twocat*, dbl_cat** out);
dbl_status dbl_construct_transpose(const dbl_cat*, dbl_cat** out);
/* Textual summary of the truncated replacement (words, data, flags). */
dbl_status dbl_construct_whi_replacement(const dbl_cat*, int depth, char** out);

/* The constructive Whitehead inverse: runs the construction, validates every
 * output and the certification round trip; the report records the outcome. */
dbl_status dbl_whitehead(const dbl_fun*, dbl_report** out);

#ifdef __cplusplus
}
#endif

#endif /* DBLCAT_CAPI_H */
