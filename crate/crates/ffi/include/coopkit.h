#ifndef COOPKIT_H
#define COOPKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CkStatus {
  /**
   * The call succeeded and the answer is affirmative.
   */
  CK_STATUS_OK = 0,
  /**
   * The call succeeded and the answer is negative: a proof is rejected,
   * a sequent fails, a sentence has a countermodel.
   */
  CK_STATUS_NEGATIVE = 1,
  CK_STATUS_INVALID_INPUT = 2,
  CK_STATUS_NULL_POINTER = 3,
  CK_STATUS_INTERNAL = 4,
} CkStatus;

/**
 * A parsed formula or sequent.
 */
typedef struct CkFormula CkFormula;

typedef struct CkModel CkModel;

typedef struct CkProof CkProof;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or an empty
 * string. Owned by the library; valid until the next call.
 */
const char *ck_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ck_string_free(char *s);

/**
 * Parses a formula, or a sequent when `src` contains `|-`.
 *
 * # Safety
 * `src` is a NUL-terminated string; `out` is writable.
 */
enum CkStatus ck_formula_parse(const char *src, struct CkFormula **out);

/**
 * Renders a parsed formula or sequent in normal form.
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum CkStatus ck_formula_render(const struct CkFormula *f, char **out);

/**
 * # Safety
 * `f` is null or a live handle from [`ck_formula_parse`].
 */
void ck_formula_free(struct CkFormula *f);

/**
 * Reads a proof in the JSON proof format.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum CkStatus ck_proof_from_json(const char *json, struct CkProof **out);

/**
 * `CK_STATUS_OK` when the proof checks in `logic` (e.g. `"CLc"`),
 * `CK_STATUS_NEGATIVE` when it is rejected.
 *
 * # Safety
 * `p` is a live handle; `logic` is a NUL-terminated string.
 */
enum CkStatus ck_proof_check(const struct CkProof *p, const char *logic);

/**
 * The conclusion of the proof as a sequent string.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum CkStatus ck_proof_conclusion(const struct CkProof *p, char **out);

/**
 * Translates an LLu proof into an equational chain, written as chain JSON.
 * `CK_STATUS_NEGATIVE` when the proof is outside the translatable fragment.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum CkStatus ck_proof_translate(const struct CkProof *p, char **out);

/**
 * # Safety
 * `p` is null or a live handle from [`ck_proof_from_json`].
 */
void ck_proof_free(struct CkProof *p);

/**
 * Builds a model from a spec such as `"dyadic-capped:1"`, `"luk:3"` or
 * `"godel:4"`, or from algebra JSON when `spec` starts with `{`.
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is writable.
 */
enum CkStatus ck_model_new(const char *spec, struct CkModel **out);

/**
 * Evaluates a formula at `assignment` (`"P=1/2,Q=1/4"`) and writes the
 * value. For a sequent, writes `"1"` or `"0"` and returns
 * `CK_STATUS_NEGATIVE` when it fails.
 *
 * # Safety
 * `m` and `f` are live handles; `assignment` is a NUL-terminated string
 * or null for the empty assignment; `out` is writable.
 */
enum CkStatus ck_model_eval(const struct CkModel *m,
                            const struct CkFormula *f,
                            const char *assignment,
                            char **out);

/**
 * # Safety
 * `m` is null or a live handle from [`ck_model_new`].
 */
void ck_model_free(struct CkModel *m);

/**
 * Decides the universal closure of `matrix` (e.g. `"x + y = x => y = 0"`)
 * over `ambient` (`"nonneg"`, `"interval"` or `"wajsberg"`). Writes the
 * verdict as JSON, with exact fractions in any countermodel; returns
 * `CK_STATUS_NEGATIVE` when there is a countermodel.
 *
 * # Safety
 * `matrix` and `ambient` are NUL-terminated strings; `out` is writable.
 */
enum CkStatus ck_decide(const char *matrix, const char *ambient, char **out);

/**
 * The library version, statically allocated.
 */
const char *ck_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COOPKIT_H */
