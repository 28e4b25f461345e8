#ifndef VASSILIEV_H
#define VASSILIEV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes.
 */
typedef enum {
  VSL_STATUS_OK = 0,
  VSL_STATUS_NULL_POINTER = 1,
  VSL_STATUS_INVALID_UTF8 = 2,
  VSL_STATUS_PARSE = 3,
  VSL_STATUS_VALIDATION = 4,
  VSL_STATUS_STRUCTURAL = 5,
  VSL_STATUS_KIND_MISMATCH = 6,
  VSL_STATUS_GRADING = 7,
  VSL_STATUS_INDEX_OUT_OF_RANGE = 8,
  VSL_STATUS_UNKNOWN_NAME = 9,
  VSL_STATUS_BUDGET = 10,
  VSL_STATUS_IO = 11,
  VSL_STATUS_PANIC = 12,
} VslStatus;

/*
 A metric Lie (super)algebra with its representations.
 */
typedef struct VslAlgebra VslAlgebra;

/*
 A Jacobi diagram.
 */
typedef struct VslDiagram VslDiagram;

/*
 The message of the last failed call on this thread, or an empty string.
 Valid until the next call on this thread.
 */
const char *vsl_last_error(void);

/*
 Frees a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void vsl_string_free(char *s);

/*
 Looks up a built-in algebra such as `sl2`, `gl(3)`, `so(5)`, `abelian(2)` or `gl(1|1)`.

 # Safety
 `name` is a NUL-terminated string; `out` is writable.
 */
VslStatus vsl_algebra_builtin(const char *name, VslAlgebra **out);

/*
 Parses a JSON algebra description.

 # Safety
 `json` is a NUL-terminated string; `out` is writable.
 */
VslStatus vsl_algebra_from_json(const char *json, VslAlgebra **out);

/*
 A built-in name or the path of a JSON algebra file.

 # Safety
 `name_or_path` is a NUL-terminated string; `out` is writable.
 */
VslStatus vsl_algebra_load(const char *name_or_path, VslAlgebra **out);

/*
 # Safety
 `alg` is null or a handle from this library that has not been freed.
 */
void vsl_algebra_free(VslAlgebra *alg);

/*
 Dimension of the algebra.

 # Safety
 `alg` is a live handle; `out` is writable.
 */
VslStatus vsl_algebra_dim(const VslAlgebra *alg, uintptr_t *out);

/*
 Checks every axiom; `passed` receives the outcome and `report` the failures, or `ok`.

 # Safety
 `alg` is a live handle; `passed` and `report` are writable.
 */
VslStatus vsl_algebra_validate(const VslAlgebra *alg, bool *passed, char **report);

/*
 Parses a diagram in the line-oriented DSL.

 # Safety
 `src` is a NUL-terminated string; `out` is writable.
 */
VslStatus vsl_diagram_parse(const char *src, VslDiagram **out);

/*
 # Safety
 `d` is null or a handle from this library that has not been freed.
 */
void vsl_diagram_free(VslDiagram *d);

/*
 Number of trivalent plus univalent vertices.

 # Safety
 `d` is a live handle; `out` is writable.
 */
VslStatus vsl_diagram_degree(const VslDiagram *d, uintptr_t *out);

/*
 Whether the diagram has a Wilson loop (`kind A`).

 # Safety
 `d` is a live handle; `out` is writable.
 */
VslStatus vsl_diagram_is_closed(const VslDiagram *d, bool *out);

/*
 `dim A` in the given (even) degree.

 # Safety
 `out` is writable.
 */
VslStatus vsl_dim_a(uintptr_t degree, uintptr_t *out);

/*
 `dim B` with `v` trivalent vertices and `legs` legs.

 # Safety
 `out` is writable.
 */
VslStatus vsl_dim_b(uintptr_t v, uintptr_t legs, uintptr_t *out);

/*
 The scalar weight of a closed diagram in representation `rep`, as `p/q`.

 # Safety
 `alg` and `d` are live handles; `rep` is a NUL-terminated string; `out` is writable.
 */
VslStatus vsl_eval_scalar(const VslAlgebra *alg, const char *rep, const VslDiagram *d, char **out);

/*
 The image in `U(g)` of an A diagram, or in `S(g)` of a B diagram, one
 `coefficient<TAB>monomial` line per term.

 # Safety
 `alg` and `d` are live handles; `out` is writable.
 */
VslStatus vsl_eval_tensor(const VslAlgebra *alg, const VslDiagram *d, char **out);

/*
 The truncated invariant of the closure of `braid` on `strands` strands,
 every strand colored by `rep`, as a series in `h` up to `order`.

 # Safety
 `alg` is a live handle; `rep` and `braid` are NUL-terminated strings; `out` is writable.
 */
VslStatus vsl_link_invariant(const VslAlgebra *alg,
                             const char *rep,
                             const char *braid,
                             uintptr_t strands,
                             uintptr_t order,
                             bool normalize,
                             char **out);

/*
 Library version, statically allocated.
 */
const char *vsl_version(void);

#endif  /* VASSILIEV_H */
