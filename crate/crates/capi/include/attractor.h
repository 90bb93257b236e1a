#ifndef ATTRACTOR_H
#define ATTRACTOR_H

/* Generated by cbindgen from attractor-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Default branch-and-bound node budget, matching the library's.
 */
#define ATTRACTOR_DEFAULT_NODE_BUDGET 10000000

/**
 * How to read instance text.
 */
typedef enum AttractorShape {
  /**
   * Bare text: the lines form one string.
   */
  ATTRACTOR_SHAPE_STRING = 0,
  /**
   * Bare text: the single line is circular.
   */
  ATTRACTOR_SHAPE_CIRCULAR = 1,
  /**
   * Bare text: one set member per line.
   */
  ATTRACTOR_SHAPE_SET = 2,
  /**
   * The text carries its own `shape ...` header.
   */
  ATTRACTOR_SHAPE_FROM_HEADER = 3,
} AttractorShape;

/**
 * Result of a library call. Mirrors the CLI's exit codes.
 */
typedef enum AttractorStatus {
  /**
   * The call succeeded.
   */
  ATTRACTOR_STATUS_OK = 0,
  /**
   * A certificate failed verification.
   */
  ATTRACTOR_STATUS_INVALID_CERTIFICATE = 1,
  /**
   * Malformed input: bad parameter, unparsable text, or an infeasible instance.
   */
  ATTRACTOR_STATUS_INVALID_INPUT = 2,
  /**
   * An exact solver exhausted its node budget before proving optimality.
   */
  ATTRACTOR_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * An internal re-check failed; indicates a library bug, not bad input.
   */
  ATTRACTOR_STATUS_SOUNDNESS = 4,
} AttractorStatus;

/**
 * Opaque handle: a CNF formula in the balanced (3,B2) shape.
 */
typedef struct AttractorFormula AttractorFormula;

/**
 * Opaque handle: a string, circular string, or string set.
 */
typedef struct AttractorInstance AttractorInstance;

/**
 * Opaque handle: a set of marked positions.
 */
typedef struct AttractorMarking AttractorMarking;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the current thread's most recent failure. The
 * pointer stays valid until this thread's next library call.
 */
const char *attractor_last_error(void);

/**
 * Releases a string returned by this library. NULL is a no-op.
 */
void attractor_string_free(char *s);

/**
 * Parses instance text. With [`AttractorShape::FromHeader`] the text must
 * carry a `shape ...` header line; the bare shapes read one string per line.
 */
enum AttractorStatus attractor_instance_parse(const char *text,
                                              enum AttractorShape shape,
                                              struct AttractorInstance **out);

/**
 * Renders an instance in the structured self-describing text form, which
 * [`attractor_instance_parse`] reads back with [`AttractorShape::FromHeader`].
 */
enum AttractorStatus attractor_instance_format(const struct AttractorInstance *inst, char **out);

void attractor_instance_free(struct AttractorInstance *inst);

/**
 * Number of member strings (1 unless the instance is a set). 0 on NULL.
 */
size_t attractor_instance_num_strings(const struct AttractorInstance *inst);

/**
 * Positions over all member strings. 0 on NULL.
 */
size_t attractor_instance_total_len(const struct AttractorInstance *inst);

/**
 * Length of the longest member string. 0 on NULL.
 */
size_t attractor_instance_max_len(const struct AttractorInstance *inst);

/**
 * Parses a marking against an instance: `2,7,9` for single strings,
 * `1:2,2:4` pairs for sets.
 */
enum AttractorStatus attractor_marking_parse(const struct AttractorInstance *inst,
                                             const char *spec,
                                             struct AttractorMarking **out);

/**
 * Renders a marking in the same form its parser accepts.
 */
enum AttractorStatus attractor_marking_format(const struct AttractorMarking *marking, char **out);

void attractor_marking_free(struct AttractorMarking *marking);

/**
 * Number of marked positions. 0 on NULL.
 */
size_t attractor_marking_len(const struct AttractorMarking *marking);

/**
 * Checks whether `marking` covers every distinct substring of length <= k
 * (exactly k when `sharp`). `*out_valid` becomes 1 or 0. When invalid and
 * `out_witness` is non-NULL, it receives the lexicographically smallest
 * uncovered substring.
 */
enum AttractorStatus attractor_verify(const struct AttractorInstance *inst,
                                      const struct AttractorMarking *marking,
                                      size_t k,
                                      bool sharp,
                                      int *out_valid,
                                      char **out_witness);

/**
 * Branch-and-bound exact minimum attractor. `budget = 0` means the default
 * node budget.
 */
enum AttractorStatus attractor_solve_exact(const struct AttractorInstance *inst,
                                           size_t k,
                                           bool sharp,
                                           uint64_t budget,
                                           struct AttractorMarking **out);

/**
 * Largest-gain greedy attractor; an upper bound on the minimum.
 */
enum AttractorStatus attractor_solve_greedy(const struct AttractorInstance *inst,
                                            size_t k,
                                            bool sharp,
                                            struct AttractorMarking **out);

/**
 * Closed-form minimum 1-attractor: one mark per distinct symbol.
 */
enum AttractorStatus attractor_solve_min1(const struct AttractorInstance *inst,
                                          struct AttractorMarking **out);

/**
 * Parses a DIMACS CNF and checks the balanced (3,B2) shape.
 */
enum AttractorStatus attractor_formula_from_dimacs(const char *text, struct AttractorFormula **out);

/**
 * Generates a random balanced formula; `vars` must be a positive multiple
 * of 3. Identical `(vars, seed, allow_duplicate_literals)` triples yield
 * identical formulas.
 */
enum AttractorStatus attractor_formula_generate(size_t vars,
                                                uint64_t seed,
                                                bool allow_duplicate_literals,
                                                struct AttractorFormula **out);

enum AttractorStatus attractor_formula_to_dimacs(const struct AttractorFormula *formula,
                                                 char **out);

void attractor_formula_free(struct AttractorFormula *formula);

size_t attractor_formula_num_vars(const struct AttractorFormula *formula);

size_t attractor_formula_num_clauses(const struct AttractorFormula *formula);

/**
 * 1 when every variable occurs exactly twice per polarity, else 0.
 */
int attractor_formula_is_balanced(const struct AttractorFormula *formula);

/**
 * Brute-force satisfiability (at most 24 variables). `*out_satisfiable`
 * becomes 1 or 0; when satisfiable and `out_assignment` is non-NULL, it
 * receives the lexicographically first satisfying assignment as a bit
 * string, `x1` first.
 */
enum AttractorStatus attractor_formula_solve(const struct AttractorFormula *formula,
                                             int *out_satisfiable,
                                             char **out_assignment);

/**
 * Brute-force MAX-SAT: the largest satisfiable clause count, and (when
 * `out_assignment` is non-NULL) an assignment achieving it.
 */
enum AttractorStatus attractor_formula_max_sat(const struct AttractorFormula *formula,
                                               size_t *out_best,
                                               char **out_assignment);

/**
 * Builds the string-set instance encoding a balanced formula: its minimum
 * 2-attractor is `5n + 6` exactly when the formula is satisfiable.
 */
enum AttractorStatus attractor_reduce_to_set(const struct AttractorFormula *formula,
                                             struct AttractorInstance **out);

/**
 * Builds the stitched single-string form of the same encoding: minimum
 * attractor `7n + 11` exactly when satisfiable.
 */
enum AttractorStatus attractor_reduce_to_stitched(const struct AttractorFormula *formula,
                                                  struct AttractorInstance **out);

/**
 * The satisfiable-case optima of the three encodings of `formula`:
 * colorful edge cover `5n`, set attractor `5n + 6`, stitched attractor
 * `7n + 11`. Each out pointer is nullable.
 */
enum AttractorStatus attractor_reduce_predicted_sizes(const struct AttractorFormula *formula,
                                                      size_t *out_cover,
                                                      size_t *out_set,
                                                      size_t *out_stitched);

/**
 * Bounds on the minimum stitched-string attractor of an encoded formula
 * with `m` clauses of which `u` must go unsatisfied: the minimum lies in
 * `[*out_lower, *out_upper]`.
 */
enum AttractorStatus attractor_gap_bounds(size_t m, size_t u, size_t *out_lower, size_t *out_upper);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ATTRACTOR_H */
