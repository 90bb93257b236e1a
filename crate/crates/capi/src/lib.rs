//! C ABI for the attractor library.
//!
//! Conventions:
//! - Every handle type is opaque; create and destroy it only through these
//!   functions. Passing a handle to the wrong `_free` is undefined behavior.
//! - Functions returning [`AttractorStatus`] write their results through out
//!   pointers, which are left untouched on failure. Out pointers must be
//!   non-null unless documented nullable.
//! - `k = 0` means "full": the length of the longest member string.
//! - Returned `char*` buffers are owned by the caller; release them with
//!   [`attractor_string_free`].
//! - On any non-OK status, [`attractor_last_error`] returns a message valid
//!   until the current thread's next library call.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use attractor::error::Error;
use attractor::reductions::{gap_bounds, sat_to_attractor, sat_to_cec};
use attractor::sat::Cnf3B2;
use attractor::solvers::{min_1_attractor, min_attractor_exact, min_attractor_greedy};
use attractor::text::{Instance, Marking, Shape};
use attractor::textio;
use attractor::verify::{verify_attractor, Verdict};

/// Default branch-and-bound node budget, matching the library's.
pub const ATTRACTOR_DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Result of a library call. Mirrors the CLI's exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AttractorStatus {
    /// The call succeeded.
    Ok = 0,
    /// A certificate failed verification.
    InvalidCertificate = 1,
    /// Malformed input: bad parameter, unparsable text, or an infeasible instance.
    InvalidInput = 2,
    /// An exact solver exhausted its node budget before proving optimality.
    BudgetExceeded = 3,
    /// An internal re-check failed; indicates a library bug, not bad input.
    Soundness = 4,
}

/// How to read instance text.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AttractorShape {
    /// Bare text: the lines form one string.
    String = 0,
    /// Bare text: the single line is circular.
    Circular = 1,
    /// Bare text: one set member per line.
    Set = 2,
    /// The text carries its own `shape ...` header.
    FromHeader = 3,
}

/// Opaque handle: a string, circular string, or string set.
pub struct AttractorInstance(Instance);

/// Opaque handle: a set of marked positions.
pub struct AttractorMarking(Marking);

/// Opaque handle: a CNF formula in the balanced (3,B2) shape.
pub struct AttractorFormula(Cnf3B2);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap_or_default());
}

fn fail(e: &Error) -> AttractorStatus {
    set_error(&e.to_string());
    match e {
        Error::InvalidCertificate(_) => AttractorStatus::InvalidCertificate,
        Error::BudgetExceeded { .. } => AttractorStatus::BudgetExceeded,
        Error::Soundness(_) => AttractorStatus::Soundness,
        _ => AttractorStatus::InvalidInput,
    }
}

fn invalid(msg: &str) -> AttractorStatus {
    set_error(msg);
    AttractorStatus::InvalidInput
}

fn guard<F: FnOnce() -> AttractorStatus>(f: F) -> AttractorStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            AttractorStatus::Soundness
        }
    }
}

/// Returns the message of the current thread's most recent failure. The
/// pointer stays valid until this thread's next library call.
#[no_mangle]
pub extern "C" fn attractor_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is a no-op.
#[no_mangle]
pub extern "C" fn attractor_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

unsafe fn arg_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, AttractorStatus> {
    if p.is_null() {
        return Err(invalid(&format!("{name} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(&format!("{name} is not UTF-8")))
}

unsafe fn arg_ref<'a, T>(p: *const T, name: &str) -> Result<&'a T, AttractorStatus> {
    p.as_ref().ok_or_else(|| invalid(&format!("{name} is NULL")))
}

fn give_string(out: *mut *mut c_char, s: String) -> AttractorStatus {
    if out.is_null() {
        return invalid("out is NULL");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            AttractorStatus::Ok
        }
        Err(_) => invalid("result contains an interior NUL byte"),
    }
}

fn resolve_k(inst: &Instance, k: usize) -> usize {
    if k == 0 {
        inst.max_len().max(1)
    } else {
        k
    }
}

/// Parses instance text. With [`AttractorShape::FromHeader`] the text must
/// carry a `shape ...` header line; the bare shapes read one string per line.
#[no_mangle]
pub extern "C" fn attractor_instance_parse(
    text: *const c_char,
    shape: AttractorShape,
    out: *mut *mut AttractorInstance,
) -> AttractorStatus {
    guard(|| {
        let text = match unsafe { arg_str(text, "text") } {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        let default_shape = match shape {
            AttractorShape::String => Some(Shape::Text),
            AttractorShape::Circular => Some(Shape::Circular),
            AttractorShape::Set => Some(Shape::Set),
            AttractorShape::FromHeader => None,
        };
        match textio::parse_instance(text, default_shape) {
            Ok(inst) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorInstance(inst))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Renders an instance in the structured self-describing text form, which
/// [`attractor_instance_parse`] reads back with [`AttractorShape::FromHeader`].
#[no_mangle]
pub extern "C" fn attractor_instance_format(
    inst: *const AttractorInstance,
    out: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let inst = match unsafe { arg_ref(inst, "inst") } {
            Ok(i) => i,
            Err(s) => return s,
        };
        give_string(out, textio::format_instance(&inst.0))
    })
}

#[no_mangle]
pub extern "C" fn attractor_instance_free(inst: *mut AttractorInstance) {
    if !inst.is_null() {
        unsafe { drop(Box::from_raw(inst)) };
    }
}

/// Number of member strings (1 unless the instance is a set). 0 on NULL.
#[no_mangle]
pub extern "C" fn attractor_instance_num_strings(inst: *const AttractorInstance) -> usize {
    unsafe { inst.as_ref() }.map_or(0, |i| i.0.num_strings())
}

/// Positions over all member strings. 0 on NULL.
#[no_mangle]
pub extern "C" fn attractor_instance_total_len(inst: *const AttractorInstance) -> usize {
    unsafe { inst.as_ref() }.map_or(0, |i| i.0.total_len())
}

/// Length of the longest member string. 0 on NULL.
#[no_mangle]
pub extern "C" fn attractor_instance_max_len(inst: *const AttractorInstance) -> usize {
    unsafe { inst.as_ref() }.map_or(0, |i| i.0.max_len())
}

/// Parses a marking against an instance: `2,7,9` for single strings,
/// `1:2,2:4` pairs for sets.
#[no_mangle]
pub extern "C" fn attractor_marking_parse(
    inst: *const AttractorInstance,
    spec: *const c_char,
    out: *mut *mut AttractorMarking,
) -> AttractorStatus {
    guard(|| {
        let inst = match unsafe { arg_ref(inst, "inst") } {
            Ok(i) => i,
            Err(s) => return s,
        };
        let spec = match unsafe { arg_str(spec, "spec") } {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        match Marking::parse(spec, inst.0.shape()) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorMarking(m))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Renders a marking in the same form its parser accepts.
#[no_mangle]
pub extern "C" fn attractor_marking_format(
    marking: *const AttractorMarking,
    out: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let m = match unsafe { arg_ref(marking, "marking") } {
            Ok(m) => m,
            Err(s) => return s,
        };
        give_string(out, m.0.to_string())
    })
}

#[no_mangle]
pub extern "C" fn attractor_marking_free(marking: *mut AttractorMarking) {
    if !marking.is_null() {
        unsafe { drop(Box::from_raw(marking)) };
    }
}

/// Number of marked positions. 0 on NULL.
#[no_mangle]
pub extern "C" fn attractor_marking_len(marking: *const AttractorMarking) -> usize {
    unsafe { marking.as_ref() }.map_or(0, |m| m.0.len())
}

/// Checks whether `marking` covers every distinct substring of length <= k
/// (exactly k when `sharp`). `*out_valid` becomes 1 or 0. When invalid and
/// `out_witness` is non-NULL, it receives the lexicographically smallest
/// uncovered substring.
#[no_mangle]
pub extern "C" fn attractor_verify(
    inst: *const AttractorInstance,
    marking: *const AttractorMarking,
    k: usize,
    sharp: bool,
    out_valid: *mut c_int,
    out_witness: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let inst = match unsafe { arg_ref(inst, "inst") } {
            Ok(i) => i,
            Err(s) => return s,
        };
        let m = match unsafe { arg_ref(marking, "marking") } {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out_valid.is_null() {
            return invalid("out_valid is NULL");
        }
        let k = resolve_k(&inst.0, k);
        match verify_attractor(&inst.0, &m.0, k, sharp) {
            Ok(Verdict::Valid) => {
                unsafe { *out_valid = 1 };
                AttractorStatus::Ok
            }
            Ok(Verdict::Invalid { witness }) => {
                unsafe { *out_valid = 0 };
                if !out_witness.is_null() {
                    return give_string(out_witness, inst.0.alphabet.render(&witness));
                }
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

fn solve_with<F>(
    inst: *const AttractorInstance,
    out: *mut *mut AttractorMarking,
    f: F,
) -> AttractorStatus
where
    F: FnOnce(&Instance) -> attractor::error::Result<Marking>,
{
    guard(|| {
        let inst = match unsafe { arg_ref(inst, "inst") } {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        match f(&inst.0) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorMarking(m))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Branch-and-bound exact minimum attractor. `budget = 0` means the default
/// node budget.
#[no_mangle]
pub extern "C" fn attractor_solve_exact(
    inst: *const AttractorInstance,
    k: usize,
    sharp: bool,
    budget: u64,
    out: *mut *mut AttractorMarking,
) -> AttractorStatus {
    let budget = if budget == 0 { ATTRACTOR_DEFAULT_NODE_BUDGET } else { budget };
    solve_with(inst, out, |i| {
        min_attractor_exact(i, resolve_k(i, k), sharp, budget).map(|o| o.marking)
    })
}

/// Largest-gain greedy attractor; an upper bound on the minimum.
#[no_mangle]
pub extern "C" fn attractor_solve_greedy(
    inst: *const AttractorInstance,
    k: usize,
    sharp: bool,
    out: *mut *mut AttractorMarking,
) -> AttractorStatus {
    solve_with(inst, out, |i| {
        min_attractor_greedy(i, resolve_k(i, k), sharp).map(|o| o.marking)
    })
}

/// Closed-form minimum 1-attractor: one mark per distinct symbol.
#[no_mangle]
pub extern "C" fn attractor_solve_min1(
    inst: *const AttractorInstance,
    out: *mut *mut AttractorMarking,
) -> AttractorStatus {
    solve_with(inst, out, |i| Ok(min_1_attractor(i)))
}

/// Parses a DIMACS CNF and checks the balanced (3,B2) shape.
#[no_mangle]
pub extern "C" fn attractor_formula_from_dimacs(
    text: *const c_char,
    out: *mut *mut AttractorFormula,
) -> AttractorStatus {
    guard(|| {
        let text = match unsafe { arg_str(text, "text") } {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        match Cnf3B2::from_dimacs(text) {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorFormula(f))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Generates a random balanced formula; `vars` must be a positive multiple
/// of 3. Identical `(vars, seed, allow_duplicate_literals)` triples yield
/// identical formulas.
#[no_mangle]
pub extern "C" fn attractor_formula_generate(
    vars: usize,
    seed: u64,
    allow_duplicate_literals: bool,
    out: *mut *mut AttractorFormula,
) -> AttractorStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        match attractor::sat::generate_3b2(vars, seed, allow_duplicate_literals) {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorFormula(f))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub extern "C" fn attractor_formula_to_dimacs(
    formula: *const AttractorFormula,
    out: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        give_string(out, f.0.to_dimacs())
    })
}

#[no_mangle]
pub extern "C" fn attractor_formula_free(formula: *mut AttractorFormula) {
    if !formula.is_null() {
        unsafe { drop(Box::from_raw(formula)) };
    }
}

#[no_mangle]
pub extern "C" fn attractor_formula_num_vars(formula: *const AttractorFormula) -> usize {
    unsafe { formula.as_ref() }.map_or(0, |f| f.0.num_vars)
}

#[no_mangle]
pub extern "C" fn attractor_formula_num_clauses(formula: *const AttractorFormula) -> usize {
    unsafe { formula.as_ref() }.map_or(0, |f| f.0.num_clauses())
}

/// 1 when every variable occurs exactly twice per polarity, else 0.
#[no_mangle]
pub extern "C" fn attractor_formula_is_balanced(formula: *const AttractorFormula) -> c_int
{
    unsafe { formula.as_ref() }.map_or(0, |f| c_int::from(f.0.is_3b2()))
}

/// Brute-force satisfiability (at most 24 variables). `*out_satisfiable`
/// becomes 1 or 0; when satisfiable and `out_assignment` is non-NULL, it
/// receives the lexicographically first satisfying assignment as a bit
/// string, `x1` first.
#[no_mangle]
pub extern "C" fn attractor_formula_solve(
    formula: *const AttractorFormula,
    out_satisfiable: *mut c_int,
    out_assignment: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        if out_satisfiable.is_null() {
            return invalid("out_satisfiable is NULL");
        }
        match f.0.solve_sat_bruteforce() {
            Ok(Some(asg)) => {
                unsafe { *out_satisfiable = 1 };
                if !out_assignment.is_null() {
                    return give_string(out_assignment, asg.to_string());
                }
                AttractorStatus::Ok
            }
            Ok(None) => {
                unsafe { *out_satisfiable = 0 };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Brute-force MAX-SAT: the largest satisfiable clause count, and (when
/// `out_assignment` is non-NULL) an assignment achieving it.
#[no_mangle]
pub extern "C" fn attractor_formula_max_sat(
    formula: *const AttractorFormula,
    out_best: *mut usize,
    out_assignment: *mut *mut c_char,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        if out_best.is_null() {
            return invalid("out_best is NULL");
        }
        match f.0.max_sat_bruteforce() {
            Ok((best, asg)) => {
                unsafe { *out_best = best };
                if !out_assignment.is_null() {
                    return give_string(out_assignment, asg.to_string());
                }
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds the string-set instance encoding a balanced formula: its minimum
/// 2-attractor is `5n + 6` exactly when the formula is satisfiable.
#[no_mangle]
pub extern "C" fn attractor_reduce_to_set(
    formula: *const AttractorFormula,
    out: *mut *mut AttractorInstance,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        match sat_to_attractor(&f.0) {
            Ok(art) => {
                unsafe { *out = Box::into_raw(Box::new(AttractorInstance(art.set))) };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds the stitched single-string form of the same encoding: minimum
/// attractor `7n + 11` exactly when satisfiable.
#[no_mangle]
pub extern "C" fn attractor_reduce_to_stitched(
    formula: *const AttractorFormula,
    out: *mut *mut AttractorInstance,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        if out.is_null() {
            return invalid("out is NULL");
        }
        match sat_to_attractor(&f.0) {
            Ok(art) => {
                unsafe {
                    *out = Box::into_raw(Box::new(AttractorInstance(art.stitched.target)))
                };
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The satisfiable-case optima of the three encodings of `formula`:
/// colorful edge cover `5n`, set attractor `5n + 6`, stitched attractor
/// `7n + 11`. Each out pointer is nullable.
#[no_mangle]
pub extern "C" fn attractor_reduce_predicted_sizes(
    formula: *const AttractorFormula,
    out_cover: *mut usize,
    out_set: *mut usize,
    out_stitched: *mut usize,
) -> AttractorStatus {
    guard(|| {
        let f = match unsafe { arg_ref(formula, "formula") } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let cec = match sat_to_cec(&f.0) {
            Ok(a) => a,
            Err(e) => return fail(&e),
        };
        let attr = match sat_to_attractor(&f.0) {
            Ok(a) => a,
            Err(e) => return fail(&e),
        };
        unsafe {
            if !out_cover.is_null() {
                *out_cover = cec.predicted_cover_size;
            }
            if !out_set.is_null() {
                *out_set = attr.predicted_set_size;
            }
            if !out_stitched.is_null() {
                *out_stitched = attr.predicted_stitched_size;
            }
        }
        AttractorStatus::Ok
    })
}

/// Bounds on the minimum stitched-string attractor of an encoded formula
/// with `m` clauses of which `u` must go unsatisfied: the minimum lies in
/// `[*out_lower, *out_upper]`.
#[no_mangle]
pub extern "C" fn attractor_gap_bounds(
    m: usize,
    u: usize,
    out_lower: *mut usize,
    out_upper: *mut usize,
) -> AttractorStatus {
    guard(|| {
        if out_lower.is_null() || out_upper.is_null() {
            return invalid("out_lower / out_upper is NULL");
        }
        match gap_bounds(m, u) {
            Ok((lo, hi)) => {
                unsafe {
                    *out_lower = lo;
                    *out_upper = hi;
                }
                AttractorStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}
