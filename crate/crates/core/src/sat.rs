//! (3,B2)-SAT: 3-CNF where every literal occurs exactly twice per polarity.
//!
//! The model itself admits any CNF over variables 1..=n (clauses of any arity,
//! repeated literals, tautologies); `validate_3b2` reports the shape
//! violations as data. Brute-force SAT and MAX-SAT enumerate assignments in
//! lexicographic order (variable 1 varies last, false before true) and are
//! capped at 24 variables. The seeded generator shuffles the exact multiset
//! of literal slots, so its output is balanced by construction.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A literal: variable index (1-based) plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

/// A CNF formula intended to be (3,B2)-shaped; see [`Cnf3B2::validate_3b2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3B2 {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

/// A total assignment; index a-1 holds the value of variable a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// Parses a bitstring like `101` (variable 1 first).
    pub fn parse(s: &str) -> Result<Assignment> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.trim().chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                other => {
                    return Err(Error::Parse(format!(
                        "assignment must be a string of 0s and 1s, found {other:?}"
                    )))
                }
            }
        }
        Ok(Assignment(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// One way a formula fails the (3,B2) shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ClauseArity { clause: usize, len: usize },
    LiteralCount { literal: Literal, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ClauseArity { clause, len } => {
                write!(f, "clause {clause} has {len} literals, want 3")
            }
            Violation::LiteralCount { literal, count } => {
                write!(f, "literal {literal} occurs {count} times, want 2")
            }
        }
    }
}

/// Brute-force cap: 2^24 assignments is the largest desk-scale enumeration.
pub const MAX_BRUTE_VARS: usize = 24;

impl Cnf3B2 {
    /// Builds a formula, checking only that variables are in 1..=num_vars.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Cnf3B2> {
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::InvalidParameter(format!(
                        "clause {}: variable {} out of range 1..={num_vars}",
                        i + 1,
                        lit.var
                    )));
                }
            }
        }
        Ok(Cnf3B2 { num_vars, clauses })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// All (3,B2) shape violations: clause arities other than 3 and literal
    /// occurrence counts other than 2. Empty means the shape holds.
    pub fn validate_3b2(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, clause) in self.clauses.iter().enumerate() {
            if clause.len() != 3 {
                out.push(Violation::ClauseArity { clause: i + 1, len: clause.len() });
            }
        }
        let mut counts = vec![[0usize; 2]; self.num_vars];
        for clause in &self.clauses {
            for lit in clause {
                counts[lit.var - 1][lit.positive as usize] += 1;
            }
        }
        for (i, c) in counts.iter().enumerate() {
            for (polarity, count) in [(false, c[0]), (true, c[1])] {
                if count != 2 {
                    out.push(Violation::LiteralCount {
                        literal: Literal { var: i + 1, positive: polarity },
                        count,
                    });
                }
            }
        }
        out
    }

    pub fn is_3b2(&self) -> bool {
        self.validate_3b2().is_empty()
    }

    pub fn evaluate(&self, asg: &Assignment) -> bool {
        self.first_unsatisfied(asg).is_none()
    }

    /// Index (1-based) of the first clause `asg` leaves false.
    pub fn first_unsatisfied(&self, asg: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|clause| {
                !clause.iter().any(|lit| asg.value(lit.var) == lit.positive)
            })
            .map(|i| i + 1)
    }

    pub fn satisfied_count(&self, asg: &Assignment) -> usize {
        self.clauses
            .iter()
            .filter(|clause| clause.iter().any(|lit| asg.value(lit.var) == lit.positive))
            .count()
    }

    fn check_brute_size(&self) -> Result<()> {
        if self.num_vars > MAX_BRUTE_VARS {
            return Err(Error::BudgetExceeded {
                nodes: 1 << MAX_BRUTE_VARS,
                budget: 1 << MAX_BRUTE_VARS,
            });
        }
        Ok(())
    }

    fn assignment_at(&self, mask: u64) -> Assignment {
        // Variable 1 is the most significant digit, so increasing masks
        // enumerate assignments lexicographically with false < true.
        Assignment(
            (0..self.num_vars)
                .map(|i| mask >> (self.num_vars - 1 - i) & 1 == 1)
                .collect(),
        )
    }

    /// Exhaustive SAT check; returns the lexicographically first satisfying
    /// assignment if one exists.
    pub fn solve_sat_bruteforce(&self) -> Result<Option<Assignment>> {
        self.check_brute_size()?;
        for mask in 0..(1u64 << self.num_vars) {
            let asg = self.assignment_at(mask);
            if self.evaluate(&asg) {
                return Ok(Some(asg));
            }
        }
        Ok(None)
    }

    /// Exhaustive MAX-SAT: the maximum satisfiable clause count and the
    /// lexicographically first assignment attaining it.
    pub fn max_sat_bruteforce(&self) -> Result<(usize, Assignment)> {
        self.check_brute_size()?;
        let mut best: Option<(usize, Assignment)> = None;
        for mask in 0..(1u64 << self.num_vars) {
            let asg = self.assignment_at(mask);
            let count = self.satisfied_count(&asg);
            if best.as_ref().map(|(b, _)| count > *b).unwrap_or(true) {
                let done = count == self.clauses.len();
                best = Some((count, asg));
                if done {
                    break;
                }
            }
        }
        Ok(best.expect("at least the all-false assignment was scored"))
    }

    /// Serializes to DIMACS CNF.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let v = lit.var as i64;
                out.push_str(&format!("{} ", if lit.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
    /// header, then 0-terminated clauses (which may span lines).
    pub fn from_dimacs(text: &str) -> Result<Cnf3B2> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                if header.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate header", lineno + 1)));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 3 || toks[0] != "cnf" {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'p cnf <vars> <clauses>'",
                        lineno + 1
                    )));
                }
                let nv = toks[1].parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad variable count", lineno + 1))
                })?;
                let nc = toks[2].parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad clause count", lineno + 1))
                })?;
                header = Some((nv, nc));
                continue;
            }
            let (nv, _) = header.ok_or_else(|| {
                Error::Parse(format!("line {}: clause before 'p cnf' header", lineno + 1))
            })?;
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad literal {tok:?}", lineno + 1))
                })?;
                if v == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    let var = v.unsigned_abs() as usize;
                    if var > nv {
                        return Err(Error::Parse(format!(
                            "line {}: variable {var} exceeds declared {nv}",
                            lineno + 1
                        )));
                    }
                    current.push(Literal { var, positive: v > 0 });
                }
            }
        }
        let (nv, nc) = header.ok_or_else(|| Error::Parse("missing 'p cnf' header".into()))?;
        if !current.is_empty() {
            return Err(Error::Parse("unterminated clause at end of file".into()));
        }
        if clauses.len() != nc {
            return Err(Error::Parse(format!(
                "header declares {nc} clauses but {} found",
                clauses.len()
            )));
        }
        Cnf3B2::new(nv, clauses)
    }
}

/// The running four-clause example: two copies of (x1 v x2 v x3) and two of
/// (~x1 v ~x2 v ~x3). Balanced, satisfiable, n = 3, m = 4.
pub fn example_formula() -> Cnf3B2 {
    let pos = vec![Literal::pos(1), Literal::pos(2), Literal::pos(3)];
    let neg = vec![Literal::neg(1), Literal::neg(2), Literal::neg(3)];
    Cnf3B2::new(3, vec![pos.clone(), neg.clone(), pos, neg]).unwrap()
}

/// Samples a random (3,B2) formula with `n` variables (n divisible by 3, so
/// m = 4n/3 is integral): the 4n literal slots are shuffled and chunked into
/// triples. With `allow_duplicate_literals` off, shuffles containing a clause
/// with a repeated identical literal are rejected and redrawn.
pub fn generate_3b2(n: usize, seed: u64, allow_duplicate_literals: bool) -> Result<Cnf3B2> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::InvalidParameter(format!(
            "variable count must be a positive multiple of 3, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<Literal> = Vec::with_capacity(4 * n);
    for a in 1..=n {
        slots.extend([Literal::pos(a), Literal::pos(a), Literal::neg(a), Literal::neg(a)]);
    }
    const MAX_TRIES: u64 = 10_000;
    for _ in 0..MAX_TRIES {
        slots.shuffle(&mut rng);
        let clauses: Vec<Vec<Literal>> = slots.chunks(3).map(|c| c.to_vec()).collect();
        let has_dup = clauses.iter().any(|c| {
            c[0] == c[1] || c[0] == c[2] || c[1] == c[2]
        });
        if allow_duplicate_literals || !has_dup {
            return Cnf3B2::new(n, clauses);
        }
    }
    Err(Error::BudgetExceeded { nodes: MAX_TRIES, budget: MAX_TRIES })
}
