//! Attractor verification.
//!
//! A marking is a valid k-attractor when every distinct substring of length
//! <= k (exactly k in the sharp variant) has at least one occurrence that
//! crosses a marked position. Verification reports either validity or the
//! lexicographically smallest uncovered substring as a witness.

use std::collections::BTreeMap;

use crate::alphabet::Symbol;
use crate::error::Result;
use crate::substrings::{window_positions, window_symbols, windows};
use crate::text::{Instance, Marking};

/// Outcome of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// The lexicographically smallest substring no occurrence of which crosses
    /// a marked position.
    Invalid { witness: Vec<Symbol> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks whether `marking` is a k-attractor (sharp: exactly-k) of `instance`.
///
/// Errors on malformed parameters (k = 0, circular k > n, marking of the wrong
/// kind or out of range); an uncovered substring is a `Verdict::Invalid`, not
/// an error.
pub fn verify_attractor(
    instance: &Instance,
    marking: &Marking,
    k: usize,
    sharp: bool,
) -> Result<Verdict> {
    marking.check_against(instance)?;
    let mut covered: BTreeMap<Vec<Symbol>, bool> = BTreeMap::new();
    for w in windows(instance, k, sharp)? {
        let crosses = window_positions(instance, &w).any(|(x, y)| marking.contains(x, y));
        let entry = covered.entry(window_symbols(instance, &w)).or_insert(false);
        *entry |= crosses;
    }
    match covered.into_iter().find(|(_, c)| !c) {
        None => Ok(Verdict::Valid),
        Some((witness, _)) => Ok(Verdict::Invalid { witness }),
    }
}
