//! Attractor minimization: exact, greedy, and the polynomial special cases.
//!
//! The general solvers phrase the problem as set cover: the universe is the
//! distinct substrings of length <= k (exactly k when sharp) and each position
//! is a candidate covering the substrings with an occurrence crossing it.
//! Every solver re-verifies its own output before returning it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::alphabet::Symbol;
use crate::cover::SetCover;
use crate::error::{Error, Result};
use crate::substrings::{window_positions, window_symbols, windows};
use crate::text::{Instance, Marking, Shape};
use crate::verify::{verify_attractor, Verdict};

/// The set-cover view of one attractor instance.
pub struct AttractorCover {
    /// Distinct substrings in lexicographic order: the cover elements.
    pub substrings: Vec<Vec<Symbol>>,
    /// Candidate positions in scan order, as (string, position).
    pub candidates: Vec<(usize, usize)>,
    cover: SetCover,
}

/// Builds the covering structure for `instance` at the given `k`.
pub fn build_cover(instance: &Instance, k: usize, sharp: bool) -> Result<AttractorCover> {
    let candidates: Vec<(usize, usize)> = instance.positions().collect();
    let index: HashMap<(usize, usize), usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let mut elements: BTreeMap<Vec<Symbol>, BTreeSet<usize>> = BTreeMap::new();
    for w in windows(instance, k, sharp)? {
        let entry = elements.entry(window_symbols(instance, &w)).or_default();
        entry.extend(window_positions(instance, &w).map(|p| index[&p]));
    }
    let mut cover = SetCover::new(candidates.len());
    let substrings: Vec<Vec<Symbol>> = elements.keys().cloned().collect();
    for cands in elements.values() {
        cover.add_element(cands.iter().copied());
    }
    Ok(AttractorCover { substrings, candidates, cover })
}

impl AttractorCover {
    fn marking_from(&self, chosen: &[usize], shape: Shape) -> Marking {
        let pairs = chosen.iter().map(|&c| self.candidates[c]);
        match shape {
            Shape::Set => Marking::pairs(pairs),
            _ => Marking::positions(pairs.map(|(_, y)| y)),
        }
    }
}

/// A solved instance: the marking plus the search effort that proved it.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub marking: Marking,
    /// Branch-and-bound nodes; 0 for greedy and closed-form routes.
    pub nodes: u64,
}

/// Exact minimum k-attractor (sharp: exactly-k) within a node budget.
pub fn min_attractor_exact(
    instance: &Instance,
    k: usize,
    sharp: bool,
    budget: u64,
) -> Result<SolveOutcome> {
    let ac = build_cover(instance, k, sharp)?;
    let exact = ac.cover.solve_exact(budget)?;
    let marking = ac.marking_from(&exact.chosen, instance.shape());
    recheck(instance, &marking, k, sharp)?;
    Ok(SolveOutcome { marking, nodes: exact.nodes })
}

/// Greedy k-attractor: most-new-substrings-first. Valid but not necessarily
/// minimum; useful as a fast upper bound.
pub fn min_attractor_greedy(instance: &Instance, k: usize, sharp: bool) -> Result<SolveOutcome> {
    let ac = build_cover(instance, k, sharp)?;
    let chosen = ac.cover.solve_greedy()?;
    let marking = ac.marking_from(&chosen, instance.shape());
    recheck(instance, &marking, k, sharp)?;
    Ok(SolveOutcome { marking, nodes: 0 })
}

/// Minimum 1-attractor: the first occurrence of each distinct symbol. Exact
/// in linear time, since any 1-attractor needs one mark per distinct symbol.
pub fn min_1_attractor(instance: &Instance) -> Marking {
    let mut seen: BTreeSet<Symbol> = BTreeSet::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (x, y) in instance.positions() {
        if seen.insert(instance.symbol_at(x, y)) {
            pairs.push((x, y));
        }
    }
    match instance.shape() {
        Shape::Set => Marking::pairs(pairs),
        _ => Marking::positions(pairs.into_iter().map(|(_, y)| y)),
    }
}

fn recheck(instance: &Instance, marking: &Marking, k: usize, sharp: bool) -> Result<()> {
    match verify_attractor(instance, marking, k, sharp)? {
        Verdict::Valid => Ok(()),
        Verdict::Invalid { witness } => Err(Error::Soundness(format!(
            "solver produced a marking that misses {:?}",
            instance.alphabet.render(&witness)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn running_example_minima() {
        let t = Instance::text_from_str("abbcabccac");
        assert_eq!(min_attractor_exact(&t, 2, false, BUDGET).unwrap().marking.len(), 3);
        assert_eq!(min_attractor_exact(&t, 2, true, BUDGET).unwrap().marking.len(), 3);
        assert_eq!(min_attractor_exact(&t, 3, false, BUDGET).unwrap().marking.len(), 4);
        // the full attractor (k = n) also has size 4
        assert_eq!(min_attractor_exact(&t, 10, false, BUDGET).unwrap().marking.len(), 4);
    }

    #[test]
    fn greedy_upper_bounds_exact() {
        for s in ["abbcabccac", "aaaa", "abcabcabc", "ab", ""] {
            let t = Instance::text_from_str(s);
            let k = t.max_len().max(1);
            let exact = min_attractor_exact(&t, k, false, BUDGET).unwrap();
            let greedy = min_attractor_greedy(&t, k, false).unwrap();
            assert!(greedy.marking.len() >= exact.marking.len(), "on {s:?}");
        }
    }

    #[test]
    fn min_one_attractor_marks_first_occurrences() {
        let t = Instance::text_from_str("abbcabccac");
        let m = min_1_attractor(&t);
        assert_eq!(m, Marking::positions([1, 2, 4]));
        assert!(verify_attractor(&t, &m, 1, false).unwrap().is_valid());
        let s = Instance::set_from_strs(&["", "ba", "c"]).unwrap();
        let m = min_1_attractor(&s);
        assert_eq!(m, Marking::pairs([(2, 1), (2, 2), (3, 1)]));
    }

    #[test]
    fn circular_and_set_shapes_solve() {
        let c = Instance::circular_from_str("ab").unwrap();
        let out = min_attractor_exact(&c, 2, false, BUDGET).unwrap();
        assert_eq!(out.marking.len(), 2);
        let s = Instance::set_from_strs(&["ab"]).unwrap();
        let out = min_attractor_exact(&s, 2, false, BUDGET).unwrap();
        assert_eq!(out.marking.len(), 2);
        let s = Instance::set_from_strs(&["ab", "c"]).unwrap();
        let out = min_attractor_exact(&s, 2, false, BUDGET).unwrap();
        assert_eq!(out.marking.len(), 3);
    }

    #[test]
    fn exact_matches_brute_force_markings() {
        // brute force over all position subsets on short strings
        for s in ["abab", "aabba", "abcba", "aaaaa", "abcab"] {
            let t = Instance::text_from_str(s);
            let n = t.total_len();
            for k in 1..=n {
                let exact = min_attractor_exact(&t, k, false, BUDGET).unwrap();
                let mut brute = usize::MAX;
                for mask in 0u32..(1 << n) {
                    let m = Marking::positions((1..=n).filter(|&y| mask >> (y - 1) & 1 == 1));
                    if verify_attractor(&t, &m, k, false).unwrap().is_valid() {
                        brute = brute.min(m.len());
                    }
                }
                assert_eq!(exact.marking.len(), brute, "string {s:?}, k = {k}");
            }
        }
    }

    #[test]
    fn sharp_relaxation_never_costs_more() {
        for s in ["abbcabccac", "abcabc", "aab"] {
            let t = Instance::text_from_str(s);
            for k in 1..=t.total_len().min(4) {
                let plain = min_attractor_exact(&t, k, false, BUDGET).unwrap();
                let sharp = min_attractor_exact(&t, k, true, BUDGET).unwrap();
                assert!(sharp.marking.len() <= plain.marking.len());
            }
        }
    }
}
