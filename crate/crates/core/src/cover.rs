//! A small exact set-cover engine.
//!
//! Elements each carry the set of candidates that can cover them; a cover is a
//! candidate subset hitting every element. The exact solver is a depth-first
//! branch and bound:
//!
//! * root reductions: duplicate/dominated elements are dropped (an element
//!   whose candidate set contains another element's candidate set is implied
//!   by it), then dominated candidates are dropped (a candidate whose element
//!   set is contained in another's can be replaced by it without growing the
//!   cover);
//! * upper bound: greedy cover;
//! * lower bound: a packing of pairwise candidate-disjoint uncovered elements,
//!   built greedily over a fixed fewest-candidates-first order;
//! * branching: pick the uncovered element with the fewest available
//!   candidates and try each in turn, banning the candidates already tried so
//!   the subtrees partition the solution space.
//!
//! Everything is deterministic; ties break toward smaller indices. The solver
//! counts search nodes and fails with `Error::BudgetExceeded` instead of ever
//! returning an unproven answer.

use crate::error::{Error, Result};

const BLOCK: usize = 64;

/// Fixed-capacity bitset over `0..capacity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    blocks: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            blocks: vec![0; capacity.div_ceil(BLOCK)],
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.blocks[i / BLOCK] |= 1 << (i % BLOCK);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.blocks[i / BLOCK] &= !(1 << (i % BLOCK));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.capacity);
        self.blocks[i / BLOCK] >> (i % BLOCK) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    /// Removes every member of `other`.
    pub fn subtract(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Members of `self` not in `banned`, counted.
    pub fn count_minus(&self, banned: &BitSet) -> usize {
        self.blocks
            .iter()
            .zip(&banned.blocks)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(bi * BLOCK + t)
                }
            })
        })
    }
}

/// A set-cover instance: `elements[e]` is the candidate set able to cover `e`.
#[derive(Clone, Debug)]
pub struct SetCover {
    num_candidates: usize,
    elements: Vec<BitSet>,
}

/// Result of an exact solve: a provably minimum cover and the node count.
#[derive(Clone, Debug)]
pub struct ExactCover {
    pub chosen: Vec<usize>,
    pub nodes: u64,
}

/// Node budget used when a caller does not supply one.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

impl SetCover {
    pub fn new(num_candidates: usize) -> Self {
        SetCover { num_candidates, elements: Vec::new() }
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn add_element<I: IntoIterator<Item = usize>>(&mut self, candidates: I) {
        let mut b = BitSet::new(self.num_candidates);
        for c in candidates {
            b.insert(c);
        }
        self.elements.push(b);
    }

    fn check_feasible(&self) -> Result<()> {
        for (i, e) in self.elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Infeasible(format!(
                    "element {i} has no covering candidate"
                )));
            }
        }
        Ok(())
    }

    /// Candidate -> covered-elements transpose.
    fn transpose(&self) -> Vec<BitSet> {
        let mut cand_elems = vec![BitSet::new(self.elements.len()); self.num_candidates];
        for (ei, e) in self.elements.iter().enumerate() {
            for c in e.iter() {
                cand_elems[c].insert(ei);
            }
        }
        cand_elems
    }

    /// Classic greedy cover: repeatedly take the candidate covering the most
    /// still-uncovered elements, ties toward the smaller index.
    pub fn solve_greedy(&self) -> Result<Vec<usize>> {
        self.check_feasible()?;
        let cand_elems = self.transpose();
        let mut uncovered = BitSet::new(self.elements.len());
        for i in 0..self.elements.len() {
            uncovered.insert(i);
        }
        let mut chosen = Vec::new();
        while !uncovered.is_empty() {
            let mut best = None;
            for (c, elems) in cand_elems.iter().enumerate() {
                let gain = elems
                    .blocks
                    .iter()
                    .zip(&uncovered.blocks)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>();
                if gain > 0 && best.map(|(g, _)| gain > g).unwrap_or(true) {
                    best = Some((gain, c));
                }
            }
            let (_, c) = best.expect("feasible instance always has a gaining candidate");
            chosen.push(c);
            uncovered.subtract(&cand_elems[c]);
        }
        Ok(chosen)
    }

    /// Exact minimum cover via branch and bound, or `BudgetExceeded` if the
    /// proof would take more than `budget` search nodes.
    pub fn solve_exact(&self, budget: u64) -> Result<ExactCover> {
        self.check_feasible()?;
        if self.elements.is_empty() {
            return Ok(ExactCover { chosen: Vec::new(), nodes: 0 });
        }

        // Element reduction. Processing by ascending candidate-set size lets a
        // single subset test against the kept list remove duplicates and
        // dominated elements in one pass.
        let mut order: Vec<usize> = (0..self.elements.len()).collect();
        order.sort_by_key(|&i| (self.elements[i].count(), i));
        let mut kept: Vec<usize> = Vec::new();
        for &i in &order {
            if !kept
                .iter()
                .any(|&j| self.elements[j].is_subset_of(&self.elements[i]))
            {
                kept.push(i);
            }
        }
        kept.sort_unstable();
        let elems: Vec<&BitSet> = kept.iter().map(|&i| &self.elements[i]).collect();

        // Candidate transpose over the reduced universe, then candidate
        // dominance: a candidate whose element set is contained in a kept
        // candidate's may start banned.
        let mut cand_elems = vec![BitSet::new(elems.len()); self.num_candidates];
        for (ei, e) in elems.iter().enumerate() {
            for c in e.iter() {
                cand_elems[c].insert(ei);
            }
        }
        let mut banned = BitSet::new(self.num_candidates);
        let mut cand_order: Vec<usize> = (0..self.num_candidates).collect();
        cand_order.sort_by_key(|&c| (usize::MAX - cand_elems[c].count(), c));
        let mut kept_cands: Vec<usize> = Vec::new();
        for &c in &cand_order {
            if cand_elems[c].is_empty()
                || kept_cands
                    .iter()
                    .any(|&d| cand_elems[c].is_subset_of(&cand_elems[d]))
            {
                banned.insert(c);
            } else {
                kept_cands.push(c);
            }
        }

        // Greedy upper bound on the reduced instance.
        let mut reduced = SetCover::new(self.num_candidates);
        for e in &elems {
            let mut avail: Vec<usize> = e.iter().filter(|&c| !banned.contains(c)).collect();
            avail.sort_unstable();
            reduced.add_element(avail);
        }
        let mut best = reduced.solve_greedy()?;
        let mut search = Search {
            elems: &reduced.elements,
            cand_elems: &cand_elems,
            pack_order: {
                let mut o: Vec<usize> = (0..reduced.elements.len()).collect();
                o.sort_by_key(|&i| (reduced.elements[i].count(), i));
                o
            },
            best_size: best.len(),
            best: &mut best,
            nodes: 0,
            budget,
        };
        let mut covered = BitSet::new(reduced.elements.len());
        let mut chosen = Vec::new();
        search.dfs(&mut covered, &mut banned, &mut chosen)?;
        let nodes = search.nodes;
        best.sort_unstable();
        Ok(ExactCover { chosen: best, nodes })
    }
}

struct Search<'a> {
    elems: &'a [BitSet],
    cand_elems: &'a [BitSet],
    pack_order: Vec<usize>,
    best_size: usize,
    best: &'a mut Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn dfs(
        &mut self,
        covered: &mut BitSet,
        banned: &mut BitSet,
        chosen: &mut Vec<usize>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes, budget: self.budget });
        }

        if covered.count() == self.elems.len() {
            if chosen.len() < self.best_size {
                self.best_size = chosen.len();
                *self.best = chosen.clone();
            }
            return Ok(());
        }

        // Packing lower bound; also detects dead branches (an uncovered
        // element with every candidate banned).
        let mut used = BitSet::new(banned.capacity());
        let mut lb = 0usize;
        for &e in &self.pack_order {
            if covered.contains(e) {
                continue;
            }
            let mut avail = self.elems[e].clone();
            avail.subtract(banned);
            if avail.is_empty() {
                return Ok(());
            }
            if !avail.intersects(&used) {
                lb += 1;
                used.union_with(&avail);
            }
        }
        if chosen.len() + lb >= self.best_size {
            return Ok(());
        }

        // Branch on the uncovered element with the fewest available candidates.
        let mut pick = None;
        for (e, cands) in self.elems.iter().enumerate() {
            if covered.contains(e) {
                continue;
            }
            let avail = cands.count_minus(banned);
            if pick.map(|(a, _)| avail < a).unwrap_or(true) {
                pick = Some((avail, e));
            }
        }
        let (_, e) = pick.expect("some element is uncovered");
        let avail: Vec<usize> = self.elems[e].iter().filter(|&c| !banned.contains(c)).collect();
        let mut newly_banned = Vec::new();
        for c in avail {
            chosen.push(c);
            let mut child_covered = covered.clone();
            child_covered.union_with(&self.cand_elems[c]);
            self.dfs(&mut child_covered, banned, chosen)?;
            chosen.pop();
            banned.insert(c);
            newly_banned.push(c);
        }
        for c in newly_banned {
            banned.remove(c);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover_of(elements: &[&[usize]], num_candidates: usize) -> SetCover {
        let mut sc = SetCover::new(num_candidates);
        for e in elements {
            sc.add_element(e.iter().copied());
        }
        sc
    }

    fn covers(sc: &SetCover, chosen: &[usize]) -> bool {
        (0..sc.num_elements()).all(|e| chosen.iter().any(|&c| sc.elements[e].contains(c)))
    }

    #[test]
    fn bitset_basics() {
        let mut b = BitSet::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.count(), 3);
        assert!(b.contains(64) && !b.contains(65));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.remove(64);
        assert_eq!(b.count(), 2);
        let mut c = BitSet::new(130);
        c.insert(129);
        assert!(c.is_subset_of(&b));
        assert!(b.intersects(&c));
        b.subtract(&c);
        assert!(!b.contains(129));
    }

    #[test]
    fn exact_beats_greedy_on_classic_trap() {
        // Greedy picks the big middle set first and needs 3; optimum is 2.
        let sc = cover_of(
            &[&[0, 2], &[0, 2], &[0, 1], &[1, 2], &[1, 2][..]],
            3,
        );
        let greedy = sc.solve_greedy().unwrap();
        assert!(covers(&sc, &greedy));
        let exact = sc.solve_exact(10_000).unwrap();
        assert!(covers(&sc, &exact.chosen));
        assert_eq!(exact.chosen.len(), 2);
        assert!(greedy.len() >= exact.chosen.len());
    }

    #[test]
    fn infeasible_and_trivial() {
        let sc = cover_of(&[&[][..]], 3);
        assert!(matches!(sc.solve_exact(100), Err(Error::Infeasible(_))));
        assert!(matches!(sc.solve_greedy(), Err(Error::Infeasible(_))));
        let sc = cover_of(&[], 3);
        assert_eq!(sc.solve_exact(100).unwrap().chosen.len(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        // The trap instance needs more than one node; a budget of 1 must fail
        // with the budget error rather than return the greedy bound.
        let sc = cover_of(
            &[&[0, 2], &[0, 2], &[0, 1], &[1, 2], &[1, 2][..]],
            3,
        );
        match sc.solve_exact(1) {
            Err(Error::BudgetExceeded { nodes, budget: 1 }) => assert!(nodes > 1),
            other => panic!("expected budget error, got {other:?}"),
        }
        let full = sc.solve_exact(DEFAULT_NODE_BUDGET).unwrap();
        assert!(full.nodes > 1);
    }

    #[test]
    fn exact_matches_brute_force_on_small_instances() {
        // Deterministic pseudo-random instances, checked against subset enumeration.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..40 {
            let num_candidates = 3 + (next() % 6) as usize; // 3..=8
            let num_elements = 1 + (next() % 8) as usize; // 1..=8
            let mut sc = SetCover::new(num_candidates);
            for _ in 0..num_elements {
                let mut cands: Vec<usize> = (0..num_candidates)
                    .filter(|_| next() % 3 == 0)
                    .collect();
                if cands.is_empty() {
                    cands.push((next() % num_candidates as u64) as usize);
                }
                sc.add_element(cands);
            }
            let exact = sc.solve_exact(1_000_000).unwrap();
            assert!(covers(&sc, &exact.chosen), "trial {trial}");
            let mut brute = usize::MAX;
            for mask in 0u32..(1 << num_candidates) {
                let chosen: Vec<usize> =
                    (0..num_candidates).filter(|&c| mask >> c & 1 == 1).collect();
                if covers(&sc, &chosen) {
                    brute = brute.min(chosen.len());
                }
            }
            assert_eq!(exact.chosen.len(), brute, "trial {trial}");
            let greedy = sc.solve_greedy().unwrap();
            assert!(covers(&sc, &greedy));
            assert!(greedy.len() >= exact.chosen.len());
        }
    }

    #[test]
    fn deterministic_output() {
        let sc = cover_of(&[&[0, 3], &[1, 3], &[2, 3], &[0, 1][..]], 4);
        let a = sc.solve_exact(10_000).unwrap();
        let b = sc.solve_exact(10_000).unwrap();
        assert_eq!(a.chosen, b.chosen);
        assert_eq!(a.nodes, b.nodes);
    }
}
