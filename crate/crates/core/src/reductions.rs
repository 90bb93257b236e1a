//! Reductions from (3,B2)-SAT to colorful edge cover and to 2-attractors on
//! string sets, with certificate converters in both directions.
//!
//! For a balanced formula with n variables and m = 4n/3 clauses:
//!
//! * the cover reduction builds a graph with 7m vertices (one clause vertex,
//!   three intermediates, and three literal vertices per clause), 6m
//!   structural color-0 edges, and one color-a edge per variable polarity
//!   (2n); its minimum colorful cover is 5n exactly when the formula is
//!   satisfiable, and larger otherwise;
//! * the attractor reduction writes two 7-symbol strings per variable plus
//!   six auxiliary strings; the set has a 2-attractor of size 5n+6 exactly
//!   when the formula is satisfiable, and the stitched single string one of
//!   size 7n+11.
//!
//! `gap_bounds` turns the unsatisfied-clause count u of a MAX-SAT optimum
//! into the exact interval the stitched minimum must land in.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, CoverVerdict, EdgeSelection};
use crate::sat::{Assignment, Cnf3B2};
use crate::solvers::min_attractor_exact;
use crate::text::{Instance, Marking};
use crate::transforms::{set_to_string, TransformResult};
use crate::verify::{verify_attractor, Verdict};

/// Where a variable's four literal slots live: (clause, slot) pairs, 1-based,
/// in scan order (so i1 <= i2, and j1 < j2 when the clause coincides).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarOccurrences {
    pub positive: [(usize, usize); 2],
    pub negative: [(usize, usize); 2],
}

fn scan_occurrences(formula: &Cnf3B2) -> Result<Vec<VarOccurrences>> {
    let violations = formula.validate_3b2();
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidParameter(format!(
            "formula is not (3,B2): {}",
            msgs.join("; ")
        )));
    }
    if formula.num_clauses() == 0 {
        return Err(Error::InvalidParameter(
            "reduction needs at least one clause".into(),
        ));
    }
    let mut pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); formula.num_vars];
    let mut neg: Vec<Vec<(usize, usize)>> = vec![Vec::new(); formula.num_vars];
    for (i, clause) in formula.clauses.iter().enumerate() {
        for (j, lit) in clause.iter().enumerate() {
            let side = if lit.positive { &mut pos } else { &mut neg };
            side[lit.var - 1].push((i + 1, j + 1));
        }
    }
    Ok((0..formula.num_vars)
        .map(|a| VarOccurrences {
            positive: [pos[a][0], pos[a][1]],
            negative: [neg[a][0], neg[a][1]],
        })
        .collect())
}

/// The colorful-edge-cover side of the reduction.
#[derive(Clone, Debug)]
pub struct CecArtifact {
    pub formula: Cnf3B2,
    pub graph: ColoredGraph,
    /// 5n: the cover size achieved exactly when the formula is satisfiable.
    pub predicted_cover_size: usize,
    occurrences: Vec<VarOccurrences>,
}

impl CecArtifact {
    fn m(&self) -> usize {
        self.formula.num_clauses()
    }

    /// Vertex id of clause vertex c_i.
    pub fn clause_vertex(&self, i: usize) -> u32 {
        (i - 1) as u32
    }

    /// Vertex id of intermediate vertex c_{i,j}.
    pub fn intermediate_vertex(&self, i: usize, j: usize) -> u32 {
        (self.m() + 3 * (i - 1) + (j - 1)) as u32
    }

    /// Vertex id of literal vertex l_{i,j}.
    pub fn literal_vertex(&self, i: usize, j: usize) -> u32 {
        (4 * self.m() + 3 * (i - 1) + (j - 1)) as u32
    }

    /// Edge index of {c_i, c_{i,j}} (`leg == 0`) or {c_{i,j}, l_{i,j}}
    /// (`leg == 1`).
    pub fn structural_edge(&self, i: usize, j: usize, leg: usize) -> usize {
        6 * (i - 1) + 2 * (j - 1) + leg
    }

    /// Edge index of variable a's color-a edge for the given polarity.
    pub fn variable_edge(&self, a: usize, positive: bool) -> usize {
        6 * self.m() + 2 * (a - 1) + usize::from(!positive)
    }

    pub fn occurrences(&self, a: usize) -> VarOccurrences {
        self.occurrences[a - 1]
    }

    /// Human name of a vertex: `c3`, `c3.1`, or `l3.1`.
    pub fn vertex_label(&self, v: u32) -> String {
        let v = v as usize;
        let m = self.m();
        if v < m {
            format!("c{}", v + 1)
        } else if v < 4 * m {
            let r = v - m;
            format!("c{}.{}", r / 3 + 1, r % 3 + 1)
        } else {
            let r = v - 4 * m;
            format!("l{}.{}", r / 3 + 1, r % 3 + 1)
        }
    }
}

/// Builds the colorful-edge-cover instance of a balanced formula.
pub fn sat_to_cec(formula: &Cnf3B2) -> Result<CecArtifact> {
    let occurrences = scan_occurrences(formula)?;
    let n = formula.num_vars;
    let m = formula.num_clauses();
    let mut art = CecArtifact {
        formula: formula.clone(),
        // placeholder; replaced below once the edges exist
        graph: ColoredGraph::new(vec![0], vec![0], vec![(0, 0, 0)])?,
        predicted_cover_size: 5 * n,
        occurrences,
    };
    let mut edges = Vec::with_capacity(6 * m + 2 * n);
    for i in 1..=m {
        for j in 1..=3 {
            edges.push((art.clause_vertex(i), art.intermediate_vertex(i, j), 0));
            edges.push((art.intermediate_vertex(i, j), art.literal_vertex(i, j), 0));
        }
    }
    for a in 1..=n {
        let occ = art.occurrences[a - 1];
        let [(i1, j1), (i2, j2)] = occ.positive;
        edges.push((art.literal_vertex(i1, j1), art.literal_vertex(i2, j2), a as u32));
        let [(i3, j3), (i4, j4)] = occ.negative;
        edges.push((art.literal_vertex(i3, j3), art.literal_vertex(i4, j4), a as u32));
    }
    art.graph = ColoredGraph::new(
        (0..(7 * m) as u32).collect(),
        (0..=n as u32).collect(),
        edges,
    )?;
    Ok(art)
}

/// Encodes a satisfying assignment as a colorful cover of size exactly 5n:
/// per variable, its polarity edge, the two {c_i, c_{i,j}} edges at the slots
/// its assignment makes true, and the two {c_{i,j}, l_{i,j}} edges at the
/// slots it makes false.
pub fn assignment_to_cover(art: &CecArtifact, asg: &Assignment) -> Result<EdgeSelection> {
    check_assignment(&art.formula, asg)?;
    let mut sel = BTreeSet::new();
    for a in 1..=art.formula.num_vars {
        let value = asg.value(a);
        sel.insert(art.variable_edge(a, value));
        let occ = art.occurrences[a - 1];
        let (true_slots, false_slots) = if value {
            (occ.positive, occ.negative)
        } else {
            (occ.negative, occ.positive)
        };
        for (i, j) in true_slots {
            sel.insert(art.structural_edge(i, j, 0));
        }
        for (i, j) in false_slots {
            sel.insert(art.structural_edge(i, j, 1));
        }
    }
    let sel = EdgeSelection(sel);
    if sel.len() != art.predicted_cover_size {
        return Err(Error::Soundness(format!(
            "encoded cover has size {}, expected {}",
            sel.len(),
            art.predicted_cover_size
        )));
    }
    match art.graph.verify_cover(&sel, true)? {
        CoverVerdict::Valid => Ok(sel),
        CoverVerdict::Invalid { missing } => Err(Error::Soundness(format!(
            "encoded cover misses {missing}"
        ))),
    }
}

/// Decodes a valid cover of size exactly 5n back into a satisfying
/// assignment: variable a is true when its positive color-a edge is selected.
pub fn cover_to_assignment(art: &CecArtifact, sel: &EdgeSelection) -> Result<Assignment> {
    if sel.len() != art.predicted_cover_size {
        return Err(Error::InvalidCertificate(format!(
            "cover has size {}, expected exactly {}",
            sel.len(),
            art.predicted_cover_size
        )));
    }
    match art.graph.verify_cover(sel, true)? {
        CoverVerdict::Valid => {}
        CoverVerdict::Invalid { missing } => {
            return Err(Error::InvalidCertificate(format!(
                "selection is not a colorful cover: misses {missing}"
            )))
        }
    }
    let mut values = Vec::with_capacity(art.formula.num_vars);
    for a in 1..=art.formula.num_vars {
        let pos = sel.0.contains(&art.variable_edge(a, true));
        let neg = sel.0.contains(&art.variable_edge(a, false));
        if pos == neg {
            return Err(Error::Soundness(format!(
                "a minimum cover selects exactly one polarity edge of x{a}, found {}",
                if pos { "both" } else { "neither" }
            )));
        }
        values.push(pos);
    }
    let asg = Assignment(values);
    if let Some(clause) = art.formula.first_unsatisfied(&asg) {
        return Err(Error::Soundness(format!(
            "decoded assignment leaves clause {clause} unsatisfied"
        )));
    }
    Ok(asg)
}

/// The 2-attractor side of the reduction.
#[derive(Clone, Debug)]
pub struct AttractorArtifact {
    pub formula: Cnf3B2,
    /// The string set: two 7-symbol strings per variable, then the six
    /// 2-symbol auxiliary strings.
    pub set: Instance,
    /// The stitched single-string form of `set` (2n+5 delimiters).
    pub stitched: TransformResult,
    /// 5n+6: the set-attractor size achieved exactly when satisfiable.
    pub predicted_set_size: usize,
    /// 7n+11: the stitched-string attractor size when satisfiable.
    pub predicted_stitched_size: usize,
    occurrences: Vec<VarOccurrences>,
}

impl AttractorArtifact {
    /// 1-based index of variable a's positive string.
    pub fn positive_string(&self, a: usize) -> usize {
        2 * a - 1
    }

    /// 1-based index of variable a's negative string.
    pub fn negative_string(&self, a: usize) -> usize {
        2 * a
    }

    /// 1-based index of the auxiliary string for L_j (or its negated twin).
    pub fn aux_string(&self, j: usize, negated: bool) -> usize {
        2 * self.formula.num_vars + 2 * (j - 1) + 1 + usize::from(negated)
    }

    pub fn occurrences(&self, a: usize) -> VarOccurrences {
        self.occurrences[a - 1]
    }
}

/// Builds the string-set instance of a balanced formula. The alphabet lays
/// out symbol ids as C1..Cm, L1..L3, ~L1..~L3, X1..Xn.
pub fn sat_to_attractor(formula: &Cnf3B2) -> Result<AttractorArtifact> {
    let occurrences = scan_occurrences(formula)?;
    let n = formula.num_vars;
    let m = formula.num_clauses();

    let mut alphabet = Alphabet::new();
    let c: Vec<_> = (1..=m).map(|i| alphabet.intern(&format!("C{i}"))).collect();
    let l: Vec<_> = (1..=3).map(|j| alphabet.intern(&format!("L{j}"))).collect();
    let lbar: Vec<_> = (1..=3).map(|j| alphabet.intern(&format!("~L{j}"))).collect();
    let x: Vec<_> = (1..=n).map(|a| alphabet.intern(&format!("X{a}"))).collect();

    let mut texts = Vec::with_capacity(2 * n + 6);
    for a in 1..=n {
        let occ = occurrences[a - 1];
        for (slots, lsym) in [(occ.positive, &l), (occ.negative, &lbar)] {
            let [(i1, j1), (i2, j2)] = slots;
            texts.push(vec![
                c[i1 - 1],
                c[i1 - 1],
                lsym[j1 - 1],
                x[a - 1],
                lsym[j2 - 1],
                c[i2 - 1],
                c[i2 - 1],
            ]);
        }
    }
    for j in 1..=3 {
        texts.push(vec![l[j - 1], l[j - 1]]);
        texts.push(vec![lbar[j - 1], lbar[j - 1]]);
    }

    let set = Instance::set(alphabet, texts)?;
    let stitched = set_to_string(&set)?;
    Ok(AttractorArtifact {
        formula: formula.clone(),
        set,
        stitched,
        predicted_set_size: 5 * n + 6,
        predicted_stitched_size: 7 * n + 11,
        occurrences,
    })
}

/// Encodes a satisfying assignment as a 2-set attractor of size exactly
/// 5n+6: a true variable marks positions 2, 4, 6 of its positive string and
/// 3, 5 of its negative string (a false one mirrors this), plus position 1 of
/// every auxiliary string.
pub fn assignment_to_marking(art: &AttractorArtifact, asg: &Assignment) -> Result<Marking> {
    check_assignment(&art.formula, asg)?;
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for a in 1..=art.formula.num_vars {
        let (full, half) = if asg.value(a) {
            (art.positive_string(a), art.negative_string(a))
        } else {
            (art.negative_string(a), art.positive_string(a))
        };
        pairs.extend([(full, 2), (full, 4), (full, 6), (half, 3), (half, 5)]);
    }
    for j in 1..=3 {
        pairs.insert((art.aux_string(j, false), 1));
        pairs.insert((art.aux_string(j, true), 1));
    }
    let marking = Marking::Pairs(pairs);
    if marking.len() != art.predicted_set_size {
        return Err(Error::Soundness(format!(
            "encoded marking has size {}, expected {}",
            marking.len(),
            art.predicted_set_size
        )));
    }
    match verify_attractor(&art.set, &marking, 2, false)? {
        Verdict::Valid => Ok(marking),
        Verdict::Invalid { witness } => Err(Error::Soundness(format!(
            "encoded marking misses {:?}",
            art.set.alphabet.render(&witness)
        ))),
    }
}

/// Decodes a valid 2-set attractor of size exactly 5n+6 back into a
/// satisfying assignment: variable a is true when position 4 of its positive
/// string (the occurrence of X_a there) is marked.
pub fn marking_to_assignment(art: &AttractorArtifact, marking: &Marking) -> Result<Assignment> {
    if marking.len() != art.predicted_set_size {
        return Err(Error::InvalidCertificate(format!(
            "marking has size {}, expected exactly {}",
            marking.len(),
            art.predicted_set_size
        )));
    }
    match verify_attractor(&art.set, marking, 2, false)? {
        Verdict::Valid => {}
        Verdict::Invalid { witness } => {
            return Err(Error::InvalidCertificate(format!(
                "marking is not a 2-attractor of the set: misses {:?}",
                art.set.alphabet.render(&witness)
            )))
        }
    }
    let mut values = Vec::with_capacity(art.formula.num_vars);
    for a in 1..=art.formula.num_vars {
        let pos = marking.contains(art.positive_string(a), 4);
        let neg = marking.contains(art.negative_string(a), 4);
        if pos == neg {
            return Err(Error::Soundness(format!(
                "a minimum marking covers X{a} exactly once, found it marked {}",
                if pos { "twice" } else { "never" }
            )));
        }
        values.push(pos);
    }
    let asg = Assignment(values);
    if let Some(clause) = art.formula.first_unsatisfied(&asg) {
        return Err(Error::Soundness(format!(
            "decoded assignment leaves clause {clause} unsatisfied"
        )));
    }
    Ok(asg)
}

fn check_assignment(formula: &Cnf3B2, asg: &Assignment) -> Result<()> {
    if asg.len() != formula.num_vars {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} values, formula has {} variables",
            asg.len(),
            formula.num_vars
        )));
    }
    if let Some(clause) = formula.first_unsatisfied(asg) {
        return Err(Error::InvalidCertificate(format!(
            "assignment does not satisfy clause {clause}"
        )));
    }
    Ok(())
}

/// The interval the minimum stitched-string attractor size lies in, given m
/// clauses (m divisible by 4) and u unsatisfied clauses at the MAX-SAT
/// optimum: [21m/4 + 11 + ceil(u/2), 21m/4 + 11 + u].
pub fn gap_bounds(m: usize, u: usize) -> Result<(usize, usize)> {
    if m == 0 || m % 4 != 0 {
        return Err(Error::InvalidParameter(format!(
            "clause count must be a positive multiple of 4, got {m}"
        )));
    }
    if u > m {
        return Err(Error::InvalidParameter(format!(
            "unsatisfied count {u} exceeds clause count {m}"
        )));
    }
    let base = 21 * m / 4 + 11;
    Ok((base + u.div_ceil(2), base + u))
}

/// One row of the gap experiment: generate, solve MAX-SAT by brute force,
/// reduce, solve the stitched string exactly (full k), and check membership
/// in the [`gap_bounds`] interval.
#[derive(Clone, Debug)]
pub struct GapTrialRow {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub sat: bool,
    pub u: usize,
    pub predicted: usize,
    pub exact: usize,
    pub lower: usize,
    pub upper: usize,
    pub within_bounds: bool,
}

/// Runs one seeded gap trial at `n` variables.
pub fn gap_trial(n: usize, seed: u64, budget: u64) -> Result<GapTrialRow> {
    let formula = crate::sat::generate_3b2(n, seed, false)?;
    let m = formula.num_clauses();
    let (max_sat, _) = formula.max_sat_bruteforce()?;
    let u = m - max_sat;
    let art = sat_to_attractor(&formula)?;
    let stitched = &art.stitched.target;
    let full_k = stitched.total_len();
    let exact = min_attractor_exact(stitched, full_k, false, budget)?
        .marking
        .len();
    let (lower, upper) = gap_bounds(m, u)?;
    Ok(GapTrialRow {
        seed,
        n,
        m,
        sat: u == 0,
        u,
        predicted: art.predicted_stitched_size,
        exact,
        lower,
        upper,
        within_bounds: lower <= exact && exact <= upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{example_formula, Literal};

    const BUDGET: u64 = 10_000_000;

    /// A handcrafted unsatisfiable balanced formula: x2 is forced true by the
    /// first two clauses, making the last two demand x3 and ~x3.
    fn unsat_formula() -> Cnf3B2 {
        Cnf3B2::new(
            3,
            vec![
                vec![Literal::pos(1), Literal::pos(1), Literal::pos(2)],
                vec![Literal::neg(1), Literal::neg(1), Literal::pos(2)],
                vec![Literal::pos(3), Literal::pos(3), Literal::neg(2)],
                vec![Literal::neg(3), Literal::neg(3), Literal::neg(2)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn cec_artifact_counts() {
        let art = sat_to_cec(&example_formula()).unwrap();
        assert_eq!(art.graph.num_vertices(), 28); // 7m
        assert_eq!(art.graph.num_edges(), 30); // 6m + 2n
        assert_eq!(art.graph.colors().len(), 4); // n + 1
        assert_eq!(art.predicted_cover_size, 15);
        assert_eq!(art.vertex_label(art.clause_vertex(2)), "c2");
        assert_eq!(art.vertex_label(art.intermediate_vertex(4, 3)), "c4.3");
        assert_eq!(art.vertex_label(art.literal_vertex(1, 2)), "l1.2");
        // x1 appears positively in clauses 1 and 3 (both slot 1)
        assert_eq!(art.occurrences(1).positive, [(1, 1), (3, 1)]);
        assert!(sat_to_cec(&Cnf3B2::new(1, vec![]).unwrap()).is_err());
    }

    #[test]
    fn cec_minimum_tracks_satisfiability() {
        let sat_art = sat_to_cec(&example_formula()).unwrap();
        let out = sat_art.graph.min_colorful_cover_exact(BUDGET).unwrap();
        assert_eq!(out.selection.len(), 15);

        let unsat_art = sat_to_cec(&unsat_formula()).unwrap();
        let out = unsat_art.graph.min_colorful_cover_exact(BUDGET).unwrap();
        assert_eq!(out.selection.len(), 16); // 5n + 1: one clause stays unsatisfied
    }

    #[test]
    fn cover_certificates_roundtrip() {
        let f = example_formula();
        let art = sat_to_cec(&f).unwrap();
        let asg = Assignment(vec![true, false, false]);
        let sel = assignment_to_cover(&art, &asg).unwrap();
        assert_eq!(sel.len(), 15);
        let back = cover_to_assignment(&art, &sel).unwrap();
        assert_eq!(back, asg);
        // decoding a solver-found minimum also satisfies
        let out = art.graph.min_colorful_cover_exact(BUDGET).unwrap();
        let decoded = cover_to_assignment(&art, &out.selection).unwrap();
        assert!(f.evaluate(&decoded));
        // non-satisfying assignment rejected
        let bad = Assignment(vec![false, false, false]);
        assert!(matches!(
            assignment_to_cover(&art, &bad),
            Err(Error::InvalidCertificate(_))
        ));
        // wrong-size selection rejected
        let small = EdgeSelection::from_indices(0..14);
        assert!(matches!(
            cover_to_assignment(&art, &small),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn attractor_artifact_counts() {
        let art = sat_to_attractor(&example_formula()).unwrap();
        assert_eq!(art.set.num_strings(), 12); // 2n + 6
        assert_eq!(art.set.total_len(), 54); // 14n + 12
        assert_eq!(art.stitched.target.total_len(), 65); // 16n + 17
        assert_eq!(art.stitched.size_offset, 11); // 2n + 5
        assert_eq!((art.predicted_set_size, art.predicted_stitched_size), (21, 32));
        // positive string of x1: C1 C1 L1 X1 L3 C3 C3 (slots (1,1) and (3,1)...
        // x1 sits at slot 1 of clauses 1 and 3)
        assert_eq!(art.occurrences(1).positive, [(1, 1), (3, 1)]);
        assert_eq!(
            art.set.alphabet.render(&art.set.strings()[0]),
            "C1 C1 L1 X1 L1 C3 C3"
        );
        assert_eq!(
            art.set.alphabet.render(&art.set.strings()[11]),
            "~L3 ~L3"
        );
    }

    #[test]
    fn attractor_minimum_tracks_satisfiability() {
        let sat_art = sat_to_attractor(&example_formula()).unwrap();
        let out = min_attractor_exact(&sat_art.set, 2, false, BUDGET).unwrap();
        assert_eq!(out.marking.len(), 21);
        let stitched = min_attractor_exact(&sat_art.stitched.target, 2, false, BUDGET).unwrap();
        assert_eq!(stitched.marking.len(), 32);

        let unsat_art = sat_to_attractor(&unsat_formula()).unwrap();
        let out = min_attractor_exact(&unsat_art.set, 2, false, BUDGET).unwrap();
        assert_eq!(out.marking.len(), 22); // 5n + 7
        let stitched = min_attractor_exact(&unsat_art.stitched.target, 2, false, BUDGET).unwrap();
        assert_eq!(stitched.marking.len(), 33);
    }

    #[test]
    fn marking_certificates_roundtrip() {
        let f = example_formula();
        let art = sat_to_attractor(&f).unwrap();
        for asg in [
            Assignment(vec![true, false, false]),
            Assignment(vec![false, false, true]),
        ] {
            let marking = assignment_to_marking(&art, &asg).unwrap();
            assert_eq!(marking.len(), 21);
            assert!(verify_attractor(&art.set, &marking, 2, false).unwrap().is_valid());
            let back = marking_to_assignment(&art, &marking).unwrap();
            assert_eq!(back, asg);
        }
        // a marking straight from the exact solver decodes to a satisfying
        // assignment too
        let out = min_attractor_exact(&art.set, 2, false, BUDGET).unwrap();
        let decoded = marking_to_assignment(&art, &out.marking).unwrap();
        assert!(f.evaluate(&decoded));
        // rejection paths
        assert!(matches!(
            assignment_to_marking(&art, &Assignment(vec![true; 3])),
            Err(Error::InvalidCertificate(_))
        ));
        let small = Marking::pairs([(1, 1)]);
        assert!(matches!(
            marking_to_assignment(&art, &small),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn gap_bounds_formula() {
        assert_eq!(gap_bounds(4, 0).unwrap(), (32, 32));
        assert_eq!(gap_bounds(4, 1).unwrap(), (33, 33));
        assert_eq!(gap_bounds(8, 0).unwrap(), (53, 53));
        assert_eq!(gap_bounds(8, 2).unwrap(), (54, 55));
        assert_eq!(gap_bounds(8, 3).unwrap(), (55, 56));
        assert!(gap_bounds(5, 0).is_err());
        assert!(gap_bounds(0, 0).is_err());
        assert!(gap_bounds(4, 5).is_err());
    }

    #[test]
    fn unsat_stitched_minimum_sits_in_gap_interval() {
        let art = sat_to_attractor(&unsat_formula()).unwrap();
        let stitched = &art.stitched.target;
        let out = min_attractor_exact(stitched, stitched.total_len(), false, BUDGET).unwrap();
        let (lo, hi) = gap_bounds(4, 1).unwrap();
        assert!(lo <= out.marking.len() && out.marking.len() <= hi);
        assert_eq!(out.marking.len(), 33);
    }

    #[test]
    fn gap_trial_row_smoke() {
        let row = gap_trial(3, 7, BUDGET).unwrap();
        assert_eq!((row.n, row.m), (3, 4));
        assert_eq!(row.sat, row.u == 0);
        assert!(row.within_bounds);
        assert_eq!(row.predicted, 32);
        let again = gap_trial(3, 7, BUDGET).unwrap();
        assert_eq!(row.exact, again.exact);
    }
}
