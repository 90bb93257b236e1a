//! The 2-substring graph of a string set.
//!
//! Vertices are the distinct length-2 substrings; position y of a member
//! string T owns one edge labeled (colored) by T[y]:
//!
//! * interior position (1 < y < n): edge between the 2-gram ending at y and
//!   the 2-gram starting at y;
//! * y = 1: a self-loop on the first 2-gram, colored by the first symbol;
//! * y = n: a self-loop on the last 2-gram, colored by the last symbol.
//!
//! Positions whose edges agree on endpoints and color share one merged edge;
//! the merged edge remembers every owning occurrence. Colorful edge covers of
//! this graph correspond size-for-size to 2-attractors of the set, and plain
//! edge covers to sharp 2-attractors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, CoverVerdict, EdgeSelection};
use crate::text::{Instance, Marking, Shape};
use crate::verify::{verify_attractor, Verdict};

/// How a position relates to its owning edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    Interior,
    Prefix,
    Suffix,
}

impl EdgeClass {
    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::Interior => "interior",
            EdgeClass::Prefix => "prefix",
            EdgeClass::Suffix => "suffix",
        }
    }
}

/// One position owning (an occurrence of) an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub string: usize,
    pub pos: usize,
    pub class: EdgeClass,
}

/// The 2-substring graph plus the bookkeeping tying it back to the text.
#[derive(Clone, Debug)]
pub struct SubstringGraph {
    pub graph: ColoredGraph,
    source_shape: Shape,
    vertex_grams: Vec<[Symbol; 2]>,
    provenance: Vec<Vec<Occurrence>>,
    position_owner: Vec<Vec<usize>>,
}

impl SubstringGraph {
    /// Builds the graph for a string or string set whose member strings all
    /// have length >= 2 (shorter members are an error; solver entry points
    /// preprocess them away).
    pub fn build(instance: &Instance) -> Result<SubstringGraph> {
        if instance.shape() == Shape::Circular {
            return Err(Error::InvalidParameter(
                "the 2-substring graph is defined for strings and string sets; \
                 transform circular instances first"
                    .into(),
            ));
        }
        for (i, t) in instance.strings().iter().enumerate() {
            if t.len() < 2 {
                return Err(Error::InvalidParameter(format!(
                    "string {} has length {} but the 2-substring graph needs length >= 2",
                    i + 1,
                    t.len()
                )));
            }
        }

        let mut gram_ids: HashMap<[Symbol; 2], u32> = HashMap::new();
        let mut vertex_grams: Vec<[Symbol; 2]> = Vec::new();
        let mut gram_id = |g: [Symbol; 2], grams: &mut Vec<[Symbol; 2]>| -> u32 {
            *gram_ids.entry(g).or_insert_with(|| {
                grams.push(g);
                (grams.len() - 1) as u32
            })
        };

        let mut edge_ids: HashMap<(u32, u32, u32), usize> = HashMap::new();
        let mut edge_list: Vec<(u32, u32, u32)> = Vec::new();
        let mut provenance: Vec<Vec<Occurrence>> = Vec::new();
        let mut position_owner: Vec<Vec<usize>> = Vec::new();

        for (i, t) in instance.strings().iter().enumerate() {
            let n = t.len();
            let mut owners = Vec::with_capacity(n);
            for y in 1..=n {
                let (u, v, class) = if y == 1 {
                    let g = gram_id([t[0], t[1]], &mut vertex_grams);
                    (g, g, EdgeClass::Prefix)
                } else if y == n {
                    let g = gram_id([t[n - 2], t[n - 1]], &mut vertex_grams);
                    (g, g, EdgeClass::Suffix)
                } else {
                    let a = gram_id([t[y - 2], t[y - 1]], &mut vertex_grams);
                    let b = gram_id([t[y - 1], t[y]], &mut vertex_grams);
                    (a, b, EdgeClass::Interior)
                };
                let color = t[y - 1].0;
                let key = (u.min(v), u.max(v), color);
                let idx = *edge_ids.entry(key).or_insert_with(|| {
                    edge_list.push((key.0, key.1, key.2));
                    provenance.push(Vec::new());
                    edge_list.len() - 1
                });
                provenance[idx].push(Occurrence { string: i + 1, pos: y, class });
                owners.push(idx);
            }
            position_owner.push(owners);
        }

        let colors: Vec<u32> = {
            let set: BTreeSet<u32> = edge_list.iter().map(|&(_, _, c)| c).collect();
            set.into_iter().collect()
        };
        let graph = ColoredGraph::new(
            (0..vertex_grams.len() as u32).collect(),
            colors,
            edge_list,
        )?;
        Ok(SubstringGraph {
            graph,
            source_shape: instance.shape(),
            vertex_grams,
            provenance,
            position_owner,
        })
    }

    pub fn gram(&self, vertex: u32) -> [Symbol; 2] {
        self.vertex_grams[vertex as usize]
    }

    pub fn occurrences(&self, edge: usize) -> &[Occurrence] {
        &self.provenance[edge]
    }

    /// The edge owned by position (x, y); both indices 1-based.
    pub fn owner_edge(&self, x: usize, y: usize) -> Result<usize> {
        let owners = self.position_owner.get(x - 1).ok_or_else(|| {
            Error::InvalidParameter(format!("string index {x} out of range"))
        })?;
        owners.get(y - 1).copied().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "position {y} out of range 1..={} in string {x}",
                owners.len()
            ))
        })
    }

    /// Marks the first owning occurrence of every selected edge. Gives a
    /// valid (sharp) 2-attractor of the source whenever the selection is a
    /// valid (plain) colorful cover.
    pub fn selection_to_marking(&self, sel: &EdgeSelection) -> Result<Marking> {
        let mut pairs = BTreeSet::new();
        for &e in &sel.0 {
            let occ = self
                .provenance
                .get(e)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "edge index {e} out of range 0..{}",
                        self.provenance.len()
                    ))
                })?
                .first()
                .expect("every edge has an owning occurrence");
            pairs.insert((occ.string, occ.pos));
        }
        Ok(match self.source_shape {
            Shape::Set => Marking::Pairs(pairs),
            _ => Marking::Positions(pairs.into_iter().map(|(_, y)| y).collect()),
        })
    }

    /// Maps marked positions to the edges they own (the inverse direction of
    /// [`SubstringGraph::selection_to_marking`]).
    pub fn marking_to_selection(&self, marking: &Marking) -> Result<EdgeSelection> {
        let mut sel = BTreeSet::new();
        for (x, y) in marking.iter_pairs() {
            sel.insert(self.owner_edge(x, y)?);
        }
        Ok(EdgeSelection(sel))
    }

    /// Human-readable sidecar: every vertex with its 2-gram, every edge with
    /// endpoints, color glyph, and owning occurrences.
    pub fn provenance_text(&self, alphabet: &crate::alphabet::Alphabet) -> String {
        let mut out = String::new();
        for (v, g) in self.vertex_grams.iter().enumerate() {
            out.push_str(&format!("vertex {v} {}\n", alphabet.render(g)));
        }
        for (i, e) in self.graph.edges().iter().enumerate() {
            let color = alphabet
                .glyph(Symbol(e.color))
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("<{}>", e.color));
            let occs: Vec<String> = self.provenance[i]
                .iter()
                .map(|o| format!("{}:{}({})", o.string, o.pos, o.class.name()))
                .collect();
            out.push_str(&format!(
                "edge {i} {} {} {color} {}\n",
                e.u,
                e.v,
                occs.join(" ")
            ));
        }
        out
    }
}

/// Outcome of a graph-backed attractor solve.
#[derive(Clone, Debug)]
pub struct GraphSolve {
    pub marking: Marking,
    pub nodes: u64,
}

/// Exact minimum 2-attractor via the colorful edge cover of the 2-substring
/// graph. Member strings shorter than 2 are handled up front: a length-1
/// string whose symbol also occurs in a longer member needs no mark of its
/// own, otherwise its first occurrence is marked; empty strings need nothing.
pub fn min_2attractor_via_cec(instance: &Instance, budget: u64) -> Result<GraphSolve> {
    solve_via_graph(instance, budget, true)
}

/// Exact minimum sharp 2-attractor via the plain edge cover of the same
/// graph. Strings shorter than 2 have no length-2 substrings and are skipped.
pub fn min_sharp2_attractor(instance: &Instance, budget: u64) -> Result<GraphSolve> {
    solve_via_graph(instance, budget, false)
}

fn solve_via_graph(instance: &Instance, budget: u64, colorful: bool) -> Result<GraphSolve> {
    if instance.shape() == Shape::Circular {
        return Err(Error::InvalidParameter(
            "transform circular instances to strings before the graph solvers".into(),
        ));
    }

    let mut big_symbols: BTreeSet<Symbol> = BTreeSet::new();
    let mut big: Vec<usize> = Vec::new(); // 1-based original indices
    for (i, t) in instance.strings().iter().enumerate() {
        if t.len() >= 2 {
            big.push(i + 1);
            big_symbols.extend(t.iter().copied());
        }
    }

    // Forced marks for symbols that only ever occur in length-1 strings; one
    // mark covers every occurrence of that symbol. Sharp mode has no length-1
    // obligations at all.
    let mut forced: BTreeSet<(usize, usize)> = BTreeSet::new();
    if colorful {
        let mut seen: BTreeMap<Symbol, usize> = BTreeMap::new();
        for (i, t) in instance.strings().iter().enumerate() {
            if t.len() == 1 && !big_symbols.contains(&t[0]) {
                seen.entry(t[0]).or_insert(i + 1);
            }
        }
        forced.extend(seen.into_values().map(|x| (x, 1)));
    }

    let (selection_pairs, nodes) = if big.is_empty() {
        (BTreeSet::new(), 0)
    } else {
        let sub = Instance::set(
            instance.alphabet.clone(),
            big.iter().map(|&x| instance.strings()[x - 1].clone()).collect(),
        )?;
        let sg = SubstringGraph::build(&sub)?;
        let out = if colorful {
            sg.graph.min_colorful_cover_exact(budget)?
        } else {
            sg.graph.min_edge_cover_exact(budget)?
        };
        match sg.graph.verify_cover(&out.selection, colorful)? {
            CoverVerdict::Valid => {}
            CoverVerdict::Invalid { missing } => {
                return Err(Error::Soundness(format!(
                    "solver returned a non-cover (missing {missing})"
                )))
            }
        }
        let local = match sg.selection_to_marking(&out.selection)? {
            Marking::Pairs(p) => p,
            Marking::Positions(p) => p.into_iter().map(|y| (1, y)).collect(),
        };
        (
            local.into_iter().map(|(x, y)| (big[x - 1], y)).collect(),
            out.nodes,
        )
    };

    let mut pairs = forced;
    pairs.extend(selection_pairs);
    let marking = match instance.shape() {
        Shape::Set => Marking::Pairs(pairs),
        _ => Marking::Positions(pairs.into_iter().map(|(_, y)| y).collect()),
    };
    match verify_attractor(instance, &marking, 2, !colorful)? {
        Verdict::Valid => Ok(GraphSolve { marking, nodes }),
        Verdict::Invalid { witness } => Err(Error::Soundness(format!(
            "graph-derived marking misses {:?}",
            instance.alphabet.render(&witness)
        ))),
    }
}
