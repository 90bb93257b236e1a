//! Edge-colored undirected graphs and exact (colorful) edge cover.
//!
//! Graphs may carry self-loops. A *colorful edge cover* is an edge subset that
//! touches every vertex and contains every color at least once; dropping the
//! color condition gives the plain edge cover. Both minimization problems are
//! solved exactly by the same branch and bound:
//!
//! * branch on the uncovered vertex with the fewest available incident edges,
//!   trying each in turn and banning the ones already tried so subtrees
//!   partition the solution space;
//! * once every vertex is covered, the cheapest completion is one available
//!   edge per still-missing color, a closed form;
//! * lower bound: the max of (a) a greedy packing of vertices, then colors,
//!   no two of which share an available edge, (b) the number of missing
//!   colors, and (c) loop-bound vertices plus half the remaining uncovered.
//!
//! The solver is deterministic and counts nodes against a budget; exceeding it
//! is an error, never a silently suboptimal answer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cover::BitSet;
use crate::error::{Error, Result};

/// An undirected colored edge; endpoints are normalized so `u <= v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub color: u32,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// An edge-colored undirected multigraph with stable edge indices.
///
/// Invariants enforced at construction: edge endpoints and colors are
/// declared, every declared color appears on at least one edge (the coloring
/// is surjective), and no two edges share endpoints and color (such parallels
/// are interchangeable, so instances stay canonical).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    vertices: Vec<u32>,
    colors: Vec<u32>,
    edges: Vec<Edge>,
    vertex_index: HashMap<u32, usize>,
    color_index: HashMap<u32, usize>,
}

impl ColoredGraph {
    pub fn new(
        vertices: Vec<u32>,
        colors: Vec<u32>,
        edge_list: Vec<(u32, u32, u32)>,
    ) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        let mut colors = colors;
        colors.sort_unstable();
        colors.dedup();
        let vertex_index: HashMap<u32, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let color_index: HashMap<u32, usize> =
            colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let mut edges = Vec::with_capacity(edge_list.len());
        let mut seen = BTreeSet::new();
        let mut color_used = vec![false; colors.len()];
        for (u, v, color) in edge_list {
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            if !vertex_index.contains_key(&u) || !vertex_index.contains_key(&v) {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} references an undeclared vertex"
                )));
            }
            let ci = *color_index.get(&color).ok_or_else(|| {
                Error::InvalidParameter(format!("edge {u}-{v} uses undeclared color {color}"))
            })?;
            if !seen.insert((u, v, color)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge {u}-{v} with color {color}"
                )));
            }
            color_used[ci] = true;
            edges.push(Edge { u, v, color });
        }
        if let Some(i) = color_used.iter().position(|&used| !used) {
            return Err(Error::InvalidParameter(format!(
                "color {} has no edge (coloring must be surjective)",
                colors[i]
            )));
        }
        Ok(ColoredGraph { vertices, colors, edges, vertex_index, color_index })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    fn vertex_pos(&self, v: u32) -> usize {
        self.vertex_index[&v]
    }

    /// Checks a selection against this graph: indices in range, no vertex or
    /// (for `colorful`) color missed. Reports the smallest missing item.
    pub fn verify_cover(&self, sel: &EdgeSelection, colorful: bool) -> Result<CoverVerdict> {
        for &e in &sel.0 {
            if e >= self.edges.len() {
                return Err(Error::InvalidParameter(format!(
                    "edge index {e} out of range 0..{}",
                    self.edges.len()
                )));
            }
        }
        let mut vertex_hit = vec![false; self.vertices.len()];
        let mut color_hit = vec![false; self.colors.len()];
        for &e in &sel.0 {
            let edge = self.edges[e];
            vertex_hit[self.vertex_pos(edge.u)] = true;
            vertex_hit[self.vertex_pos(edge.v)] = true;
            color_hit[self.color_index[&edge.color]] = true;
        }
        if let Some(i) = vertex_hit.iter().position(|&h| !h) {
            return Ok(CoverVerdict::Invalid { missing: CoverWitness::Vertex(self.vertices[i]) });
        }
        if colorful {
            if let Some(i) = color_hit.iter().position(|&h| !h) {
                return Ok(CoverVerdict::Invalid { missing: CoverWitness::Color(self.colors[i]) });
            }
        }
        Ok(CoverVerdict::Valid)
    }

    /// Rewrites self-loops through the loop gadget: a fresh color `b` and two
    /// fresh vertices `x`, `y` joined by a `b`-colored edge; each loop `{v,v}`
    /// becomes `{v,x}` with its original color. Minimum colorful covers of the
    /// result are exactly one edge larger (the gadget edge is forced by `y`),
    /// and selections map back index-for-index. Loop-free graphs pass through
    /// unchanged with offset 0.
    pub fn eliminate_self_loops(&self) -> Deloop {
        if !self.has_loops() {
            return Deloop {
                graph: self.clone(),
                size_offset: 0,
                gadget_edge: None,
                gadget_vertices: None,
            };
        }
        let x = self.vertices.last().copied().unwrap_or(0) + 1;
        let y = x + 1;
        let b = self.colors.last().copied().unwrap_or(0) + 1;
        let mut vertices = self.vertices.clone();
        vertices.extend([x, y]);
        let mut colors = self.colors.clone();
        colors.push(b);
        let mut edge_list: Vec<(u32, u32, u32)> = self
            .edges
            .iter()
            .map(|e| {
                if e.is_loop() {
                    (e.u, x, e.color)
                } else {
                    (e.u, e.v, e.color)
                }
            })
            .collect();
        edge_list.push((x, y, b));
        let graph = ColoredGraph::new(vertices, colors, edge_list)
            .expect("loop gadget preserves graph invariants");
        Deloop {
            graph,
            size_offset: 1,
            gadget_edge: Some(self.edges.len()),
            gadget_vertices: Some((x, y)),
        }
    }

    /// Exact minimum colorful edge cover.
    pub fn min_colorful_cover_exact(&self, budget: u64) -> Result<CoverOutcome> {
        self.solve_cover(true, budget)
    }

    /// Exact minimum plain edge cover (colors ignored).
    pub fn min_edge_cover_exact(&self, budget: u64) -> Result<CoverOutcome> {
        self.solve_cover(false, budget)
    }

    /// Greedy cover: repeatedly take the edge covering the most still-missing
    /// vertices (and, when colorful, colors). Feasible graphs always complete.
    pub fn greedy_cover(&self, colorful: bool) -> Result<EdgeSelection> {
        self.check_cover_feasible()?;
        let mut vertex_hit = vec![false; self.vertices.len()];
        let mut color_hit = vec![!colorful; self.colors.len()];
        let mut chosen = BTreeSet::new();
        loop {
            let missing_v = vertex_hit.iter().filter(|&&h| !h).count();
            let missing_c = color_hit.iter().filter(|&&h| !h).count();
            if missing_v + missing_c == 0 {
                return Ok(EdgeSelection(chosen));
            }
            let mut best: Option<(usize, usize)> = None;
            for (i, e) in self.edges.iter().enumerate() {
                if chosen.contains(&i) {
                    continue;
                }
                let mut gain = 0;
                if !vertex_hit[self.vertex_pos(e.u)] {
                    gain += 1;
                }
                if e.u != e.v && !vertex_hit[self.vertex_pos(e.v)] {
                    gain += 1;
                }
                if !color_hit[self.color_index[&e.color]] {
                    gain += 1;
                }
                if gain > 0 && best.map(|(g, _)| gain > g).unwrap_or(true) {
                    best = Some((gain, i));
                }
            }
            let (_, i) = best.expect("feasible graph always offers a gaining edge");
            let e = self.edges[i];
            vertex_hit[self.vertex_pos(e.u)] = true;
            vertex_hit[self.vertex_pos(e.v)] = true;
            color_hit[self.color_index[&e.color]] = true;
            chosen.insert(i);
        }
    }

    fn check_cover_feasible(&self) -> Result<()> {
        let mut degree = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            degree[self.vertex_pos(e.u)] += 1;
            degree[self.vertex_pos(e.v)] += 1;
        }
        if let Some(i) = degree.iter().position(|&d| d == 0) {
            return Err(Error::Infeasible(format!(
                "vertex {} has no incident edge",
                self.vertices[i]
            )));
        }
        Ok(())
    }

    fn solve_cover(&self, colorful: bool, budget: u64) -> Result<CoverOutcome> {
        self.check_cover_feasible()?;
        let nv = self.vertices.len();
        let nc = if colorful { self.colors.len() } else { 0 };
        let ne = self.edges.len();

        let mut incident = vec![BitSet::new(ne); nv];
        let mut by_color = vec![BitSet::new(ne); nc];
        let mut loop_only = vec![true; nv];
        for (i, e) in self.edges.iter().enumerate() {
            incident[self.vertex_pos(e.u)].insert(i);
            incident[self.vertex_pos(e.v)].insert(i);
            if !e.is_loop() {
                loop_only[self.vertex_pos(e.u)] = false;
                loop_only[self.vertex_pos(e.v)] = false;
            }
            if colorful {
                by_color[self.color_index[&e.color]].insert(i);
            }
        }
        let mut pack_order: Vec<usize> = (0..nv).collect();
        pack_order.sort_by_key(|&v| (incident[v].count(), v));

        let greedy = self.greedy_cover(colorful)?;
        let mut best: Vec<usize> = greedy.0.iter().copied().collect();

        let mut search = CoverSearch {
            graph: self,
            colorful,
            incident: &incident,
            by_color: &by_color,
            loop_only: &loop_only,
            pack_order: &pack_order,
            best_size: best.len(),
            best: &mut best,
            nodes: 0,
            budget,
        };
        let mut covered_v = BitSet::new(nv);
        let mut covered_c = BitSet::new(nc);
        let mut banned = BitSet::new(ne);
        let mut chosen = Vec::new();
        search.dfs(&mut covered_v, &mut covered_c, &mut banned, &mut chosen)?;
        let nodes = search.nodes;
        Ok(CoverOutcome { selection: EdgeSelection(best.iter().copied().collect()), nodes })
    }
}

/// Outcome of an exact cover solve.
#[derive(Clone, Debug)]
pub struct CoverOutcome {
    pub selection: EdgeSelection,
    pub nodes: u64,
}

/// Result of [`ColoredGraph::eliminate_self_loops`].
#[derive(Clone, Debug)]
pub struct Deloop {
    pub graph: ColoredGraph,
    /// Minimum cover of `graph` minus minimum cover of the original.
    pub size_offset: usize,
    /// Index of the fresh `b`-colored bridge edge, if loops were rewritten.
    pub gadget_edge: Option<usize>,
    pub gadget_vertices: Option<(u32, u32)>,
}

impl Deloop {
    /// Maps a valid colorful cover of the rewritten graph back to the original:
    /// drop the gadget edge, keep everything else index-for-index (rewritten
    /// loop edges share indices with their originals).
    pub fn lift_selection(&self, original: &ColoredGraph, sel: &EdgeSelection) -> Result<EdgeSelection> {
        match self.graph.verify_cover(sel, true)? {
            CoverVerdict::Valid => {}
            CoverVerdict::Invalid { missing } => {
                return Err(Error::InvalidCertificate(format!(
                    "selection does not cover the loop-free graph: missing {missing}"
                )))
            }
        }
        let mut lifted = sel.0.clone();
        if let Some(g) = self.gadget_edge {
            lifted.remove(&g);
        }
        let lifted = EdgeSelection(lifted);
        match original.verify_cover(&lifted, true)? {
            CoverVerdict::Valid => Ok(lifted),
            CoverVerdict::Invalid { missing } => Err(Error::Soundness(format!(
                "lifted selection misses {missing} on the original graph"
            ))),
        }
    }
}

struct CoverSearch<'a> {
    graph: &'a ColoredGraph,
    colorful: bool,
    incident: &'a [BitSet],
    by_color: &'a [BitSet],
    loop_only: &'a [bool],
    pack_order: &'a [usize],
    best_size: usize,
    best: &'a mut Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> CoverSearch<'a> {
    fn dfs(
        &mut self,
        covered_v: &mut BitSet,
        covered_c: &mut BitSet,
        banned: &mut BitSet,
        chosen: &mut Vec<usize>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes, budget: self.budget });
        }
        let nv = self.incident.len();
        let nc = self.by_color.len();

        if covered_v.count() == nv {
            // Vertices done: the optimum below this node is one available edge
            // per missing color.
            let mut completion = Vec::new();
            for c in 0..nc {
                if covered_c.contains(c) {
                    continue;
                }
                let mut avail = self.by_color[c].clone();
                avail.subtract(banned);
                let first = avail.iter().next();
                match first {
                    Some(e) => completion.push(e),
                    None => return Ok(()),
                }
            }
            if chosen.len() + completion.len() < self.best_size {
                self.best_size = chosen.len() + completion.len();
                let mut sol = chosen.clone();
                sol.extend(completion);
                *self.best = sol;
            }
            return Ok(());
        }

        // Lower bounds.
        let mut used = BitSet::new(banned.capacity());
        let mut packed = 0usize;
        let mut loop_bound = 0usize;
        let mut paired = 0usize;
        for &v in self.pack_order {
            if covered_v.contains(v) {
                continue;
            }
            let mut avail = self.incident[v].clone();
            avail.subtract(banned);
            if avail.is_empty() {
                return Ok(());
            }
            if self.loop_only[v] {
                loop_bound += 1;
            } else {
                paired += 1;
            }
            if !avail.intersects(&used) {
                packed += 1;
                used.union_with(&avail);
            }
        }
        let mut missing_colors = 0usize;
        for c in 0..nc {
            if covered_c.contains(c) {
                continue;
            }
            let mut avail = self.by_color[c].clone();
            avail.subtract(banned);
            if avail.is_empty() {
                return Ok(());
            }
            missing_colors += 1;
            if !avail.intersects(&used) {
                packed += 1;
                used.union_with(&avail);
            }
        }
        let lb = packed.max(missing_colors).max(loop_bound + paired.div_ceil(2));
        if chosen.len() + lb >= self.best_size {
            return Ok(());
        }

        // Branch on the tightest uncovered vertex.
        let mut pick = None;
        for v in 0..nv {
            if covered_v.contains(v) {
                continue;
            }
            let avail = self.incident[v].count_minus(banned);
            if pick.map(|(a, _)| avail < a).unwrap_or(true) {
                pick = Some((avail, v));
            }
        }
        let (_, v) = pick.expect("some vertex is uncovered");
        let avail: Vec<usize> = self.incident[v]
            .iter()
            .filter(|&e| !banned.contains(e))
            .collect();
        let mut newly_banned = Vec::new();
        for e in avail {
            let edge = self.graph.edges[e];
            let pu = self.graph.vertex_pos(edge.u);
            let pv = self.graph.vertex_pos(edge.v);
            let had_u = covered_v.contains(pu);
            let had_v = covered_v.contains(pv);
            covered_v.insert(pu);
            covered_v.insert(pv);
            let (ci, had_c) = if self.colorful {
                let ci = self.graph.color_index[&edge.color];
                (ci, covered_c.contains(ci))
            } else {
                (0, true)
            };
            if self.colorful {
                covered_c.insert(ci);
            }
            chosen.push(e);
            self.dfs(covered_v, covered_c, banned, chosen)?;
            chosen.pop();
            if !had_u {
                covered_v.remove(pu);
            }
            if !had_v {
                covered_v.remove(pv);
            }
            if self.colorful && !had_c {
                covered_c.remove(ci);
            }
            banned.insert(e);
            newly_banned.push(e);
        }
        for e in newly_banned {
            banned.remove(e);
        }
        Ok(())
    }
}

/// A subset of edge indices (0-based, in graph file order).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeSelection(pub BTreeSet<usize>);

impl EdgeSelection {
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        EdgeSelection(it.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `0,3,5`; empty input is the empty selection.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let mut out = BTreeSet::new();
        if spec.is_empty() {
            return Ok(EdgeSelection(out));
        }
        for tok in spec.split(',') {
            let e: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge index {tok:?}")))?;
            out.insert(e);
        }
        Ok(EdgeSelection(out))
    }
}

impl fmt::Display for EdgeSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Verdict of a cover verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Valid,
    Invalid { missing: CoverWitness },
}

impl CoverVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverVerdict::Valid)
    }
}

/// What an invalid cover fails to touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverWitness {
    Vertex(u32),
    Color(u32),
}

impl fmt::Display for CoverWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverWitness::Vertex(v) => write!(f, "vertex {v}"),
            CoverWitness::Color(c) => write!(f, "color {c}"),
        }
    }
}

/// Serializes a graph to the line-oriented interchange format:
/// a `graph 1` header, one `vertices` line, one `colors` line, then one
/// `edge u v c` line per edge in index order. `#` starts a comment.
pub fn graph_to_text(g: &ColoredGraph) -> String {
    let mut out = String::from("graph 1\n");
    out.push_str("vertices");
    for v in g.vertices() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out.push_str("colors");
    for c in g.colors() {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.u, e.v, e.color));
    }
    out
}

/// Parses the interchange format written by [`graph_to_text`].
pub fn graph_from_text(text: &str) -> Result<ColoredGraph> {
    let mut vertices: Option<Vec<u32>> = None;
    let mut colors: Option<Vec<u32>> = None;
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let parse_u32 = |tok: &str| -> Result<u32> {
            tok.parse()
                .map_err(|_| Error::Parse(format!("line {}: bad integer {tok:?}", lineno + 1)))
        };
        match head {
            "graph" => {
                let ver = toks.next().ok_or_else(|| {
                    Error::Parse(format!("line {}: missing schema version", lineno + 1))
                })?;
                if ver != "1" {
                    return Err(Error::Parse(format!(
                        "line {}: unsupported graph schema version {ver:?}",
                        lineno + 1
                    )));
                }
                saw_header = true;
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(Error::Parse(format!(
                        "line {}: duplicate vertices line",
                        lineno + 1
                    )));
                }
                vertices = Some(toks.map(parse_u32).collect::<Result<_>>()?);
            }
            "colors" => {
                if colors.is_some() {
                    return Err(Error::Parse(format!(
                        "line {}: duplicate colors line",
                        lineno + 1
                    )));
                }
                colors = Some(toks.map(parse_u32).collect::<Result<_>>()?);
            }
            "edge" => {
                let mut next = || {
                    toks.next().ok_or_else(|| {
                        Error::Parse(format!("line {}: edge needs u v color", lineno + 1))
                    })
                };
                let u = parse_u32(next()?)?;
                let v = parse_u32(next()?)?;
                let c = parse_u32(next()?)?;
                edges.push((u, v, c));
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown directive {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse("missing 'graph 1' header line".into()));
    }
    let vertices =
        vertices.ok_or_else(|| Error::Parse("missing 'vertices' line".into()))?;
    let colors = colors.ok_or_else(|| Error::Parse("missing 'colors' line".into()))?;
    ColoredGraph::new(vertices, colors, edges)
}
