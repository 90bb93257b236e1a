//! Shape transforms between strings, circular strings, and string sets, with
//! certificate lifting.
//!
//! Each transform rewrites an instance into a different shape so that minimum
//! attractor sizes correspond exactly, shifted by a known offset:
//!
//! * set -> string: stitch with m-1 fresh delimiters, offset m-1;
//! * string -> circular: append one delimiter, offset 1;
//! * circular -> string: write the string three times, offset 0;
//! * set -> circular: stitch with a delimiter after every member (m total),
//!   offset m.
//!
//! Delimiter positions are *forced*: their symbols occur nowhere else, so any
//! valid marking contains them (for the plain variant). `lift_solution` maps
//! a valid target marking back to the source, dropping forced positions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::text::{Instance, Marking, Shape};
use crate::verify::{verify_attractor, Verdict};

/// Where a target position comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourcePos {
    /// A delimiter with no source counterpart; dropped when lifting.
    Forced,
    /// (string, position) in the source instance, both 1-based.
    At(usize, usize),
}

/// A transformed instance together with the data needed to lift solutions.
#[derive(Clone, Debug)]
pub struct TransformResult {
    pub source: Instance,
    pub target: Instance,
    /// Exact-minimum difference: min(target) = min(source) + size_offset.
    pub size_offset: usize,
    /// Source position of each target position, in target scan order.
    pub position_map: Vec<SourcePos>,
}

impl TransformResult {
    fn identity(source: &Instance) -> TransformResult {
        TransformResult {
            source: source.clone(),
            target: source.clone(),
            size_offset: 0,
            position_map: source.positions().map(|(x, y)| SourcePos::At(x, y)).collect(),
        }
    }

    /// The number of forced (delimiter) positions; always equals the offset.
    pub fn forced_count(&self) -> usize {
        self.position_map
            .iter()
            .filter(|p| matches!(p, SourcePos::Forced))
            .count()
    }
}

/// Stitches a set into one string: `T1 #1 T2 #2 ... Tm`, offset m-1.
pub fn set_to_string(source: &Instance) -> Result<TransformResult> {
    expect_shape(source, Shape::Set)?;
    let mut alphabet = source.alphabet.clone();
    let mut symbols = Vec::new();
    let mut map = Vec::new();
    for (i, t) in source.strings().iter().enumerate() {
        if i > 0 {
            symbols.push(alphabet.fresh_delimiter());
            map.push(SourcePos::Forced);
        }
        for (y, &s) in t.iter().enumerate() {
            symbols.push(s);
            map.push(SourcePos::At(i + 1, y + 1));
        }
    }
    let offset = source.num_strings() - 1;
    Ok(TransformResult {
        source: source.clone(),
        target: Instance::text(alphabet, symbols),
        size_offset: offset,
        position_map: map,
    })
}

/// Appends one delimiter and closes the circle: `T#`, offset 1.
pub fn string_to_circular(source: &Instance) -> Result<TransformResult> {
    expect_shape(source, Shape::Text)?;
    let mut alphabet = source.alphabet.clone();
    let mut symbols = source.strings()[0].clone();
    let mut map: Vec<SourcePos> = (1..=symbols.len()).map(|y| SourcePos::At(1, y)).collect();
    symbols.push(alphabet.fresh_delimiter());
    map.push(SourcePos::Forced);
    Ok(TransformResult {
        source: source.clone(),
        target: Instance::circular(alphabet, symbols)?,
        size_offset: 1,
        position_map: map,
    })
}

/// Unrolls a circular string as `TTT` (three copies), offset 0. Three copies
/// make every wrapped substring of length <= n appear as a plain substring,
/// and target positions project onto source positions modulo n.
pub fn circular_to_string(source: &Instance) -> Result<TransformResult> {
    expect_shape(source, Shape::Circular)?;
    let t = &source.strings()[0];
    let n = t.len();
    let mut symbols = Vec::with_capacity(3 * n);
    let mut map = Vec::with_capacity(3 * n);
    for _ in 0..3 {
        for (y, &s) in t.iter().enumerate() {
            symbols.push(s);
            map.push(SourcePos::At(1, y + 1));
        }
    }
    Ok(TransformResult {
        source: source.clone(),
        target: Instance::text(source.alphabet.clone(), symbols),
        size_offset: 0,
        position_map: map,
    })
}

/// Stitches a set into a circle with a delimiter after every member:
/// `T1 #1 T2 #2 ... Tm #m` read circularly, offset m.
pub fn set_to_circular(source: &Instance) -> Result<TransformResult> {
    expect_shape(source, Shape::Set)?;
    let mut alphabet = source.alphabet.clone();
    let mut symbols = Vec::new();
    let mut map = Vec::new();
    for (i, t) in source.strings().iter().enumerate() {
        for (y, &s) in t.iter().enumerate() {
            symbols.push(s);
            map.push(SourcePos::At(i + 1, y + 1));
        }
        symbols.push(alphabet.fresh_delimiter());
        map.push(SourcePos::Forced);
    }
    let offset = source.num_strings();
    Ok(TransformResult {
        source: source.clone(),
        target: Instance::circular(alphabet, symbols)?,
        size_offset: offset,
        position_map: map,
    })
}

/// Transforms `source` into `target_shape`, covering all nine shape pairs.
/// Same-shape requests are identities; string -> set wraps the string as a
/// singleton; circular -> set unrolls first and wraps the result.
pub fn transform(source: &Instance, target_shape: Shape) -> Result<TransformResult> {
    let shape = source.shape();
    if shape == target_shape {
        return Ok(TransformResult::identity(source));
    }
    match (shape, target_shape) {
        (Shape::Set, Shape::Text) => set_to_string(source),
        (Shape::Text, Shape::Circular) => string_to_circular(source),
        (Shape::Circular, Shape::Text) => circular_to_string(source),
        (Shape::Set, Shape::Circular) => set_to_circular(source),
        (Shape::Text, Shape::Set) => {
            let mut tr = TransformResult::identity(source);
            tr.target = Instance::set(
                source.alphabet.clone(),
                vec![source.strings()[0].clone()],
            )?;
            Ok(tr)
        }
        (Shape::Circular, Shape::Set) => {
            let mut tr = circular_to_string(source)?;
            tr.target = Instance::set(
                tr.target.alphabet.clone(),
                vec![tr.target.strings()[0].clone()],
            )?;
            Ok(tr)
        }
        _ => unreachable!("all nine shape pairs handled"),
    }
}

/// For circular instances, substring lengths cap at n, so any larger k asks
/// for the same substring set (plain variant only; sharp keeps its exact k).
fn effective_k(instance: &Instance, k: usize, sharp: bool) -> usize {
    if instance.shape() == Shape::Circular && !sharp {
        k.min(instance.string_len(1)).max(1)
    } else {
        k
    }
}

/// Lifts a valid marking of the transform's target back to its source.
///
/// The target marking is verified first (invalid -> rejected with a witness).
/// A valid marking that skips a delimiter — possible only in sharp variants —
/// is normalized by moving an adjacent mark onto the delimiter when that keeps
/// it valid, and rejected otherwise. The result drops forced positions,
/// remaps the rest, and is re-verified on the source; its size is
/// `target_marking.len() - size_offset` whenever no two target marks collapse
/// onto one source position (always true for minimum markings).
pub fn lift_solution(
    tr: &TransformResult,
    target_marking: &Marking,
    k: usize,
    sharp: bool,
) -> Result<Marking> {
    let t_k = effective_k(&tr.target, k, sharp);
    match verify_attractor(&tr.target, target_marking, t_k, sharp)? {
        Verdict::Valid => {}
        Verdict::Invalid { witness } => {
            return Err(Error::InvalidCertificate(format!(
                "target marking is not a valid attractor: misses {:?}",
                tr.target.alphabet.render(&witness)
            )))
        }
    }

    // Work in target scan-index space so set-shaped targets are handled too.
    let tpos: Vec<(usize, usize)> = tr.target.positions().collect();
    let tindex: std::collections::HashMap<(usize, usize), usize> =
        tpos.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let to_marking = |ids: &BTreeSet<usize>| -> Marking {
        let pairs = ids.iter().map(|&i| tpos[i]);
        match tr.target.shape() {
            Shape::Set => Marking::pairs(pairs),
            _ => Marking::positions(pairs.map(|(_, y)| y)),
        }
    };
    let mut marked: BTreeSet<usize> = target_marking.iter_pairs().map(|p| tindex[&p]).collect();
    let circular_target = tr.target.shape() == Shape::Circular;
    for (idx, src) in tr.position_map.iter().enumerate() {
        if !matches!(src, SourcePos::Forced) || marked.contains(&idx) {
            continue;
        }
        // Unmarked delimiter: try to move a neighboring mark onto it.
        let (x, y) = tpos[idx];
        let n = tr.target.string_len(x);
        let mut neighbors = Vec::new();
        if y > 1 {
            neighbors.push((x, y - 1));
        } else if circular_target {
            neighbors.push((x, n));
        }
        if y < n {
            neighbors.push((x, y + 1));
        } else if circular_target {
            neighbors.push((x, 1));
        }
        let mut fixed = false;
        for nb in neighbors {
            let nb_idx = tindex[&nb];
            if !marked.contains(&nb_idx) {
                continue;
            }
            let mut attempt = marked.clone();
            attempt.remove(&nb_idx);
            attempt.insert(idx);
            if verify_attractor(&tr.target, &to_marking(&attempt), t_k, sharp)?.is_valid() {
                marked = attempt;
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(Error::InvalidCertificate(format!(
                "delimiter position {y} is unmarked and no adjacent mark can move onto it"
            )));
        }
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &idx in &marked {
        match tr.position_map[idx] {
            SourcePos::Forced => {}
            SourcePos::At(sx, sy) => {
                pairs.insert((sx, sy));
            }
        }
    }
    let lifted = match tr.source.shape() {
        Shape::Set => Marking::Pairs(pairs),
        _ => Marking::Positions(pairs.into_iter().map(|(_, y)| y).collect()),
    };
    let s_k = effective_k(&tr.source, k, sharp);
    match verify_attractor(&tr.source, &lifted, s_k, sharp)? {
        Verdict::Valid => Ok(lifted),
        Verdict::Invalid { witness } => {
            let msg = format!(
                "lifted marking misses {:?} on the source",
                tr.source.alphabet.render(&witness)
            );
            if sharp {
                // The offset equivalences are proven for the plain variant;
                // sharp certificates may legitimately fail to lift.
                Err(Error::InvalidCertificate(msg))
            } else {
                Err(Error::Soundness(msg))
            }
        }
    }
}

/// Solves the source exactly by transforming to `target_shape`, solving
/// there, and lifting the certificate back.
pub fn min_via_transform(
    source: &Instance,
    target_shape: Shape,
    k: usize,
    sharp: bool,
    budget: u64,
) -> Result<crate::solvers::SolveOutcome> {
    let tr = transform(source, target_shape)?;
    let t_k = effective_k(&tr.target, k, sharp);
    let out = crate::solvers::min_attractor_exact(&tr.target, t_k, sharp, budget)?;
    let marking = lift_solution(&tr, &out.marking, k, sharp)?;
    Ok(crate::solvers::SolveOutcome { marking, nodes: out.nodes })
}

fn expect_shape(instance: &Instance, want: Shape) -> Result<()> {
    if instance.shape() != want {
        return Err(Error::InvalidParameter(format!(
            "expected a {} instance, got {}",
            want.name(),
            instance.shape().name()
        )));
    }
    Ok(())
}
