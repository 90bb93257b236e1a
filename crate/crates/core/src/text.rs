//! Instance shapes (string, circular string, string set) and markings.
//!
//! Positions are 1-based everywhere. A marking on a string or circular string
//! is a set of positions; on a string set it is a set of `(string, position)`
//! pairs with 1-based string indices in file order.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Which of the three instance shapes an [`Instance`] carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Shape {
    Text,
    Circular,
    Set,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Text => "string",
            Shape::Circular => "circular",
            Shape::Set => "set",
        }
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "string" | "text" => Ok(Shape::Text),
            "circular" => Ok(Shape::Circular),
            "set" => Ok(Shape::Set),
            other => Err(Error::Parse(format!(
                "unknown shape {other:?} (expected string, circular, or set)"
            ))),
        }
    }
}

/// One instance: an alphabet plus shape-tagged symbol data.
///
/// A plain string may be empty; a circular string has length >= 1; a set has
/// >= 1 member strings (individual members may be empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub alphabet: Alphabet,
    body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    Text(Vec<Symbol>),
    Circular(Vec<Symbol>),
    Set(Vec<Vec<Symbol>>),
}

impl Instance {
    pub fn text(alphabet: Alphabet, symbols: Vec<Symbol>) -> Self {
        Instance { alphabet, body: Body::Text(symbols) }
    }

    pub fn circular(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter(
                "a circular string must have length >= 1".into(),
            ));
        }
        Ok(Instance { alphabet, body: Body::Circular(symbols) })
    }

    pub fn set(alphabet: Alphabet, texts: Vec<Vec<Symbol>>) -> Result<Self> {
        if texts.is_empty() {
            return Err(Error::InvalidParameter(
                "a string set must have >= 1 member strings".into(),
            ));
        }
        Ok(Instance { alphabet, body: Body::Set(texts) })
    }

    /// Builds a string instance from one line of characters.
    pub fn text_from_str(s: &str) -> Self {
        let mut alphabet = Alphabet::from_lines(&[s]);
        let symbols = s.chars().map(|c| alphabet.intern(&c.to_string())).collect();
        Instance::text(alphabet, symbols)
    }

    /// Builds a circular instance from one line of characters.
    pub fn circular_from_str(s: &str) -> Result<Self> {
        let mut alphabet = Alphabet::from_lines(&[s]);
        let symbols = s.chars().map(|c| alphabet.intern(&c.to_string())).collect();
        Instance::circular(alphabet, symbols)
    }

    /// Builds a set instance from one line of characters per member string.
    pub fn set_from_strs<S: AsRef<str>>(lines: &[S]) -> Result<Self> {
        let mut alphabet = Alphabet::from_lines(lines);
        let texts = lines
            .iter()
            .map(|l| {
                l.as_ref()
                    .chars()
                    .map(|c| alphabet.intern(&c.to_string()))
                    .collect()
            })
            .collect();
        Instance::set(alphabet, texts)
    }

    pub fn shape(&self) -> Shape {
        match self.body {
            Body::Text(_) => Shape::Text,
            Body::Circular(_) => Shape::Circular,
            Body::Set(_) => Shape::Set,
        }
    }

    /// Member strings: one for string/circular shapes, m for sets.
    pub fn strings(&self) -> &[Vec<Symbol>] {
        match &self.body {
            Body::Text(t) | Body::Circular(t) => std::slice::from_ref(t),
            Body::Set(ts) => ts,
        }
    }

    pub fn num_strings(&self) -> usize {
        self.strings().len()
    }

    /// Length of member string `x` (1-based index).
    pub fn string_len(&self, x: usize) -> usize {
        self.strings()[x - 1].len()
    }

    /// Sum of member string lengths.
    pub fn total_len(&self) -> usize {
        self.strings().iter().map(|t| t.len()).sum()
    }

    /// Longest member string length; the natural "full" k for this instance.
    pub fn max_len(&self) -> usize {
        self.strings().iter().map(|t| t.len()).max().unwrap_or(0)
    }

    pub fn symbol_at(&self, x: usize, y: usize) -> Symbol {
        self.strings()[x - 1][y - 1]
    }

    /// All positions of the instance, as (string, position) pairs in scan order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.strings()
            .iter()
            .enumerate()
            .flat_map(|(i, t)| (1..=t.len()).map(move |y| (i + 1, y)))
    }

    /// Renders the instance body, one member string per line.
    pub fn render(&self) -> String {
        self.strings()
            .iter()
            .map(|t| self.alphabet.render(t))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A set of marked positions: the certificate for every attractor variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Marking {
    /// Positions into a string or circular string.
    Positions(BTreeSet<usize>),
    /// (string, position) pairs into a string set; string indices are 1-based.
    Pairs(BTreeSet<(usize, usize)>),
}

impl Marking {
    pub fn positions<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Marking::Positions(it.into_iter().collect())
    }

    pub fn pairs<I: IntoIterator<Item = (usize, usize)>>(it: I) -> Self {
        Marking::Pairs(it.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        match self {
            Marking::Positions(s) => s.len(),
            Marking::Pairs(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Marked pairs in a shape-independent view: string/circular markings
    /// report string index 1.
    pub fn iter_pairs(&self) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
        match self {
            Marking::Positions(s) => Box::new(s.iter().map(|&y| (1, y))),
            Marking::Pairs(s) => Box::new(s.iter().copied()),
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        match self {
            Marking::Positions(s) => x == 1 && s.contains(&y),
            Marking::Pairs(s) => s.contains(&(x, y)),
        }
    }

    /// Checks the marking fits `instance`: right kind for the shape, and every
    /// marked position inside range.
    pub fn check_against(&self, instance: &Instance) -> Result<()> {
        match (self, instance.shape()) {
            (Marking::Positions(_), Shape::Text | Shape::Circular) => {}
            (Marking::Pairs(_), Shape::Set) => {}
            (m, shape) => {
                let kind = match m {
                    Marking::Positions(_) => "position",
                    Marking::Pairs(_) => "pair",
                };
                return Err(Error::InvalidParameter(format!(
                    "{kind} marking does not fit a {} instance",
                    shape.name()
                )));
            }
        }
        for (x, y) in self.iter_pairs() {
            if x == 0 || x > instance.num_strings() {
                return Err(Error::InvalidParameter(format!(
                    "marked string index {x} out of range 1..={}",
                    instance.num_strings()
                )));
            }
            let n = instance.string_len(x);
            if y == 0 || y > n {
                return Err(Error::InvalidParameter(format!(
                    "marked position {} out of range 1..={n}",
                    render_pair(instance.shape(), x, y)
                )));
            }
        }
        Ok(())
    }

    /// Parses `2,7,9` (positions) or `1:2,2:4` (pairs). An empty string is the
    /// empty marking of the kind `shape` expects.
    pub fn parse(spec: &str, shape: Shape) -> Result<Marking> {
        let spec = spec.trim();
        let want_pairs = matches!(shape, Shape::Set);
        if spec.is_empty() {
            return Ok(if want_pairs {
                Marking::Pairs(BTreeSet::new())
            } else {
                Marking::Positions(BTreeSet::new())
            });
        }
        let mut positions = BTreeSet::new();
        let mut pairs = BTreeSet::new();
        for tok in spec.split(',') {
            let tok = tok.trim();
            if let Some((xs, ys)) = tok.split_once(':') {
                if !want_pairs {
                    return Err(Error::Parse(format!(
                        "pair {tok:?} in a marking for a {} instance",
                        shape.name()
                    )));
                }
                let x = parse_index(xs, "string index")?;
                let y = parse_index(ys, "position")?;
                pairs.insert((x, y));
            } else {
                if want_pairs {
                    return Err(Error::Parse(format!(
                        "position {tok:?} lacks a string index (want x:y) in a set marking"
                    )));
                }
                positions.insert(parse_index(tok, "position")?);
            }
        }
        Ok(if want_pairs {
            Marking::Pairs(pairs)
        } else {
            Marking::Positions(positions)
        })
    }
}

fn parse_index(tok: &str, what: &str) -> Result<usize> {
    let v: usize = tok
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {tok:?}")))?;
    if v == 0 {
        return Err(Error::Parse(format!("{what} must be >= 1, got 0")));
    }
    Ok(v)
}

fn render_pair(shape: Shape, x: usize, y: usize) -> String {
    match shape {
        Shape::Set => format!("{x}:{y}"),
        _ => y.to_string(),
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marking::Positions(s) => {
                let parts: Vec<String> = s.iter().map(|y| y.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            Marking::Pairs(s) => {
                let parts: Vec<String> = s.iter().map(|(x, y)| format!("{x}:{y}")).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}
