//! Symbols and alphabets.
//!
//! Symbols are dense integer ids `0..sigma`. An [`Alphabet`] maps each id to a
//! display glyph (a short string, usually one character). Delimiters introduced
//! by instance transforms get fresh ids above everything already present and
//! render as `#1`, `#2`, ...

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol: a dense integer id local to one instance's alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bidirectional symbol-id <-> glyph table with dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    glyphs: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from text lines: the distinct characters, in character
    /// (code point) order, get ids 0, 1, 2, ... Sorting keeps symbol order equal
    /// to glyph order, so lexicographic comparisons on ids read alphabetically.
    pub fn from_lines<S: AsRef<str>>(lines: &[S]) -> Self {
        let mut chars: Vec<char> = lines
            .iter()
            .flat_map(|l| l.as_ref().chars())
            .collect();
        chars.sort_unstable();
        chars.dedup();
        let mut a = Self::new();
        for c in chars {
            a.intern(&c.to_string());
        }
        a
    }

    pub fn len(&self) -> usize {
        self.glyphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glyphs.is_empty()
    }

    /// Returns the symbol for `glyph`, adding it with the next free id if new.
    pub fn intern(&mut self, glyph: &str) -> Symbol {
        if let Some(&id) = self.index.get(glyph) {
            return Symbol(id);
        }
        let id = self.glyphs.len() as u32;
        self.glyphs.push(glyph.to_string());
        self.index.insert(glyph.to_string(), id);
        Symbol(id)
    }

    pub fn lookup(&self, glyph: &str) -> Option<Symbol> {
        self.index.get(glyph).map(|&id| Symbol(id))
    }

    pub fn glyph(&self, s: Symbol) -> Option<&str> {
        self.glyphs.get(s.index()).map(|g| g.as_str())
    }

    /// Adds a fresh delimiter symbol. The glyph is `#k` for the smallest k >= 1
    /// that is not already taken, so delimiters never collide with user symbols.
    pub fn fresh_delimiter(&mut self) -> Symbol {
        let mut k = 1usize;
        loop {
            let name = format!("#{k}");
            if !self.index.contains_key(&name) {
                return self.intern(&name);
            }
            k += 1;
        }
    }

    /// Renders a symbol sequence for humans. Multi-character glyphs (delimiters,
    /// reduction symbols) are wrapped in brackets when mixed with others.
    pub fn render(&self, symbols: &[Symbol]) -> String {
        let plain = symbols
            .iter()
            .all(|&s| self.glyph(s).map(|g| g.chars().count() == 1).unwrap_or(false));
        let mut out = String::new();
        for (i, &s) in symbols.iter().enumerate() {
            match self.glyph(s) {
                Some(g) if plain => out.push_str(g),
                Some(g) => {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(g);
                }
                None => {
                    if i > 0 && !plain {
                        out.push(' ');
                    }
                    out.push_str(&format!("<{}>", s.0));
                }
            }
        }
        out
    }

    /// Parses a one-line rendering produced by [`Alphabet::render`]-style output:
    /// either one glyph per character, or space-separated glyphs.
    pub fn parse_line(&self, line: &str) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        if line.contains(' ') {
            for tok in line.split_whitespace() {
                out.push(self.lookup(tok).ok_or_else(|| {
                    Error::Parse(format!("unknown symbol glyph {tok:?}"))
                })?);
            }
        } else {
            for c in line.chars() {
                out.push(self.lookup(&c.to_string()).ok_or_else(|| {
                    Error::Parse(format!("unknown symbol glyph {c:?}"))
                })?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_dense_and_stable() {
        let mut a = Alphabet::new();
        let x = a.intern("a");
        let y = a.intern("b");
        assert_eq!((x, y), (Symbol(0), Symbol(1)));
        assert_eq!(a.intern("a"), Symbol(0));
        assert_eq!(a.len(), 2);
        assert_eq!(a.glyph(Symbol(1)), Some("b"));
    }

    #[test]
    fn from_lines_sorts_by_character() {
        let a = Alphabet::from_lines(&["cab", "bd"]);
        assert_eq!(a.lookup("a"), Some(Symbol(0)));
        assert_eq!(a.lookup("b"), Some(Symbol(1)));
        assert_eq!(a.lookup("c"), Some(Symbol(2)));
        assert_eq!(a.lookup("d"), Some(Symbol(3)));
    }

    #[test]
    fn delimiters_avoid_collisions() {
        let mut a = Alphabet::from_lines(&["ab"]);
        a.intern("#1");
        let d = a.fresh_delimiter();
        assert_eq!(a.glyph(d), Some("#2"));
    }

    #[test]
    fn render_mixes_delimiters_with_spaces() {
        let mut a = Alphabet::from_lines(&["ab"]);
        let d = a.fresh_delimiter();
        let s = vec![Symbol(0), d, Symbol(1)];
        assert_eq!(a.render(&s), "a #1 b");
        assert_eq!(a.render(&[Symbol(0), Symbol(1)]), "ab");
    }

    #[test]
    fn parse_line_roundtrips() {
        let mut a = Alphabet::from_lines(&["ab"]);
        a.fresh_delimiter();
        assert_eq!(a.parse_line("ab").unwrap(), vec![Symbol(0), Symbol(1)]);
        assert_eq!(
            a.parse_line("a #1 b").unwrap(),
            vec![Symbol(0), Symbol(2), Symbol(1)]
        );
        assert!(a.parse_line("az").is_err());
    }
}
