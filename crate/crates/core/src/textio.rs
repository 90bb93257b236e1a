//! Reading and writing instances and markings as plain text files.
//!
//! Two instance layouts are accepted:
//!
//! * **bare** — every non-empty line is one string, one character per symbol.
//!   The shape must be supplied by the caller (e.g. a `--shape` flag);
//!   `string` and `circular` files must hold exactly one line.
//! * **structured** — self-describing, produced by [`format_instance`]:
//!
//!   ```text
//!   shape set
//!   glyphs a b c #1
//!   text a b #1 c
//!   text c a
//!   ```
//!
//!   The `glyphs` line fixes symbol ids in listed order and makes
//!   multi-character glyphs (stitching delimiters, reduction symbols)
//!   representable; `text` payloads are then whitespace-separated glyph
//!   tokens. Without a `glyphs` line, payloads are read one character per
//!   symbol. Lines starting with `#` are comments.
//!
//! A marking file is the one-line rendering of [`Marking`]: `2,7,9` for
//! positions, `1:2,2:4` for set pairs, an empty file for the empty marking.

use std::fs;
use std::path::Path;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::text::{Instance, Marking, Shape};

/// Parses an instance from file content. `default_shape` is used (and
/// required) when the content has no `shape` header.
pub fn parse_instance(content: &str, default_shape: Option<Shape>) -> Result<Instance> {
    let lines: Vec<&str> = content.lines().map(|l| l.trim_end_matches('\r')).collect();
    // Detection skips comment lines so structured files may start with `#`
    // headers; in bare mode `#`-initial lines are ordinary string content.
    let structured = lines
        .iter()
        .map(|l| l.trim())
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("shape "));
    if structured {
        parse_structured(&lines)
    } else {
        parse_bare(&lines, default_shape)
    }
}

fn parse_bare(lines: &[&str], default_shape: Option<Shape>) -> Result<Instance> {
    let shape = default_shape.ok_or_else(|| {
        Error::Parse("file has no `shape` header and no shape was supplied".into())
    })?;
    let texts: Vec<&str> = lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .collect();
    if texts.is_empty() {
        return Err(Error::Parse("file contains no strings".into()));
    }
    match shape {
        Shape::Text | Shape::Circular => {
            if texts.len() != 1 {
                return Err(Error::Parse(format!(
                    "a {} file must hold exactly one string, found {}",
                    shape.name(),
                    texts.len()
                )));
            }
            if matches!(shape, Shape::Text) {
                Ok(Instance::text_from_str(texts[0]))
            } else {
                Instance::circular_from_str(texts[0])
            }
        }
        Shape::Set => Instance::set_from_strs(&texts),
    }
}

fn parse_structured(lines: &[&str]) -> Result<Instance> {
    let mut shape: Option<Shape> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut payloads: Vec<String> = Vec::new();
    for (idx, raw) in lines.iter().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "shape" => {
                if shape.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate shape", idx + 1)));
                }
                shape = Some(rest.parse()?);
            }
            "glyphs" => {
                if alphabet.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate glyphs", idx + 1)));
                }
                if !payloads.is_empty() {
                    return Err(Error::Parse(format!(
                        "line {}: glyphs must come before text lines",
                        idx + 1
                    )));
                }
                let mut a = Alphabet::new();
                for tok in rest.split_whitespace() {
                    if a.lookup(tok).is_some() {
                        return Err(Error::Parse(format!(
                            "line {}: duplicate glyph {tok:?}",
                            idx + 1
                        )));
                    }
                    a.intern(tok);
                }
                alphabet = Some(a);
            }
            "text" => payloads.push(rest.to_string()),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown keyword {other:?}",
                    idx + 1
                )))
            }
        }
    }
    let shape = shape.ok_or_else(|| Error::Parse("missing shape line".into()))?;
    if payloads.is_empty() {
        return Err(Error::Parse("file contains no text lines".into()));
    }
    if !matches!(shape, Shape::Set) && payloads.len() != 1 {
        return Err(Error::Parse(format!(
            "a {} instance must hold exactly one text line, found {}",
            shape.name(),
            payloads.len()
        )));
    }

    match alphabet {
        Some(alphabet) => {
            let mut texts = Vec::with_capacity(payloads.len());
            for p in &payloads {
                let mut symbols = Vec::new();
                for tok in p.split_whitespace() {
                    symbols.push(alphabet.lookup(tok).ok_or_else(|| {
                        Error::Parse(format!("unknown glyph {tok:?} (not in glyphs line)"))
                    })?);
                }
                texts.push(symbols);
            }
            match shape {
                Shape::Text => Ok(Instance::text(alphabet, texts.pop().unwrap())),
                Shape::Circular => Instance::circular(alphabet, texts.pop().unwrap()),
                Shape::Set => Instance::set(alphabet, texts),
            }
        }
        None => match shape {
            Shape::Text => Ok(Instance::text_from_str(&payloads[0])),
            Shape::Circular => Instance::circular_from_str(&payloads[0]),
            Shape::Set => Instance::set_from_strs(&payloads),
        },
    }
}

/// Renders an instance in the structured layout; `parse_instance` restores it
/// exactly, including symbol ids.
pub fn format_instance(instance: &Instance) -> String {
    let mut out = format!("shape {}\n", instance.shape().name());
    let glyphs: Vec<&str> = (0..instance.alphabet.len() as u32)
        .map(|id| instance.alphabet.glyph(crate::alphabet::Symbol(id)).unwrap())
        .collect();
    out.push_str(&format!("glyphs {}\n", glyphs.join(" ")));
    for s in instance.strings() {
        let toks: Vec<&str> = s
            .iter()
            .map(|&sym| instance.alphabet.glyph(sym).unwrap())
            .collect();
        if toks.is_empty() {
            out.push_str("text\n");
        } else {
            out.push_str(&format!("text {}\n", toks.join(" ")));
        }
    }
    out
}

pub fn read_instance(path: &Path, default_shape: Option<Shape>) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?, default_shape)
}

pub fn write_instance(path: &Path, instance: &Instance) -> Result<()> {
    fs::write(path, format_instance(instance))?;
    Ok(())
}

/// Parses a marking file: comment (`#`) and blank lines are skipped, all
/// remaining lines are joined and read as one `Marking` spec.
pub fn parse_marking_file(content: &str, shape: Shape) -> Result<Marking> {
    let payload: Vec<&str> = content
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    Marking::parse(&payload.join(","), shape)
}

pub fn format_marking(marking: &Marking) -> String {
    format!("{marking}\n")
}

pub fn read_marking(path: &Path, shape: Shape) -> Result<Marking> {
    parse_marking_file(&fs::read_to_string(path)?, shape)
}

pub fn write_marking(path: &Path, marking: &Marking) -> Result<()> {
    fs::write(path, format_marking(marking))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::set_to_string;

    #[test]
    fn bare_layout_reads_all_shapes() {
        let s = parse_instance("abbcabccac\n", Some(Shape::Text)).unwrap();
        assert_eq!(s.render(), "abbcabccac");
        let c = parse_instance("ab\n", Some(Shape::Circular)).unwrap();
        assert_eq!(c.shape(), Shape::Circular);
        let set = parse_instance("ab\n\nba\n", Some(Shape::Set)).unwrap();
        assert_eq!(set.num_strings(), 2);
        assert!(parse_instance("ab\nba\n", Some(Shape::Text)).is_err());
        assert!(parse_instance("ab\n", None).is_err());
        assert!(parse_instance("\n\n", Some(Shape::Set)).is_err());
    }

    #[test]
    fn structured_roundtrip_preserves_symbol_ids() {
        let set = Instance::set_from_strs(&["ab", "ba"]).unwrap();
        let stitched = set_to_string(&set).unwrap().target;
        let text = format_instance(&stitched);
        assert!(text.starts_with("shape string\nglyphs a b #1\n"));
        let back = parse_instance(&text, None).unwrap();
        assert_eq!(back.strings(), stitched.strings());
        assert_eq!(back.render(), stitched.render());
    }

    #[test]
    fn structured_layout_errors() {
        assert!(matches!(
            parse_instance("shape string\nglyphs a a\ntext a\n", None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance("shape string\ntext a\nglyphs a\n", None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance("shape string\nglyphs a\ntext b\n", None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance("shape string\nshape set\ntext a\n", None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance("shape string\nbogus a\ntext a\n", None),
            Err(Error::Parse(_))
        ));
        assert!(parse_instance("shape string\nglyphs a\n", None).is_err());
        assert!(parse_instance("shape string\ntext a\ntext b\n", None).is_err());
    }

    #[test]
    fn structured_set_allows_empty_member() {
        let text = "shape set\n# a comment\nglyphs a b\ntext a b\ntext\n";
        let set = parse_instance(text, None).unwrap();
        assert_eq!(set.num_strings(), 2);
        assert_eq!(set.string_len(2), 0);
        let back = parse_instance(&format_instance(&set), None).unwrap();
        assert_eq!(back.strings(), set.strings());
    }

    #[test]
    fn structured_without_glyphs_reads_chars() {
        let inst = parse_instance("shape circular\ntext aba\n", None).unwrap();
        assert_eq!(inst.shape(), Shape::Circular);
        assert_eq!(inst.render(), "aba");
    }

    #[test]
    fn marking_files_roundtrip() {
        let m = Marking::positions([2, 7, 9]);
        let text = format_marking(&m);
        assert_eq!(text, "2,7,9\n");
        assert_eq!(parse_marking_file(&text, Shape::Text).unwrap(), m);

        let p = Marking::pairs([(1, 2), (2, 4)]);
        let text = format_marking(&p);
        assert_eq!(parse_marking_file(&text, Shape::Set).unwrap(), p);

        let empty = parse_marking_file("# nothing\n", Shape::Set).unwrap();
        assert!(empty.is_empty());
        // multi-line payloads join
        assert_eq!(
            parse_marking_file("2,7\n9\n", Shape::Text).unwrap(),
            Marking::positions([2, 7, 9])
        );
    }
}
