//! Substring window enumeration shared by verification and cover construction.

use std::collections::BTreeSet;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::text::{Instance, Shape};

/// One occurrence of a substring: member string `string` (1-based), starting
/// position `start` (1-based), length `len`. In a circular string the window
/// wraps past position n back to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub string: usize,
    pub start: usize,
    pub len: usize,
}

/// Validates the length bound `k` for `instance`: `k >= 1` always, and
/// `k <= n` for circular strings (longer windows would wrap onto themselves).
pub fn check_k(instance: &Instance, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if instance.shape() == Shape::Circular && k > instance.string_len(1) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds circular string length {}",
            instance.string_len(1)
        )));
    }
    Ok(())
}

/// All substring occurrences of length `<= k` (or exactly `k` when `sharp`).
pub fn windows(instance: &Instance, k: usize, sharp: bool) -> Result<Vec<Window>> {
    check_k(instance, k)?;
    let circular = instance.shape() == Shape::Circular;
    let mut out = Vec::new();
    for (i, text) in instance.strings().iter().enumerate() {
        let n = text.len();
        let max_len = if circular { k } else { k.min(n) };
        for start in 1..=n {
            let longest = if circular { max_len } else { max_len.min(n - start + 1) };
            let shortest = if sharp { k } else { 1 };
            for len in shortest..=longest {
                out.push(Window { string: i + 1, start, len });
            }
        }
    }
    Ok(out)
}

/// The positions a window occupies, in order, as (string, position) pairs.
pub fn window_positions(
    instance: &Instance,
    w: &Window,
) -> impl Iterator<Item = (usize, usize)> {
    let n = instance.string_len(w.string);
    let circular = instance.shape() == Shape::Circular;
    let (string, start) = (w.string, w.start);
    (0..w.len).map(move |t| {
        let y = if circular {
            (start - 1 + t) % n + 1
        } else {
            start + t
        };
        (string, y)
    })
}

/// The symbol content of a window.
pub fn window_symbols(instance: &Instance, w: &Window) -> Vec<Symbol> {
    window_positions(instance, w)
        .map(|(x, y)| instance.symbol_at(x, y))
        .collect()
}

/// The set of distinct substrings of length `<= k` (exactly `k` when `sharp`),
/// ordered lexicographically by symbol id.
pub fn distinct_substrings(
    instance: &Instance,
    k: usize,
    sharp: bool,
) -> Result<BTreeSet<Vec<Symbol>>> {
    let mut out = BTreeSet::new();
    for w in windows(instance, k, sharp)? {
        out.insert(window_symbols(instance, &w));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings_of(inst: &Instance, k: usize, sharp: bool) -> Vec<String> {
        distinct_substrings(inst, k, sharp)
            .unwrap()
            .iter()
            .map(|s| inst.alphabet.render(s))
            .collect()
    }

    #[test]
    fn distinct_counts_on_running_example() {
        let t = Instance::text_from_str("abbcabccac");
        assert_eq!(distinct_substrings(&t, 2, false).unwrap().len(), 9);
        assert_eq!(distinct_substrings(&t, 2, true).unwrap().len(), 6);
        assert_eq!(
            strings_of(&t, 2, true),
            vec!["ab", "ac", "bb", "bc", "ca", "cc"]
        );
    }

    #[test]
    fn full_k_counts_every_distinct_substring() {
        let t = Instance::text_from_str("aaa");
        // a, aa, aaa
        assert_eq!(distinct_substrings(&t, 3, false).unwrap().len(), 3);
        // k above n is fine for plain strings
        assert_eq!(distinct_substrings(&t, 10, false).unwrap().len(), 3);
    }

    #[test]
    fn circular_windows_wrap() {
        let c = Instance::circular_from_str("ab").unwrap();
        assert_eq!(strings_of(&c, 2, false), vec!["a", "ab", "b", "ba"]);
        // k capped at n for circular strings
        assert!(distinct_substrings(&c, 3, false).is_err());
        let c1 = Instance::circular_from_str("a").unwrap();
        assert_eq!(strings_of(&c1, 1, false), vec!["a"]);
    }

    #[test]
    fn set_pools_substrings() {
        let s = Instance::set_from_strs(&["ab", "bc"]).unwrap();
        assert_eq!(strings_of(&s, 2, false), vec!["a", "ab", "b", "bc", "c"]);
        // members shorter than k contribute nothing sharp
        let s = Instance::set_from_strs(&["a", "bc"]).unwrap();
        assert_eq!(strings_of(&s, 2, true), vec!["bc"]);
    }

    #[test]
    fn k_zero_rejected() {
        let t = Instance::text_from_str("ab");
        assert!(distinct_substrings(&t, 0, false).is_err());
    }

    #[test]
    fn window_positions_wrap_in_order() {
        let c = Instance::circular_from_str("abc").unwrap();
        let w = Window { string: 1, start: 3, len: 3 };
        let got: Vec<_> = window_positions(&c, &w).collect();
        assert_eq!(got, vec![(1, 3), (1, 1), (1, 2)]);
        assert_eq!(c.alphabet.render(&window_symbols(&c, &w)), "cab");
    }
}
