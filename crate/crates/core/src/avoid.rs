//! Zimin words, pattern encounters, and square-free words over three letters.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::free::LabeledSemigroup;
use crate::semigroup::FiniteSemigroup;
use crate::words::{Letter, Word};

pub const MAX_ZIMIN: usize = 20;
/// Patterns with more variables than this are not decided.
pub const MAX_PATTERN_LETTERS: usize = 6;
pub const MAX_TEXT_LENGTH: usize = 1 << 20;
pub const MAX_SQUAREFREE_LENGTH: usize = 100_000;
pub const MAX_TRUNCATION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvoidError {
    #[error("zimin index {0} is outside 1..={MAX_ZIMIN}")]
    ZiminRange(usize),
    #[error("pattern has {0} variables, at most {MAX_PATTERN_LETTERS} are supported")]
    TooManyVariables(usize),
    #[error("text length {len} exceeds the cap of {cap}")]
    TextTooLong { len: usize, cap: usize },
    #[error("length {0} is outside 1..={MAX_SQUAREFREE_LENGTH}")]
    PrefixLength(usize),
    #[error("truncation length {0} is outside 1..={MAX_TRUNCATION}")]
    Truncation(usize),
}

pub type Result<T> = std::result::Result<T, AvoidError>;

/// `z₁ = a`, `z_{n+1} = z_n · (n+1)-th letter · z_n`.
pub fn zimin(n: usize) -> Result<Word> {
    if !(1..=MAX_ZIMIN).contains(&n) {
        return Err(AvoidError::ZiminRange(n));
    }
    let mut letters: Vec<Letter> = vec![0];
    for i in 1..n {
        let copy = letters.clone();
        letters.push(i as Letter);
        letters.extend(copy);
    }
    Ok(Word::new(letters).expect("zimin words are nonempty"))
}

/// A factor of the text that is an instance of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Encounter {
    pub start: usize,
    pub end: usize,
    pub substitution: BTreeMap<Letter, Word>,
}

struct Matcher<'a> {
    text: &'a [Letter],
    pattern: &'a [Letter],
    // per variable, (start, len) of its image once bound
    binding: Bindings,
    // variables whose image can be taken to be a single letter
    short: [bool; 26],
}

type Bindings = [Option<(usize, usize)>; 26];

impl Matcher<'_> {
    // Minimum text length still needed by pattern[ppos..].
    fn min_rest(&self, ppos: usize) -> usize {
        self.pattern[ppos..].iter().map(|&v| self.binding[v as usize].map_or(1, |(_, l)| l)).sum()
    }

    fn go(&mut self, pos: usize, ppos: usize) -> Option<usize> {
        if ppos == self.pattern.len() {
            return Some(pos);
        }
        if pos + self.min_rest(ppos) > self.text.len() {
            return None;
        }
        let v = self.pattern[ppos] as usize;
        if let Some((s, l)) = self.binding[v] {
            if self.text[pos..pos + l] == self.text[s..s + l] {
                self.go(pos + l, ppos + 1)
            } else {
                None
            }
        } else {
            let rest = self.min_rest(ppos + 1);
            let longest = if self.short[v] { 1 } else { self.text.len() - pos - rest };
            let mut out = None;
            for l in 1..=longest {
                self.binding[v] = Some((pos, l));
                out = self.go(pos + l, ppos + 1);
                if out.is_some() {
                    break;
                }
            }
            if out.is_none() {
                self.binding[v] = None;
            }
            out
        }
    }
}

/// Finds a non-erasing substitution whose image of `pattern` is a factor
/// of `text`, trying start positions from the left and shorter images first.
/// Variables occurring once at an end of the pattern get one-letter images.
pub fn encounters(text: &Word, pattern: &Word) -> Result<Option<Encounter>> {
    if text.len() > MAX_TEXT_LENGTH {
        return Err(AvoidError::TextTooLong { len: text.len(), cap: MAX_TEXT_LENGTH });
    }
    let t = text.letters();
    let p = pattern.letters();
    // A variable occurring once at either end of the pattern can be cut
    // down to one letter of its image and the result is still a factor.
    let mut short = [false; 26];
    for end in [p[0], p[p.len() - 1]] {
        if pattern.occurrences(end) == 1 {
            short[end as usize] = true;
        }
    }
    for start in 0..t.len() {
        let mut m = Matcher { text: t, pattern: p, binding: [None; 26], short };
        if let Some(end) = m.go(start, 0) {
            let substitution = m
                .binding
                .iter()
                .enumerate()
                .filter_map(|(v, b)| b.map(|(s, l)| (v as Letter, text.factor(s, s + l).expect("bound factor in range"))))
                .collect();
            return Ok(Some(Encounter { start, end, substitution }));
        }
    }
    Ok(None)
}

/// The Zimin criterion: `p` is unavoidable iff it is encountered in
/// `zimin(|content(p)|)`.
pub fn is_unavoidable(pattern: &Word) -> Result<bool> {
    let n = pattern.content().len();
    if n > MAX_PATTERN_LETTERS {
        return Err(AvoidError::TooManyVariables(n));
    }
    Ok(encounters(&zimin(n)?, pattern)?.is_some())
}

/// Prefix of the fixed point of `0 ↦ 012, 1 ↦ 02, 2 ↦ 1`, written over
/// the letters `a, b, c` for `0, 1, 2`.
pub fn squarefree_prefix(len: usize) -> Result<Word> {
    if !(1..=MAX_SQUAREFREE_LENGTH).contains(&len) {
        return Err(AvoidError::PrefixLength(len));
    }
    let mut w: Vec<Letter> = vec![0];
    while w.len() < len {
        w = w
            .iter()
            .flat_map(|&l| match l {
                0 => &[0u8, 1, 2][..],
                1 => &[0, 2][..],
                _ => &[1][..],
            })
            .copied()
            .collect();
    }
    w.truncate(len);
    Ok(Word::new(w).expect("nonempty prefix"))
}

/// Renders a word over `a, b, c` with the digits `0, 1, 2`.
pub fn to_digits(w: &Word) -> String {
    w.letters().iter().map(|&l| char::from(b'0' + l)).collect()
}

pub fn avoids_instances(text: &Word, pattern: &Word) -> Result<bool> {
    Ok(encounters(text, pattern)?.is_none())
}

/// The first square factor `uu` as `(start, |u|)`, by a full scan.
pub fn find_square(w: &Word) -> Option<(usize, usize)> {
    let t = w.letters();
    (0..t.len()).find_map(|i| (1..=(t.len() - i) / 2).find(|&l| t[i..i + l] == t[i + l..i + 2 * l]).map(|l| (i, l)))
}

/// The truncation of the factor semigroup of `u`: nonempty factors of `u`
/// shorter than `m`, plus a zero absorbing every other product. The zero
/// is element 0 and factors follow in shortlex order.
pub fn factor_semigroup(u: &Word, m: usize) -> Result<LabeledSemigroup> {
    if !(1..=MAX_TRUNCATION).contains(&m) {
        return Err(AvoidError::Truncation(m));
    }
    let t = u.letters();
    let mut factors: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for len in 1..m.min(t.len() + 1) {
        for w in t.windows(len) {
            factors.insert(w.to_vec());
        }
    }
    let mut sorted: Vec<Vec<Letter>> = factors.into_iter().collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: BTreeMap<&[Letter], usize> = sorted.iter().enumerate().map(|(i, w)| (w.as_slice(), i + 1)).collect();
    let order = sorted.len() + 1;
    let mut table = vec![0usize; order * order];
    for (i, a) in sorted.iter().enumerate() {
        for (j, b) in sorted.iter().enumerate() {
            let ab: Vec<Letter> = a.iter().chain(b).copied().collect();
            table[(i + 1) * order + j + 1] = index.get(ab.as_slice()).copied().unwrap_or(0);
        }
    }
    let mut labels = vec![None];
    labels.extend(sorted.into_iter().map(|w| Some(Word::new(w).expect("factors are nonempty"))));
    let semigroup = FiniteSemigroup::from_flat_unchecked(order, table).with_name(format!("F{m}"));
    Ok(LabeledSemigroup { semigroup, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn zimin_words() {
        assert_eq!(zimin(1).unwrap(), w("a"));
        assert_eq!(zimin(3).unwrap(), w("abacaba"));
        for n in 1..=10 {
            assert_eq!(zimin(n).unwrap().len(), (1 << n) - 1);
        }
        assert!(zimin(0).is_err());
        assert!(zimin(21).is_err());
    }

    #[test]
    fn encounter_examples() {
        let e = encounters(&w("aba"), &w("xyx")).unwrap().unwrap();
        assert_eq!(e.substitution[&23], w("a"));
        assert_eq!(e.substitution[&24], w("b"));
        assert!(encounters(&w("aba"), &w("xx")).unwrap().is_none());
        let e = encounters(&w("abab"), &w("xx")).unwrap().unwrap();
        assert_eq!(e.substitution[&23], w("ab"));
        assert_eq!((e.start, e.end), (0, 4));
    }

    #[test]
    fn unavoidability() {
        for p in ["xyx", "yxy"] {
            assert!(is_unavoidable(&w(p)).unwrap(), "{p}");
        }
        // every pattern containing a square is avoided by a square-free word
        let text = squarefree_prefix(1000).unwrap();
        for p in ["x^2y", "yx^2", "xx", "xyy", "yyx"] {
            assert!(!is_unavoidable(&w(p)).unwrap(), "{p}");
            assert!(avoids_instances(&text, &w(p)).unwrap(), "{p}");
        }
        for k in 1..=4 {
            assert!(is_unavoidable(&zimin(k).unwrap()).unwrap());
        }
        assert!(is_unavoidable(&w("abcdefg")).is_err());
    }

    #[test]
    fn squarefree() {
        assert_eq!(to_digits(&squarefree_prefix(5).unwrap()), "01202");
        let long = squarefree_prefix(2000).unwrap();
        assert_eq!(find_square(&long), None);
        assert_eq!(find_square(&w("abcbc")), Some((1, 2)));
        let text = squarefree_prefix(1000).unwrap();
        assert!(avoids_instances(&text, &w("x^2y")).unwrap());
        assert!(!avoids_instances(&text, &w("xyx")).unwrap());
        assert!(squarefree_prefix(0).is_err());
    }

    #[test]
    fn factor_semigroup_truncation() {
        let f = factor_semigroup(&w("abc"), 3).unwrap();
        // 0, a, b, c, ab, bc
        assert_eq!(f.order(), 6);
        assert!(f.semigroup.is_associative());
        let a = f.element_of(&w("a")).unwrap();
        let b = f.element_of(&w("b")).unwrap();
        let ab = f.element_of(&w("ab")).unwrap();
        assert_eq!(f.semigroup.mul(a, b), ab);
        assert_eq!(f.semigroup.mul(b, a), 0);
        assert_eq!(f.semigroup.mul(ab, b), 0);
    }
}
