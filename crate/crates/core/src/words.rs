//! Words over the letters `a`–`z`, identities, substitutions and
//! brute-force identity checking in finite semigroups.
//!
//! Surface syntax: letters with optional positive exponents, e.g. `x^3y^4`;
//! identities separate two words with `=`. Whitespace is ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::FiniteSemigroup;
use crate::DEFAULT_NODE_BUDGET;

/// Letter index, `0` for `a` up to `25` for `z`.
pub type Letter = u8;

pub const ALPHABET_SIZE: usize = 26;

/// Longest word the parser will expand exponents into.
pub const MAX_PARSED_LENGTH: usize = 1 << 20;

/// Default bound on the number of distinct letters in identity checks.
pub const DEFAULT_LETTER_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("bad exponent at position {pos}")]
    BadExponent { pos: usize },
    #[error("word is longer than {MAX_PARSED_LENGTH} letters")]
    TooLong,
    #[error("an identity needs exactly one '='")]
    Separator,
    #[error("letter index {0} is outside a-z")]
    LetterOutOfRange(u8),
    #[error("letter {0} has no image")]
    MissingImage(char),
    #[error("image of letter {letter} is element {element}, outside order {order}")]
    ElementOutOfRange { letter: char, element: usize, order: usize },
    #[error("{letters} letters exceed the bound of {bound}")]
    TooManyLetters { letters: usize, bound: usize },
    #[error("search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("semigroup has no zero element")]
    NoZero,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, WordError>;

pub fn letter_char(l: Letter) -> char {
    (b'a' + l) as char
}

/// A nonempty word; letters are stored flat.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(&l) = letters.iter().find(|&&l| l as usize >= ALPHABET_SIZE) {
            return Err(WordError::LetterOutOfRange(l));
        }
        Ok(Word(letters))
    }

    /// Caller guarantees the letters are nonempty and in range.
    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.is_empty() && letters.iter().all(|&l| (l as usize) < ALPHABET_SIZE));
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word::from_vec(vec![l])
    }

    /// The parser's own input format.
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Words are never empty; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct letters in alphabetical order.
    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// Distinct letters in order of first occurrence.
    pub fn content_in_order(&self) -> Vec<Letter> {
        let mut seen = [false; ALPHABET_SIZE];
        let mut order = Vec::new();
        for &l in &self.0 {
            if !seen[l as usize] {
                seen[l as usize] = true;
                order.push(l);
            }
        }
        order
    }

    pub fn occurrences(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn multiplicities(&self) -> [usize; ALPHABET_SIZE] {
        let mut counts = [0; ALPHABET_SIZE];
        for &l in &self.0 {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word `self^n`, `n ≥ 1`.
    pub fn pow(&self, n: usize) -> Word {
        assert!(n >= 1, "words have no empty power");
        Word(self.0.repeat(n))
    }

    /// Factor `[start, end)`, if nonempty.
    pub fn factor(&self, start: usize, end: usize) -> Option<Word> {
        (start < end && end <= self.0.len()).then(|| Word(self.0[start..end].to_vec()))
    }

    /// Renames letters according to `map`; unmapped letters are kept.
    pub fn rename(&self, map: &[Letter; ALPHABET_SIZE]) -> Word {
        Word(self.0.iter().map(|&l| map[l as usize]).collect())
    }

    /// Renames letters to `a, b, c, …` in order of first occurrence.
    pub fn standardized(&self) -> Word {
        let mut map = [0; ALPHABET_SIZE];
        for (i, l) in self.content_in_order().into_iter().enumerate() {
            map[l as usize] = i as Letter;
        }
        self.rename(&map)
    }

    /// Runs of equal letters as `(letter, length)`.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// Plain letter string without exponents.
    pub fn to_plain(&self) -> String {
        self.0.iter().map(|&l| letter_char(l)).collect()
    }

    /// Compares by length first, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    /// Runs of length two or more are written with exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, n) in self.runs() {
            if n == 1 {
                write!(f, "{}", letter_char(l))?;
            } else {
                write!(f, "{}^{}", letter_char(l), n)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            if !ch.is_ascii_lowercase() {
                return Err(WordError::UnexpectedChar { ch, pos });
            }
            let l = ch as u8 - b'a';
            i += 1;
            let mut exponent = 1usize;
            if i < chars.len() && chars[i].1 == '^' {
                let caret = chars[i].0;
                i += 1;
                let start = i;
                let mut digits = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    digits.push(chars[i].1);
                    i += 1;
                }
                if i == start {
                    return Err(WordError::BadExponent { pos: caret });
                }
                exponent = match digits.parse::<usize>() {
                    Ok(e) if e >= 1 && e <= MAX_PARSED_LENGTH => e,
                    _ => return Err(WordError::BadExponent { pos: caret }),
                };
            }
            if letters.len() + exponent > MAX_PARSED_LENGTH {
                return Err(WordError::TooLong);
            }
            letters.extend(std::iter::repeat(l).take(exponent));
        }
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A formal equation `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Letters of either side, alphabetical.
    pub fn letters(&self) -> Vec<Letter> {
        let mut set = self.lhs.content();
        set.extend(self.rhs.content());
        set.into_iter().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Equal per-letter multiplicities on both sides.
    pub fn is_balanced(&self) -> bool {
        self.lhs.multiplicities() == self.rhs.multiplicities()
    }

    pub fn swapped(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn reversed(&self) -> Identity {
        Identity { lhs: self.lhs.reversed(), rhs: self.rhs.reversed() }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self> {
        let mut parts = text.split('=');
        let (Some(lhs), Some(rhs), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(WordError::Separator);
        };
        Ok(Identity { lhs: lhs.parse()?, rhs: rhs.parse()? })
    }
}

impl Serialize for Identity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Identity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// JSON list form `{"identities": ["xyx=xyy", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityList {
    pub identities: Vec<Identity>,
}

/// Parses `id1;id2;…`, skipping empty entries.
pub fn parse_identity_list(text: &str) -> Result<Vec<Identity>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(Identity::parse).collect()
}

/// An assignment of letters to elements of a finite semigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Evaluation {
    values: [Option<usize>; ALPHABET_SIZE],
}

impl Evaluation {
    pub fn new() -> Self {
        Evaluation { values: [None; ALPHABET_SIZE] }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Letter, usize)>) -> Self {
        let mut e = Evaluation::new();
        for (l, v) in pairs {
            e.values[l as usize] = Some(v);
        }
        e
    }

    pub fn set(&mut self, l: Letter, v: usize) {
        self.values[l as usize] = Some(v);
    }

    pub fn get(&self, l: Letter) -> Option<usize> {
        self.values[l as usize]
    }

    /// Assigned letters with their values, alphabetical.
    pub fn pairs(&self) -> Vec<(Letter, usize)> {
        (0..ALPHABET_SIZE as Letter).filter_map(|l| self.get(l).map(|v| (l, v))).collect()
    }
}

impl Default for Evaluation {
    fn default() -> Self {
        Evaluation::new()
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().into_iter().map(|(l, v)| format!("{}->{}", letter_char(l), v)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Evaluation({self})")
    }
}

impl Serialize for Evaluation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, usize> = self.pairs().into_iter().map(|(l, v)| (letter_char(l).to_string(), v)).collect();
        map.serialize(serializer)
    }
}

/// Left-to-right product of the letter images.
pub fn evaluate(s: &FiniteSemigroup, w: &Word, theta: &Evaluation) -> Result<usize> {
    let mut acc: Option<usize> = None;
    for &l in w.letters() {
        let v = theta.get(l).ok_or(WordError::MissingImage(letter_char(l)))?;
        if v >= s.order() {
            return Err(WordError::ElementOutOfRange { letter: letter_char(l), element: v, order: s.order() });
        }
        acc = Some(match acc {
            None => v,
            Some(a) => s.mul(a, v),
        });
    }
    Ok(acc.expect("words are nonempty"))
}

/// Concatenation of letter images under a non-erasing syntactic substitution.
pub fn substitute(w: &Word, theta: &BTreeMap<Letter, Word>) -> Result<Word> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let image = theta.get(&l).ok_or(WordError::MissingImage(letter_char(l)))?;
        out.extend_from_slice(image.letters());
    }
    Ok(Word::from_vec(out))
}

/// Words rewritten as positions into a letter list, for fast sweeps.
pub(crate) struct Compiled {
    pub letters: Vec<Letter>,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl Compiled {
    pub fn new(id: &Identity) -> Self {
        let letters = id.letters();
        let mut slot = [0usize; ALPHABET_SIZE];
        for (i, &l) in letters.iter().enumerate() {
            slot[l as usize] = i;
        }
        let map = |w: &Word| w.letters().iter().map(|&l| slot[l as usize]).collect();
        Compiled { lhs: map(&id.lhs), rhs: map(&id.rhs), letters }
    }

    pub fn fold(s: &FiniteSemigroup, positions: &[usize], values: &[usize]) -> usize {
        let mut acc = values[positions[0]];
        for &p in &positions[1..] {
            acc = s.mul(acc, values[p]);
        }
        acc
    }
}

/// Limits for evaluation sweeps.
#[derive(Clone, Copy, Debug)]
pub struct SweepLimits {
    pub letter_bound: usize,
    pub budget: u64,
}

impl Default for SweepLimits {
    fn default() -> Self {
        SweepLimits { letter_bound: DEFAULT_LETTER_BOUND, budget: DEFAULT_NODE_BUDGET }
    }
}

fn check_limits(order: usize, letters: usize, limits: SweepLimits) -> Result<()> {
    if letters > limits.letter_bound {
        return Err(WordError::TooManyLetters { letters, bound: limits.letter_bound });
    }
    let needed = (order as u128).pow(letters as u32);
    if needed > limits.budget as u128 {
        return Err(WordError::BudgetExceeded { needed, budget: limits.budget });
    }
    Ok(())
}

/// Steps a mixed-radix counter, first digit most significant.
pub(crate) fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// First assignment, in mixed-radix order over the alphabetical letter
/// list, that separates the two sides.
pub fn find_counterexample(s: &FiniteSemigroup, id: &Identity) -> Result<Option<Evaluation>> {
    find_counterexample_with(s, id, SweepLimits::default())
}

pub fn find_counterexample_with(s: &FiniteSemigroup, id: &Identity, limits: SweepLimits) -> Result<Option<Evaluation>> {
    let c = Compiled::new(id);
    check_limits(s.order(), c.letters.len(), limits)?;
    let mut values = vec![0usize; c.letters.len()];
    loop {
        if Compiled::fold(s, &c.lhs, &values) != Compiled::fold(s, &c.rhs, &values) {
            return Ok(Some(Evaluation::from_pairs(c.letters.iter().copied().zip(values.iter().copied()))));
        }
        if !advance(&mut values, s.order()) {
            return Ok(None);
        }
    }
}

pub fn satisfies(s: &FiniteSemigroup, id: &Identity) -> Result<bool> {
    Ok(find_counterexample(s, id)?.is_none())
}

pub fn satisfies_all(s: &FiniteSemigroup, ids: &[Identity]) -> Result<bool> {
    for id in ids {
        if !satisfies(s, id)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First assignment under which `w` does not evaluate to the zero, if the
/// semigroup has one.
pub fn zero_law_counterexample(s: &FiniteSemigroup, w: &Word) -> Result<Option<Evaluation>> {
    let zero = s.zero().ok_or(WordError::NoZero)?;
    let c = Compiled::new(&Identity::new(w.clone(), w.clone()));
    check_limits(s.order(), c.letters.len(), SweepLimits::default())?;
    let mut values = vec![0usize; c.letters.len()];
    loop {
        if Compiled::fold(s, &c.lhs, &values) != zero {
            return Ok(Some(Evaluation::from_pairs(c.letters.iter().copied().zip(values.iter().copied()))));
        }
        if !advance(&mut values, s.order()) {
            return Ok(None);
        }
    }
}

/// Whether `s` satisfies the law `w = 0`.
pub fn satisfies_zero_law(s: &FiniteSemigroup, w: &Word) -> Result<bool> {
    Ok(zero_law_counterexample(s, w)?.is_none())
}

/// One member of `T_{w1,w2}` with the letter map that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwEquation {
    pub identity: Identity,
    pub trivial: bool,
    /// `(letter, image)` pairs in alphabetical order of the letters.
    pub map: Vec<(char, char)>,
}

/// All images of `w1 = w2` under letter-to-letter maps on its `k` letters
/// with image of size less than `k`.
///
/// Identical equations from different maps are reported once, for the
/// first map in mixed-radix order.
pub fn tw1w2(id: &Identity) -> Result<Vec<TwEquation>> {
    let letters: Vec<Letter> = id.lhs.content().into_iter().collect();
    if id.rhs.content().into_iter().collect::<Vec<_>>() != letters {
        return Err(WordError::Precondition(format!("{id}: both sides need the same content")));
    }
    let (n, k) = (id.lhs.len(), letters.len());
    if id.rhs.len() != n {
        return Err(WordError::Precondition(format!("{id}: both sides need the same length")));
    }
    if k < 2 || n < k {
        return Err(WordError::Precondition(format!("{id}: needs length n >= k > 1 letters")));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut digits = vec![0usize; k];
    loop {
        let distinct: BTreeSet<usize> = digits.iter().copied().collect();
        if distinct.len() < k {
            let mut map = [0 as Letter; ALPHABET_SIZE];
            for (i, &l) in letters.iter().enumerate() {
                map[l as usize] = letters[digits[i]];
            }
            let image = Identity::new(id.lhs.rename(&map), id.rhs.rename(&map));
            if seen.insert(image.clone()) {
                out.push(TwEquation {
                    trivial: image.is_trivial(),
                    identity: image,
                    map: letters.iter().enumerate().map(|(i, &l)| (letter_char(l), letter_char(letters[digits[i]]))).collect(),
                });
            }
        }
        if !advance(&mut digits, k) {
            return Ok(out);
        }
    }
}

/// A maximal block of a word's connected decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub word: Word,
    /// False exactly for blocks made of a single-occurrence letter.
    pub connected: bool,
}

/// Splits a word at every gap not covered by any letter's occurrence
/// interval `[first, last)`.
///
/// A block of length one is a letter occurring once in the whole word;
/// every longer block is connected.
pub fn connected_decomposition(w: &Word) -> Vec<Block> {
    let letters = w.letters();
    let n = letters.len();
    let mut last = [0usize; ALPHABET_SIZE];
    for (i, &l) in letters.iter().enumerate() {
        last[l as usize] = i;
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut reach = 0;
    for (i, &l) in letters.iter().enumerate() {
        reach = reach.max(last[l as usize]);
        if reach == i {
            blocks.push(Block { start, word: Word::from_vec(letters[start..=i].to_vec()), connected: i > start });
            start = i + 1;
        }
    }
    debug_assert_eq!(start, n);
    blocks
}

/// A word is connected when it is a single block of length at least two.
pub fn is_connected(w: &Word) -> bool {
    let blocks = connected_decomposition(w);
    blocks.len() == 1 && blocks[0].connected
}
