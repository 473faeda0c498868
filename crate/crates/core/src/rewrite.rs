//! Normal forms for the laws `xyx = xyy` (and its mirror `xyx = yyx`) and
//! canonical forms for `xyx = yxy`, with the consequence tests they give.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{connected_decomposition, Identity, Letter, Word, ALPHABET_SIZE};

/// Largest letter count accepted by [`enumerate_normal_forms`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("unknown axiom {0:?}; expected xyy, yyx or yxy")]
    UnknownAxiom(String),
    #[error("placement {i} exceeds padding length {len}")]
    Placement { i: usize, len: usize },
    #[error("letter count {n} exceeds the enumeration bound {bound}")]
    EnumerationBound { n: usize, bound: usize },
}

/// The three base laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomTag {
    /// `xyx = xyy`
    Xyy,
    /// `xyx = yyx`
    Yyx,
    /// `xyx = yxy`
    Yxy,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 3] = [AxiomTag::Xyy, AxiomTag::Yyx, AxiomTag::Yxy];

    pub fn identity(self) -> Identity {
        let rhs = match self {
            AxiomTag::Xyy => "xyy",
            AxiomTag::Yyx => "yyx",
            AxiomTag::Yxy => "yxy",
        };
        Identity::new(Word::parse("xyx").unwrap(), Word::parse(rhs).unwrap())
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomTag::Xyy => "xyy",
            AxiomTag::Yyx => "yyx",
            AxiomTag::Yxy => "yxy",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomTag {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, RewriteError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "xyy" | "xyx=xyy" => Ok(AxiomTag::Xyy),
            "yyx" | "xyx=yyx" => Ok(AxiomTag::Yyx),
            "yxy" | "xyx=yxy" => Ok(AxiomTag::Yxy),
            other => Err(RewriteError::UnknownAxiom(other.to_string())),
        }
    }
}

/// A word in normal (or canonical) form for an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalForm {
    pub word: Word,
    pub axiom: AxiomTag,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

fn expand(runs: &[(Letter, usize)]) -> Vec<Letter> {
    runs.iter().flat_map(|&(l, n)| std::iter::repeat(l).take(n)).collect()
}

/// Gathers every letter into a single run at its first occurrence.
///
/// The first letter `x` is handled by repeatedly replacing `x u x` (with no
/// `x` inside `u`) by `x u u`, which leaves the prefix up to the first run
/// of `x` untouched. The doubled segment `uu` is immediately replaced by
/// its own normal form, which keeps the word short. The remainder after
/// the run of `x` is then gathered in the same way.
///
/// Returns `(letter, exponent)` with each exponent the length of that
/// letter's run once gathered.
fn gather_xyy(w: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out = Vec::new();
    let mut current: Vec<Letter> = w.to_vec();
    while !current.is_empty() {
        let x = current[0];
        let run = current.iter().take_while(|&&l| l == x).count();
        let mut rest = current.split_off(run);
        while let Some(p) = rest.iter().position(|&l| l == x) {
            let mut doubled = rest[..p].to_vec();
            doubled.extend_from_slice(&rest[..p]);
            let mut next = expand(&normal_runs_xyy(&doubled));
            next.extend_from_slice(&rest[p + 1..]);
            rest = next;
        }
        out.push((x, run));
        current = rest;
    }
    out
}

/// Exponent reduction by `x⁴ = x⁵` and the flexibility laws.
fn reduce_xyy(gathered: &[(Letter, usize)]) -> Vec<(Letter, usize)> {
    let mut out = Vec::with_capacity(gathered.len());
    for (pos, &(l, j)) in gathered.iter().enumerate() {
        let i = match pos {
            0 => j.min(4),
            1 => match j {
                1 => 1,
                2 if out.first().map(|&(_, i1)| i1) == Some(1) => 2,
                _ => 4,
            },
            _ => {
                if j == 1 {
                    1
                } else {
                    4
                }
            }
        };
        out.push((l, i));
    }
    out
}

fn normal_runs_xyy(w: &[Letter]) -> Vec<(Letter, usize)> {
    reduce_xyy(&gather_xyy(w))
}

/// Normal form modulo `xyx = xyy`: `x₁^{i₁}⋯x_n^{i_n}` with the letters in
/// order of first occurrence.
pub fn normal_form_xyy(w: &Word) -> NormalForm {
    NormalForm { word: Word::from_vec(expand(&normal_runs_xyy(w.letters()))), axiom: AxiomTag::Xyy }
}

/// Normal form modulo `xyx = yyx`, the left-right mirror of `xyx = xyy`.
pub fn normal_form_yyx(w: &Word) -> NormalForm {
    NormalForm { word: normal_form_xyy(&w.reversed()).word.reversed(), axiom: AxiomTag::Yyx }
}

/// Canonical form of one connected block from its content and length.
///
/// Letters within the block are ordered alphabetically. On one letter the
/// block is a power capped at 4; on two letters it is `xyx` at length 3
/// and `xy²x` otherwise; on three or more letters it is `x₁x₂⋯x_nx₁`.
fn canonical_block(block: &[Letter]) -> Vec<Letter> {
    let mut content: Vec<Letter> = block.to_vec();
    content.sort_unstable();
    content.dedup();
    match content.len() {
        1 => vec![content[0]; block.len().min(4)],
        2 => {
            let (x, y) = (content[0], content[1]);
            if block.len() == 3 {
                vec![x, y, x]
            } else {
                vec![x, y, y, x]
            }
        }
        _ => {
            let mut out = content.clone();
            out.push(content[0]);
            out
        }
    }
}

/// Canonical form modulo `xyx = yxy`, block by block.
pub fn canonical_form_yxy(w: &Word) -> NormalForm {
    let mut out = Vec::with_capacity(w.len());
    for block in connected_decomposition(w) {
        if block.connected {
            out.extend(canonical_block(block.word.letters()));
        } else {
            out.extend_from_slice(block.word.letters());
        }
    }
    NormalForm { word: Word::from_vec(out), axiom: AxiomTag::Yxy }
}

pub fn normal_form(axiom: AxiomTag, w: &Word) -> NormalForm {
    match axiom {
        AxiomTag::Xyy => normal_form_xyy(w),
        AxiomTag::Yyx => normal_form_yyx(w),
        AxiomTag::Yxy => canonical_form_yxy(w),
    }
}

/// Whether `u = v` follows from the axiom: both sides share a normal form.
pub fn consequence(axiom: AxiomTag, id: &Identity) -> bool {
    normal_form(axiom, &id.lhs) == normal_form(axiom, &id.rhs)
}

/// Consequence of the padded law `y₁⋯y_i w₁ y_{i+1}⋯y_ℓ = y₁⋯y_i w₂ y_{i+1}⋯y_ℓ`.
///
/// Either the sides are identical, or they share a prefix of length `i`
/// and a suffix of length `ℓ - i` around nonempty cores that are
/// equivalent under the base law.
pub fn consequence_padded(base: AxiomTag, i: usize, len: usize, id: &Identity) -> Result<bool, RewriteError> {
    if i > len {
        return Err(RewriteError::Placement { i, len });
    }
    if id.lhs == id.rhs {
        return Ok(true);
    }
    let (u, v) = (id.lhs.letters(), id.rhs.letters());
    let suffix = len - i;
    if u.len() <= len || v.len() <= len {
        return Ok(false);
    }
    if u[..i] != v[..i] || u[u.len() - suffix..] != v[v.len() - suffix..] {
        return Ok(false);
    }
    let core = |w: &[Letter]| Word::from_vec(w[i..w.len() - suffix].to_vec());
    Ok(consequence(base, &Identity::new(core(u), core(v))))
}

/// The base law padded with `i` fresh letters in front and `ℓ - i` behind.
///
/// Fresh letters are taken from `a, b, c, …`.
pub fn padded_axiom(base: AxiomTag, i: usize, len: usize) -> Result<Identity, RewriteError> {
    if i > len {
        return Err(RewriteError::Placement { i, len });
    }
    assert!(len <= 20, "padding must leave room for the base letters");
    let fresh: Vec<Letter> = (0..len as Letter).collect();
    let id = base.identity();
    let pad = |w: &Word| {
        let mut v = fresh[..i].to_vec();
        v.extend_from_slice(w.letters());
        v.extend_from_slice(&fresh[i..]);
        Word::from_vec(v)
    };
    Ok(Identity::new(pad(&id.lhs), pad(&id.rhs)))
}

/// Letters used for enumerated forms: `x, y, z` for up to three letters,
/// otherwise `a, b, c, …`.
pub fn standard_letters(n: usize) -> Vec<Letter> {
    let start = if n <= 3 { b'x' - b'a' } else { 0 };
    (0..n as Letter).map(|i| start + i).collect()
}

/// All normal (XYY, YYX) or canonical (YXY) words whose first-occurrence
/// letter order is exactly [`standard_letters`]`(n)`.
///
/// XYY forms are listed by exponent vector in lexicographic order; YXY
/// forms by block composition, then block shapes.
pub fn enumerate_normal_forms(axiom: AxiomTag, n: usize) -> Result<Vec<NormalForm>, RewriteError> {
    enumerate_normal_forms_with_bound(axiom, n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_normal_forms_with_bound(axiom: AxiomTag, n: usize, bound: usize) -> Result<Vec<NormalForm>, RewriteError> {
    if n > bound || n > ALPHABET_SIZE {
        return Err(RewriteError::EnumerationBound { n, bound });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let letters = standard_letters(n);
    let words: Vec<Vec<Letter>> = match axiom {
        AxiomTag::Xyy | AxiomTag::Yyx => xyy_exponents(n).into_iter().map(|e| expand(&letters.iter().copied().zip(e).collect::<Vec<_>>())).collect(),
        AxiomTag::Yxy => yxy_words(&letters),
    };
    Ok(words
        .into_iter()
        .map(|w| {
            let word = Word::from_vec(w);
            let word = if axiom == AxiomTag::Yyx { mirror_letters(&word, &letters) } else { word };
            NormalForm { word, axiom }
        })
        .collect())
}

/// The mirror of an XYY form over `letters`, renamed so that first
/// occurrences again follow `letters`.
fn mirror_letters(w: &Word, letters: &[Letter]) -> Word {
    let reversed = w.reversed();
    let mut map = [0 as Letter; ALPHABET_SIZE];
    for (i, l) in reversed.content_in_order().into_iter().enumerate() {
        map[l as usize] = letters[i];
    }
    reversed.rename(&map)
}

fn xyy_exponents(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i1 in 1..=4 {
        let seconds: &[usize] = if n == 1 {
            &[0]
        } else if i1 == 1 {
            &[1, 2, 4]
        } else {
            &[1, 4]
        };
        for &i2 in seconds {
            let mut prefix = vec![i1];
            if n >= 2 {
                prefix.push(i2);
            }
            let tail = n.saturating_sub(2);
            for mask in 0..(1usize << tail) {
                let mut e = prefix.clone();
                e.extend((0..tail).rev().map(|b| if mask >> b & 1 == 1 { 4 } else { 1 }));
                out.push(e);
            }
        }
    }
    out
}

fn yxy_block_shapes(letters: &[Letter]) -> Vec<Vec<Letter>> {
    match letters.len() {
        1 => (1..=4).map(|k| vec![letters[0]; k]).collect(),
        2 => {
            let (x, y) = (letters[0], letters[1]);
            vec![vec![x, y, x], vec![x, y, y, x]]
        }
        _ => {
            let mut w = letters.to_vec();
            w.push(letters[0]);
            vec![w]
        }
    }
}

fn yxy_words(letters: &[Letter]) -> Vec<Vec<Letter>> {
    if letters.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=letters.len() {
        for head in yxy_block_shapes(&letters[..first]) {
            for tail in yxy_words(&letters[first..]) {
                let mut w = head.clone();
                w.extend(tail);
                out.push(w);
            }
        }
    }
    out
}

/// Structural check of the normal-form invariants.
pub fn is_normal_form(axiom: AxiomTag, w: &Word) -> bool {
    match axiom {
        AxiomTag::Xyy => is_xyy_form(w),
        AxiomTag::Yyx => is_xyy_form(&w.reversed()),
        AxiomTag::Yxy => is_yxy_form(w),
    }
}

fn is_xyy_form(w: &Word) -> bool {
    let runs = w.runs();
    if runs.len() != w.content().len() {
        return false;
    }
    let exps: Vec<usize> = runs.iter().map(|&(_, n)| n).collect();
    exps.iter().enumerate().all(|(pos, &e)| match pos {
        0 => (1..=4).contains(&e),
        1 => matches!(e, 1 | 4) || (e == 2 && exps[0] == 1),
        _ => matches!(e, 1 | 4),
    })
}

fn is_yxy_form(w: &Word) -> bool {
    connected_decomposition(w).iter().all(|b| {
        let letters = b.word.letters();
        if !b.connected {
            return true;
        }
        let mut content: Vec<Letter> = letters.to_vec();
        content.sort_unstable();
        content.dedup();
        yxy_block_shapes(&content).iter().any(|shape| shape == letters) && letters.len() >= 2
    })
}
