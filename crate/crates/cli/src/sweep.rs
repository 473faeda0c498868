//! Exhaustive evaluation helpers shared by the checks.

use std::collections::HashMap;

use semiwb::words::ALPHABET_SIZE;
use semiwb::{Evaluation, FiniteSemigroup, Letter, Word};

/// Values of `w` under every assignment of `letters` into `s`, in odometer
/// order with the first letter varying fastest.
pub(crate) fn value_vector(s: &FiniteSemigroup, w: &Word, letters: &[Letter]) -> Vec<usize> {
    let pos: Vec<usize> = w
        .letters()
        .iter()
        .map(|l| letters.iter().position(|x| x == l).expect("word letters lie in the alphabet"))
        .collect();
    let n = s.order();
    let total = n.pow(letters.len() as u32);
    let mut values = vec![0usize; letters.len()];
    let mut out = Vec::with_capacity(total);
    for _ in 0..total {
        let mut acc = values[pos[0]];
        for &p in &pos[1..] {
            acc = s.mul(acc, values[p]);
        }
        out.push(acc);
        for v in values.iter_mut() {
            *v += 1;
            if *v < n {
                break;
            }
            *v = 0;
        }
    }
    out
}

/// The assignment at position `index` of [`value_vector`].
pub(crate) fn assignment(index: usize, order: usize, letters: &[Letter]) -> Evaluation {
    let mut rest = index;
    Evaluation::from_pairs(letters.iter().map(|&l| {
        let v = rest % order;
        rest /= order;
        (l, v)
    }))
}

/// First pair `(i, j)`, `i < j`, with equal vectors for which `conflict`
/// holds.
pub(crate) fn collision(vectors: &[Vec<usize>], conflict: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut buckets: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (j, v) in vectors.iter().enumerate() {
        let bucket = buckets.entry(v.as_slice()).or_default();
        if let Some(&i) = bucket.iter().find(|&&i| conflict(i, j)) {
            return Some((i, j));
        }
        bucket.push(j);
    }
    None
}

/// Index of the first assignment where two vectors differ.
pub(crate) fn separating_index(u: &[usize], v: &[usize]) -> Option<usize> {
    u.iter().zip(v).position(|(a, b)| a != b)
}

/// All injective sequences of length `n` drawn from `pool`.
pub(crate) fn arrangements(pool: &[Letter], n: usize) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        let rest: Vec<Letter> = pool.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &l)| l).collect();
        for mut tail in arrangements(&rest, n - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Renames `from[i]` to `to[i]`, leaving other letters alone.
pub(crate) fn rename(w: &Word, from: &[Letter], to: &[Letter]) -> Word {
    let mut map = [0 as Letter; ALPHABET_SIZE];
    for (i, slot) in map.iter_mut().enumerate() {
        *slot = i as Letter;
    }
    for (&f, &t) in from.iter().zip(to) {
        map[f as usize] = t;
    }
    w.rename(&map)
}

/// A witness that the law `w = 0` fails: an assignment not landing on the
/// zero, or, without a zero, two assignments giving different values.
pub(crate) fn zero_law_failure(s: &FiniteSemigroup, w: &Word) -> Option<Vec<Evaluation>> {
    let letters: Vec<Letter> = w.content().into_iter().collect();
    let values = value_vector(s, w, &letters);
    match s.zero() {
        Some(z) => values.iter().position(|&v| v != z).map(|i| vec![assignment(i, s.order(), &letters)]),
        None => {
            let j = values.iter().position(|&v| v != values[0]).unwrap_or(0);
            Some(vec![assignment(0, s.order(), &letters), assignment(j, s.order(), &letters)])
        }
    }
}
