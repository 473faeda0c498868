// Shared oracles for the integration tests. Each one is deliberately
// naive so it can check the library against first principles.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use semiwb::{FiniteSemigroup, Identity, Letter, Word};

/// Every word of length `1..=max_len` over the first `k` letters `a, b, …`.
pub fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k as Letter).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().map(|w| Word::new(w.clone()).unwrap()));
    }
    out
}

/// Values of `w` under every assignment of the letters `a..` (first `k`)
/// into `s`, with the assignment of `a` most significant.
pub fn value_vector(s: &FiniteSemigroup, w: &Word, k: usize) -> Vec<usize> {
    let n = s.order();
    let total = n.pow(k as u32);
    let mut out = Vec::with_capacity(total);
    let mut theta = vec![0usize; k];
    for code in 0..total {
        let mut c = code;
        for slot in theta.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        let mut acc: Option<usize> = None;
        for &l in w.letters() {
            let v = theta[l as usize];
            acc = Some(acc.map_or(v, |a| s.mul(a, v)));
        }
        out.push(acc.unwrap());
    }
    out
}

/// Brute-force check of `u = v` in `s` over the letters of both sides.
pub fn holds(s: &FiniteSemigroup, id: &Identity) -> bool {
    let letters = id.letters();
    let mut map = [0 as Letter; 26];
    for (i, &l) in letters.iter().enumerate() {
        map[l as usize] = i as Letter;
    }
    let k = letters.len();
    value_vector(s, &id.lhs.rename(&map), k) == value_vector(s, &id.rhs.rename(&map), k)
}

// All ways of matching `pattern` against a prefix of `text[start..]`,
// as (end, images).
fn matches(pattern: &[Letter], text: &[Letter], start: usize, bound: &mut BTreeMap<Letter, (usize, usize)>, out: &mut Vec<(usize, BTreeMap<Letter, (usize, usize)>)>) {
    let Some((&v, rest)) = pattern.split_first() else {
        out.push((start, bound.clone()));
        return;
    };
    if let Some(&(s, l)) = bound.get(&v) {
        if start + l <= text.len() && text[start..start + l] == text[s..s + l] {
            matches(rest, text, start + l, bound, out);
        }
        return;
    }
    for l in 1..=text.len().saturating_sub(start) {
        bound.insert(v, (start, l));
        matches(rest, text, start + l, bound, out);
    }
    bound.remove(&v);
}

/// Breadth-first closure of `w` under both directions of `axiom` applied at
/// every position, keeping words up to `len_cap` letters and stopping after
/// `class_cap` words.
pub fn rewrite_closure(axiom: &Identity, w: &Word, len_cap: usize, class_cap: usize) -> HashSet<Vec<Letter>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([w.letters().to_vec()]);
    let mut queue = VecDeque::from([w.letters().to_vec()]);
    let sides = [(axiom.lhs.letters(), axiom.rhs.letters()), (axiom.rhs.letters(), axiom.lhs.letters())];
    while let Some(cur) = queue.pop_front() {
        for (from, to) in sides {
            for start in 0..cur.len() {
                let mut found = Vec::new();
                matches(from, &cur, start, &mut BTreeMap::new(), &mut found);
                for (end, images) in found {
                    let mut next = cur[..start].to_vec();
                    for v in to {
                        let (s, l) = images[v];
                        next.extend_from_slice(&cur[s..s + l]);
                    }
                    next.extend_from_slice(&cur[end..]);
                    if next.len() <= len_cap && seen.len() < class_cap && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

// Squares, checked the slow way.
pub fn has_square(letters: &[Letter]) -> bool {
    let n = letters.len();
    (0..n).any(|i| (1..=(n - i) / 2).any(|l| letters[i..i + l] == letters[i + l..i + 2 * l]))
}
