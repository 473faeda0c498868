//! Finite relatively free semigroups: free nilpotent semigroups, quotients
//! by fully invariant congruences, the cover objects attached to a single
//! identity, and free objects of the pseudovariety generated by a finite
//! semigroup.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{
    self, congruence_closure, extend_to_homomorphism, find_homomorphisms, generating_set, ElementMap, FiniteSemigroup,
    SemigroupError,
};
use crate::words::{self, advance, find_counterexample, tw1w2, Compiled, Evaluation, Identity, Letter, TwEquation, Word, WordError};
use crate::DEFAULT_NODE_BUDGET;

/// Largest semigroup whose full multiplication table is materialised.
pub const MAX_TABLE_ORDER: usize = 4096;

/// Largest element set grown by a closure before its table is built.
pub const MAX_CLOSURE_ELEMENTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("{what} needs {needed}, limit is {limit}")]
    Budget { what: &'static str, needed: u128, limit: u128 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{0} satisfies the identity, so no separating tuple exists")]
    NoSeparatingTuple(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type Result<T> = std::result::Result<T, FreeError>;

fn budget(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(FreeError::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}

/// A semigroup whose elements carry representative words; `None` marks
/// the zero.
#[derive(Clone, Debug, Serialize)]
pub struct LabeledSemigroup {
    pub semigroup: FiniteSemigroup,
    #[serde(serialize_with = "serialize_labels")]
    pub labels: Vec<Option<Word>>,
}

fn serialize_labels<S: serde::Serializer>(labels: &[Option<Word>], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(labels.iter().map(|l| l.as_ref().map_or_else(|| "0".to_string(), |w| w.to_string())))
}

impl LabeledSemigroup {
    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    /// Element labelled by exactly `w`.
    pub fn element_of(&self, w: &Word) -> Option<usize> {
        self.labels.iter().position(|l| l.as_ref() == Some(w))
    }

    pub fn zero(&self) -> Option<usize> {
        self.labels.iter().position(|l| l.is_none())
    }

    /// Evaluates a word over the generator letters `a, b, …`.
    pub fn evaluate_generators(&self, w: &Word) -> Option<usize> {
        let gens: Vec<usize> =
            (0..words::ALPHABET_SIZE as Letter).map_while(|l| self.element_of(&Word::letter(l))).collect();
        let mut acc: Option<usize> = None;
        for &l in w.letters() {
            let g = *gens.get(l as usize)?;
            acc = Some(acc.map_or(g, |a| self.semigroup.mul(a, g)));
        }
        acc
    }

    /// Label strings, `0` for the zero.
    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.as_ref().map_or_else(|| "0".to_string(), |w| w.to_string())).collect()
    }
}

/// The free semigroup on `k` generators `a, b, …` with `x₁⋯x_{n+1} = 0`.
///
/// Element 0 is the zero; the words of length `1..=n` follow in shortlex
/// order.
pub fn free_nilpotent(k: usize, n: usize) -> Result<LabeledSemigroup> {
    if k == 0 || n == 0 || k > words::ALPHABET_SIZE {
        return Err(FreeError::Hypothesis(format!("free_nilpotent needs 1 <= k <= 26 and n >= 1, got k={k}, n={n}")));
    }
    let mut order: u128 = 1;
    let mut offsets = vec![0usize; n + 2];
    let mut layer: u128 = 1;
    for len in 1..=n {
        layer = layer.saturating_mul(k as u128);
        offsets[len] = order as usize;
        order = order.saturating_add(layer);
        budget("free nilpotent semigroup", order, MAX_TABLE_ORDER as u128)?;
    }
    let order = order as usize;
    offsets[n + 1] = order;
    // words of length len occupy [offsets[len], offsets[len] + k^len), value in base k
    let mut length_of = vec![0usize; order];
    let mut value_of = vec![0usize; order];
    let mut labels = vec![None; order];
    for len in 1..=n {
        let count = offsets[len + 1] - offsets[len];
        for v in 0..count {
            let e = offsets[len] + v;
            length_of[e] = len;
            value_of[e] = v;
            let letters: Vec<Letter> = (0..len).rev().map(|p| (v / k.pow(p as u32) % k) as Letter).collect();
            labels[e] = Some(Word::new(letters)?);
        }
    }
    let mut table = vec![0usize; order * order];
    for a in 1..order {
        for b in 1..order {
            let len = length_of[a] + length_of[b];
            if len <= n {
                table[a * order + b] = offsets[len] + value_of[a] * k.pow(length_of[b] as u32) + value_of[b];
            }
        }
    }
    let s = FiniteSemigroup::from_flat_unchecked(order, table).with_name(format!("N{}({k})", n + 1));
    Ok(LabeledSemigroup { semigroup: s, labels })
}

/// Pairs `(θ(u), θ(v))` over every assignment of the identity's letters.
fn instance_pairs(s: &FiniteSemigroup, id: &Identity, limit: u64) -> Result<Vec<(usize, usize)>> {
    let c = Compiled::new(id);
    budget("assignment sweep", (s.order() as u128).pow(c.letters.len() as u32), limit as u128)?;
    let mut values = vec![0usize; c.letters.len()];
    let mut pairs = Vec::new();
    loop {
        let (l, r) = (Compiled::fold(s, &c.lhs, &values), Compiled::fold(s, &c.rhs, &values));
        if l != r {
            pairs.push((l, r));
        }
        if !advance(&mut values, s.order()) {
            return Ok(pairs);
        }
    }
}

/// Quotient by the least congruence containing every instance of every
/// identity in `identities`, with assignments ranging over all elements.
///
/// Each block is labelled by its least word in shortlex order, or by the
/// zero marker when it contains the zero.
pub fn fully_invariant_quotient(f: &LabeledSemigroup, identities: &[Identity]) -> Result<LabeledSemigroup> {
    let mut seeds = Vec::new();
    for id in identities {
        seeds.extend(instance_pairs(&f.semigroup, id, DEFAULT_NODE_BUDGET)?);
    }
    let c = congruence_closure(&f.semigroup, &seeds);
    let q = semigroup::quotient(&f.semigroup, &c)?;
    let mut labels: Vec<Option<Option<Word>>> = vec![None; c.num_blocks()];
    for (x, label) in f.labels.iter().enumerate() {
        let slot = &mut labels[c.block_of(x)];
        *slot = match (slot.take(), label) {
            (None, l) => Some(l.clone()),
            (Some(None), _) | (_, None) => Some(None),
            (Some(Some(old)), Some(new)) => Some(Some(if new.shortlex_cmp(&old).is_lt() { new.clone() } else { old })),
        };
    }
    let name = format!("{}/E", f.semigroup.label());
    Ok(LabeledSemigroup {
        semigroup: q.semigroup.with_name(name),
        labels: labels.into_iter().map(|l| l.expect("every block has a member")).collect(),
    })
}

/// The semigroups attached to `w₁ = w₂` on `k` letters of length `n`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverObjects {
    /// `N_{n+1}(k)` modulo `w₁ = w₂`.
    pub s: LabeledSemigroup,
    /// `N_{n+1}(k)` modulo the identification images `T_{w₁,w₂}`.
    pub n_flat: LabeledSemigroup,
    pub tw: Vec<TwEquation>,
}

fn check_cover_hypotheses(id: &Identity, k: usize, n: usize) -> Result<Vec<TwEquation>> {
    let tw = tw1w2(id).map_err(|e| FreeError::Hypothesis(e.to_string()))?;
    if id.lhs.content().len() != k || id.lhs.len() != n {
        return Err(FreeError::Hypothesis(format!(
            "{id} has {} letters and length {}, expected k={k}, n={n}",
            id.lhs.content().len(),
            id.lhs.len()
        )));
    }
    if id.is_trivial() {
        return Err(FreeError::Hypothesis(format!("{id} is trivial")));
    }
    Ok(tw)
}

pub fn prop133_cover_objects(id: &Identity, k: usize, n: usize) -> Result<CoverObjects> {
    let tw = check_cover_hypotheses(id, k, n)?;
    let free = free_nilpotent(k, n)?;
    let s = fully_invariant_quotient(&free, std::slice::from_ref(id))?;
    let nontrivial: Vec<Identity> = tw.iter().filter(|e| !e.trivial).map(|e| e.identity.clone()).collect();
    let n_flat = fully_invariant_quotient(&free, &nontrivial)?;
    Ok(CoverObjects { s, n_flat, tw })
}

/// All permutations of `0..k` in lexicographic order of one-line notation.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else { return out };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Element of `(S × T^m) / (0 × T^m)`: `None` is the zero.
pub type Tilde = Option<(usize, Vec<usize>)>;

fn tilde_mul(s: &FiniteSemigroup, s_zero: usize, t: &FiniteSemigroup, a: &Tilde, b: &Tilde) -> Tilde {
    let ((sa, ta), (sb, tb)) = (a.as_ref()?, b.as_ref()?);
    let prod = s.mul(*sa, *sb);
    (prod != s_zero).then(|| (prod, ta.iter().zip(tb).map(|(&x, &y)| t.mul(x, y)).collect()))
}

/// Closure of generators under right multiplication in a semigroup given
/// by a product function, followed by its table.
fn generate_by<E: Clone + Eq + std::hash::Hash>(
    gens: &[E],
    mul: impl Fn(&E, &E) -> E,
    what: &'static str,
) -> Result<(Vec<E>, FiniteSemigroup)> {
    let mut index: HashMap<E, usize> = HashMap::new();
    let mut elements: Vec<E> = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
        }
    }
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                budget(what, elements.len() as u128 + 1, MAX_TABLE_ORDER.min(MAX_CLOSURE_ELEMENTS) as u128)?;
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&mul(a, b)]);
        }
    }
    Ok((elements, FiniteSemigroup::from_flat_unchecked(n, table)))
}

/// Result of building `F = ⟨ā₁, …, ā_k⟩ ≤ S̃ = (S × T^{k!}) / (0 × T^{k!})`.
#[derive(Clone, Debug, Serialize)]
pub struct FConstruction {
    pub cover: CoverObjects,
    /// Values of the identity's letters (alphabetical) in `T` separating it.
    pub separating: Evaluation,
    pub permutations: Vec<Vec<usize>>,
    /// `|S| · |T|^{k!}` non-zero elements plus the zero.
    pub s_tilde_order: u128,
    pub f: FiniteSemigroup,
    /// Indices in `F` of `ā₁, …, ā_k`.
    pub generators: Vec<usize>,
    /// Whether `ā_i ↦ a_i` extends to a morphism onto `N^♭`.
    pub natural_map: bool,
    pub surjection: Option<ElementMap>,
}

pub fn prop133_f_construction(id: &Identity, k: usize, n: usize, t: &FiniteSemigroup) -> Result<FConstruction> {
    let cover = prop133_cover_objects(id, k, n)?;
    let separating = find_counterexample(t, id)?.ok_or_else(|| FreeError::NoSeparatingTuple(t.label()))?;
    let tuple: Vec<usize> = id.letters().iter().map(|&l| separating.get(l).expect("assigned")).collect();
    let perms = permutations(k);
    let m = perms.len();
    let s = &cover.s;
    let s_zero = s.zero().expect("nilpotent quotients have a zero");
    let s_tilde_order = (s.order() as u128 - 1) * (t.order() as u128).pow(m as u32) + 1;
    let gens: Vec<Tilde> = (0..k)
        .map(|i| {
            let si = s.element_of(&Word::letter(i as Letter)).expect("generator survives");
            Some((si, perms.iter().map(|pi| tuple[pi[i]]).collect()))
        })
        .collect();
    let (elements, f) = generate_by(&gens, |a, b| tilde_mul(&s.semigroup, s_zero, t, a, b), "subsemigroup F")?;
    let generators: Vec<usize> = gens.iter().map(|g| elements.iter().position(|e| e == g).unwrap()).collect();
    let f = f.with_name("F");
    let n_flat = &cover.n_flat;
    let targets: Vec<usize> = (0..k).map(|i| n_flat.element_of(&Word::letter(i as Letter)).unwrap()).collect();
    let natural = extend_to_homomorphism(&f, &n_flat.semigroup, &generators, &targets)
        .filter(|m| m.is_surjective(n_flat.order()));
    let natural_map = natural.is_some();
    let surjection = match natural {
        Some(m) => Some(m),
        None => find_homomorphisms(&f, &n_flat.semigroup, true)?.into_iter().next(),
    };
    Ok(FConstruction { cover, separating, permutations: perms, s_tilde_order, f, generators, natural_map, surjection })
}

/// The subsemigroup of `(S × G) / (0 × G)` generated by `gens`, each given
/// as an `(S element, G element)` pair.
pub fn rees_product_generated(s: &FiniteSemigroup, g: &FiniteSemigroup, gens: &[(usize, usize)]) -> Result<(Vec<Tilde>, FiniteSemigroup)> {
    let s_zero = s.zero().ok_or_else(|| FreeError::Hypothesis(format!("{} has no zero", s.label())))?;
    let gens: Vec<Tilde> = gens.iter().map(|&(a, b)| (a != s_zero).then(|| (a, vec![b]))).collect();
    generate_by(&gens, |a, b| tilde_mul(s, s_zero, g, a, b), "generated subsemigroup")
}

/// Free `k`-generated object of the pseudovariety generated by `S`: the
/// functions `S^k → S` obtained from the `k` coordinate projections under
/// pointwise multiplication. Element `i < k` is the `i`-th projection.
pub fn free_in_generated_pseudovariety(s: &FiniteSemigroup, k: usize) -> Result<FiniteSemigroup> {
    if k == 0 {
        return Err(FreeError::Hypothesis("need at least one generator".into()));
    }
    let points = (s.order() as u128).pow(k as u32);
    budget("assignment tuples", points, 1 << 16)?;
    let points = points as usize;
    let mut projections = Vec::with_capacity(k);
    for i in 0..k {
        let stride = s.order().pow((k - 1 - i) as u32);
        projections.push((0..points).map(|p| p / stride % s.order()).collect::<Vec<usize>>());
    }
    let (_, f) = generate_by(&projections, |a, b| a.iter().zip(b).map(|(&x, &y)| s.mul(x, y)).collect(), "function semigroup")?;
    Ok(f.with_name(format!("F{k}({})", s.label())))
}

/// Whether `T` lies in the pseudovariety generated by `S`.
pub fn pseudovariety_member(t: &FiniteSemigroup, s: &FiniteSemigroup) -> Result<bool> {
    let k = generating_set(t).len();
    let free = free_in_generated_pseudovariety(s, k)?;
    Ok(semigroup::divides(t, &free)?)
}
