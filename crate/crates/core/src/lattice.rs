//! Finite lattices, irreducibility predicates, intervals and the
//! adjunction/atom checks.
//!
//! Empty-set conventions: the meet of no elements is the top and the join
//! of no elements is the bottom. In a finite lattice every element is
//! compact, so no compactness predicate is provided.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Lattices up to this order are checked by quantifying over every subset.
pub const SUBSET_SWEEP_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice is empty")]
    Empty,
    #[error("order matrix row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("order matrix entry ({row}, {col}) must be 0 or 1")]
    BadEntry { row: usize, col: usize },
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("{0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("{0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("interval endpoints {0} and {1} are not ordered")]
    BadInterval(usize, usize),
    #[error("map has {len} images, source has order {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("image {image} is outside the target of order {order}")]
    MapRange { image: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A finite lattice given by its order relation, with meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    order: usize,
    leq: Vec<Vec<u8>>,
}

impl TryFrom<LatticeJson> for FiniteLattice {
    type Error = LatticeError;

    fn try_from(json: LatticeJson) -> Result<Self> {
        if json.leq.len() != json.order {
            return Err(LatticeError::NotSquare { row: 0, len: json.leq.len(), expected: json.order });
        }
        let mut rows = Vec::with_capacity(json.order);
        for (row, entries) in json.leq.iter().enumerate() {
            let mut bools = Vec::with_capacity(entries.len());
            for (col, &e) in entries.iter().enumerate() {
                match e {
                    0 => bools.push(false),
                    1 => bools.push(true),
                    _ => return Err(LatticeError::BadEntry { row, col }),
                }
            }
            rows.push(bools);
        }
        FiniteLattice::from_leq(&rows)
    }
}

impl From<FiniteLattice> for LatticeJson {
    fn from(l: FiniteLattice) -> Self {
        LatticeJson {
            order: l.n,
            leq: (0..l.n).map(|a| (0..l.n).map(|b| u8::from(l.leq(a, b))).collect()).collect(),
        }
    }
}

impl FiniteLattice {
    /// Validates a partial order with all binary meets and joins.
    pub fn from_leq(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut leq = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::NotSquare { row, len: r.len(), expected: n });
            }
            leq.extend_from_slice(r);
        }
        let get = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !get(a, a) {
                return Err(LatticeError::NotReflexive(a));
            }
            for b in 0..n {
                if a != b && get(a, b) && get(b, a) {
                    return Err(LatticeError::NotAntisymmetric(a, b));
                }
                for c in 0..n {
                    if get(a, b) && get(b, c) && !get(a, c) {
                        return Err(LatticeError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| get(c, a) && get(c, b)).collect();
                meet[a * n + b] =
                    *lower.iter().find(|&&c| lower.iter().all(|&d| get(d, c))).ok_or(LatticeError::NoMeet(a, b))?;
                let upper: Vec<usize> = (0..n).filter(|&c| get(a, c) && get(b, c)).collect();
                join[a * n + b] =
                    *upper.iter().find(|&&c| upper.iter().all(|&d| get(c, d))).ok_or(LatticeError::NoJoin(a, b))?;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(FiniteLattice { n, leq, meet, join, bottom, top })
    }

    /// The `n`-element chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let rows: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::from_leq(&rows).expect("chains are lattices")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a set; the top for the empty set.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set; the bottom for the empty set.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Whether `b` covers `a`.
    pub fn covers(&self, b: usize, a: usize) -> bool {
        self.lt(a, b) && (0..self.n).all(|c| !(self.lt(a, c) && self.lt(c, b)))
    }

    pub fn down_set(&self, b: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.leq(x, b)).collect()
    }

    /// The induced order on `elements`, relabelled by position.
    fn induced(&self, elements: &[usize]) -> Result<FiniteLattice> {
        let rows: Vec<Vec<bool>> = elements.iter().map(|&a| elements.iter().map(|&b| self.leq(a, b)).collect()).collect();
        FiniteLattice::from_leq(&rows)
    }
}

/// Covers of the bottom.
pub fn atoms(l: &FiniteLattice) -> Vec<usize> {
    (0..l.order()).filter(|&x| l.covers(x, l.bottom())).collect()
}

/// The irreducibility predicates. The `f` variants restrict to finite
/// subsets, which changes nothing in a finite lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Mi,
    Smi,
    Fmi,
    Sfmi,
    Ji,
    Sji,
    Fji,
    Sfji,
}

impl Irreducibility {
    pub const ALL: [Irreducibility; 8] = [
        Irreducibility::Mi,
        Irreducibility::Smi,
        Irreducibility::Fmi,
        Irreducibility::Sfmi,
        Irreducibility::Ji,
        Irreducibility::Sji,
        Irreducibility::Fji,
        Irreducibility::Sfji,
    ];
}

/// Evaluates the predicate at `x`.
///
/// Up to [`SUBSET_SWEEP_LIMIT`] elements the quantifier over subsets `X`
/// is evaluated literally. Larger lattices use the equivalent finite
/// characterisations: strict irreducibility means a unique upper (lower)
/// cover, and the non-strict form is primeness for binary meets (joins).
pub fn irreducibility(l: &FiniteLattice, x: usize, kind: Irreducibility) -> bool {
    if l.order() <= SUBSET_SWEEP_LIMIT {
        literal_irreducibility(l, x, kind)
    } else {
        characterised_irreducibility(l, x, kind)
    }
}

fn literal_irreducibility(l: &FiniteLattice, x: usize, kind: Irreducibility) -> bool {
    use Irreducibility::*;
    let n = l.order();
    (0u64..1 << n).all(|mask| {
        let set = (0..n).filter(move |&i| mask >> i & 1 == 1);
        match kind {
            Mi | Fmi => !l.leq(l.meet_all(set.clone()), x) || set.clone().any(|y| l.leq(y, x)),
            Smi | Sfmi => l.meet_all(set.clone()) != x || set.clone().any(|y| y == x),
            Ji | Fji => !l.leq(x, l.join_all(set.clone())) || set.clone().any(|y| l.leq(x, y)),
            Sji | Sfji => l.join_all(set.clone()) != x || set.clone().any(|y| y == x),
        }
    })
}

pub(crate) fn characterised_irreducibility(l: &FiniteLattice, x: usize, kind: Irreducibility) -> bool {
    use Irreducibility::*;
    let n = l.order();
    match kind {
        Smi | Sfmi => (0..n).filter(|&y| l.covers(y, x)).count() == 1,
        Sji | Sfji => (0..n).filter(|&y| l.covers(x, y)).count() == 1,
        Mi | Fmi => x != l.top() && (0..n).all(|a| (0..n).all(|b| !l.leq(l.meet(a, b), x) || l.leq(a, x) || l.leq(b, x))),
        Ji | Fji => x != l.bottom() && (0..n).all(|a| (0..n).all(|b| !l.leq(x, l.join(a, b)) || l.leq(x, a) || l.leq(x, b))),
    }
}

/// The interval `[a, b]` with elements listed in increasing index order.
pub fn interval(l: &FiniteLattice, a: usize, b: usize) -> Result<(FiniteLattice, Vec<usize>)> {
    if !l.leq(a, b) {
        return Err(LatticeError::BadInterval(a, b));
    }
    let elements: Vec<usize> = (0..l.order()).filter(|&x| l.leq(a, x) && l.leq(x, b)).collect();
    Ok((l.induced(&elements)?, elements))
}

/// A total map between finite lattices, JSON `{"images": […]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    pub images: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapProperties {
    pub order_preserving: bool,
    /// Preserves all joins, including the empty one.
    pub sup_preserving: bool,
    /// Preserves all meets, including the empty one.
    pub inf_preserving: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl LatticeMap {
    pub fn new(images: Vec<usize>) -> Self {
        LatticeMap { images }
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap { images: (0..n).collect() }
    }

    pub fn check_total(&self, source: &FiniteLattice, target: &FiniteLattice) -> Result<()> {
        if self.images.len() != source.order() {
            return Err(LatticeError::MapLength { len: self.images.len(), expected: source.order() });
        }
        if let Some(&image) = self.images.iter().find(|&&y| y >= target.order()) {
            return Err(LatticeError::MapRange { image, order: target.order() });
        }
        Ok(())
    }

    pub fn properties(&self, source: &FiniteLattice, target: &FiniteLattice) -> Result<MapProperties> {
        self.check_total(source, target)?;
        let f = |x: usize| self.images[x];
        let n = source.order();
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let distinct: BTreeSet<usize> = self.images.iter().copied().collect();
        Ok(MapProperties {
            order_preserving: pairs().all(|(a, b)| !source.leq(a, b) || target.leq(f(a), f(b))),
            sup_preserving: f(source.bottom()) == target.bottom()
                && pairs().all(|(a, b)| f(source.join(a, b)) == target.join(f(a), f(b))),
            inf_preserving: f(source.top()) == target.top()
                && pairs().all(|(a, b)| f(source.meet(a, b)) == target.meet(f(a), f(b))),
            injective: distinct.len() == n,
            surjective: distinct.len() == target.order(),
        })
    }
}

/// Which parts of the adjunction hypotheses hold for `q: L₂ → L₁` and
/// `m: L₁ → L₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    /// `m(x) ≤ y` iff `x ≤ q(y)` for all `x ∈ L₁`, `y ∈ L₂`.
    pub adjoint: bool,
    pub m_injective: bool,
    pub m_sup_preserving: bool,
    pub q_inf_preserving: bool,
    pub q_surjective: bool,
    /// The adjunction together with the four map properties.
    pub hypothesis_1: bool,
    /// Only the bottom of `L₂` is sent to the bottom of `L₁`.
    pub hypothesis_2: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.hypothesis_1 && self.hypothesis_2
    }
}

pub fn check_adjunction(l1: &FiniteLattice, l2: &FiniteLattice, q: &LatticeMap, m: &LatticeMap) -> Result<AdjunctionReport> {
    let qp = q.properties(l2, l1)?;
    let mp = m.properties(l1, l2)?;
    let adjoint = (0..l1.order()).all(|x| (0..l2.order()).all(|y| l2.leq(m.images[x], y) == l1.leq(x, q.images[y])));
    let hypothesis_1 = adjoint && mp.injective && mp.sup_preserving && qp.inf_preserving && qp.surjective;
    let hypothesis_2 = (0..l2.order()).all(|y| (q.images[y] == l1.bottom()) == (y == l2.bottom()));
    Ok(AdjunctionReport {
        adjoint,
        m_injective: mp.injective,
        m_sup_preserving: mp.sup_preserving,
        q_inf_preserving: qp.inf_preserving,
        q_surjective: qp.surjective,
        hypothesis_1,
        hypothesis_2,
    })
}

/// The mirrored orientation: `q: L₁ → L₂` and `m: L₂ → L₁`.
pub fn check_adjunction_swapped(
    l1: &FiniteLattice,
    l2: &FiniteLattice,
    q: &LatticeMap,
    m: &LatticeMap,
) -> Result<AdjunctionReport> {
    check_adjunction(l2, l1, q, m)
}

/// Conclusions `(Atoms(L₁)m = Atoms(L₂), Atoms(L₁) = Atoms(L₂)q)`.
pub fn atoms_correspondence(l1: &FiniteLattice, l2: &FiniteLattice, q: &LatticeMap, m: &LatticeMap) -> Result<(bool, bool)> {
    q.check_total(l2, l1)?;
    m.check_total(l1, l2)?;
    let a1: BTreeSet<usize> = atoms(l1).into_iter().collect();
    let a2: BTreeSet<usize> = atoms(l2).into_iter().collect();
    let a1m: BTreeSet<usize> = a1.iter().map(|&a| m.images[a]).collect();
    let a2q: BTreeSet<usize> = a2.iter().map(|&a| q.images[a]).collect();
    Ok((a1m == a2, a1 == a2q))
}

/// Random lattice with `n ≥ 2` elements: 0 is the bottom, `n-1` the top,
/// and the middle elements carry the transitive closure of a random DAG
/// oriented by index. Rejection-samples until the order is a lattice.
pub fn random_lattice<R: Rng>(rng: &mut R, n: usize, edge_probability: f64) -> FiniteLattice {
    assert!(n >= 2, "a random lattice needs a bottom and a top");
    loop {
        let mut rel = vec![vec![false; n]; n];
        for (a, row) in rel.iter_mut().enumerate() {
            row[a] = true;
            row[n - 1] = true;
        }
        rel[0].iter_mut().for_each(|e| *e = true);
        for a in 1..n - 1 {
            for b in a + 1..n - 1 {
                if rng.gen_bool(edge_probability) {
                    rel[a][b] = true;
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if rel[a][k] && rel[k][b] {
                        rel[a][b] = true;
                    }
                }
            }
        }
        if let Ok(l) = FiniteLattice::from_leq(&rel) {
            return l;
        }
    }
}

/// A random adjunction: `L₁` is a join-closed subset `K` of `L₂`
/// containing the bottom, `m` its inclusion and `q(y)` the largest element
/// of `K` below `y`. Atoms of `L₂` are included with probability
/// `atom_probability`, other elements with probability one half.
pub fn random_adjunction<R: Rng>(
    rng: &mut R,
    l2: &FiniteLattice,
    atom_probability: f64,
) -> (FiniteLattice, LatticeMap, LatticeMap) {
    let n = l2.order();
    let atom_set: BTreeSet<usize> = atoms(l2).into_iter().collect();
    let mut chosen: BTreeSet<usize> = BTreeSet::from([l2.bottom()]);
    for x in 0..n {
        let p = if atom_set.contains(&x) { atom_probability } else { 0.5 };
        if x != l2.bottom() && rng.gen_bool(p) {
            chosen.insert(x);
        }
    }
    // close under joins
    loop {
        let snapshot: Vec<usize> = chosen.iter().copied().collect();
        let before = chosen.len();
        for &a in &snapshot {
            for &b in &snapshot {
                chosen.insert(l2.join(a, b));
            }
        }
        if chosen.len() == before {
            break;
        }
    }
    let k: Vec<usize> = chosen.into_iter().collect();
    let l1 = l2.induced(&k).expect("join-closed subsets with bottom are lattices");
    let m = LatticeMap::new(k.clone());
    let q = LatticeMap::new(
        (0..n)
            .map(|y| {
                let below = l2.join_all(k.iter().copied().filter(|&c| l2.leq(c, y)));
                k.iter().position(|&c| c == below).expect("join of members stays in K")
            })
            .collect(),
    );
    (l1, q, m)
}

/// The counterexample fixture: `L₁` the 3-chain, `L₂` the 4-chain
/// `0 < x < 1 < 2`, `m` fixing `0, 1, 2` and `q` fixing them with `x ↦ 0`.
pub fn counterexample_fixture() -> (FiniteLattice, FiniteLattice, LatticeMap, LatticeMap) {
    let l1 = FiniteLattice::chain(3);
    let l2 = FiniteLattice::chain(4);
    let m = LatticeMap::new(vec![0, 2, 3]);
    let q = LatticeMap::new(vec![0, 0, 1, 2]);
    (l1, l2, q, m)
}
