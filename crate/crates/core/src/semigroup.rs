//! Finite semigroups given by multiplication tables.
//!
//! Elements are always the indices `0..order`; `table[a][b]` is the product
//! `a·b` with `a` the left factor. Every constructor either validates
//! associativity or builds the table from operations that preserve it.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::DEFAULT_NODE_BUDGET;

/// Errors raised while building or searching finite semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("associativity fails at ({a}, {b}, {c}): (ab)c = {left} but a(bc) = {right}")]
    NotAssociative { a: usize, b: usize, c: usize, left: usize, right: usize },
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("element set is empty")]
    EmptySet,
    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("not a two-sided ideal: {left}*{right} = {product} leaves the set")]
    NotAnIdeal { left: usize, right: usize, product: usize },
    #[error("partition has {len} entries, expected {expected}")]
    PartitionLength { len: usize, expected: usize },
    #[error("partition is not a congruence: {a} ~ {b} but multiplying by {by} separates them")]
    NotCompatible { a: usize, b: usize, by: usize },
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, SemigroupError>;

/// A finite semigroup stored as a flat row-major multiplication table.
///
/// Equality compares the tables only; the display name is ignored.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SemigroupJson", into = "SemigroupJson")]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    name: Option<String>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl std::hash::Hash for FiniteSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

/// On-disk form: `{"name": string, "order": n, "table": [[int; n]; n]}`.
#[derive(Serialize, Deserialize)]
struct SemigroupJson {
    #[serde(default)]
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<SemigroupJson> for FiniteSemigroup {
    type Error = SemigroupError;

    fn try_from(json: SemigroupJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(SemigroupError::NotSquare { row: 0, len: json.table.len(), expected: json.order });
        }
        let mut s = validate_associative(&json.table)?;
        if !json.name.is_empty() {
            s.name = Some(json.name);
        }
        Ok(s)
    }
}

impl From<FiniteSemigroup> for SemigroupJson {
    fn from(s: FiniteSemigroup) -> Self {
        SemigroupJson { name: s.name.clone().unwrap_or_default(), order: s.order, table: s.rows() }
    }
}

/// Validates a square table and returns the semigroup it defines.
///
/// Reports the first out-of-range entry in row-major order, or the first
/// triple `(a, b, c)` in lexicographic order where associativity fails.
pub fn validate_associative(rows: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    let order = rows.len();
    if order == 0 {
        return Err(SemigroupError::Empty);
    }
    let mut table = Vec::with_capacity(order * order);
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != order {
            return Err(SemigroupError::NotSquare { row, len: entries.len(), expected: order });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(SemigroupError::EntryOutOfRange { row, col, value, order });
            }
            table.push(value);
        }
    }
    if let Some((a, b, c, left, right)) = first_associativity_failure(order, &table) {
        return Err(SemigroupError::NotAssociative { a, b, c, left, right });
    }
    Ok(FiniteSemigroup { order, table, name: None })
}

pub(crate) fn first_associativity_failure(
    order: usize,
    table: &[usize],
) -> Option<(usize, usize, usize, usize, usize)> {
    for a in 0..order {
        for b in 0..order {
            let ab = table[a * order + b];
            for c in 0..order {
                let left = table[ab * order + c];
                let right = table[a * order + table[b * order + c]];
                if left != right {
                    return Some((a, b, c, left, right));
                }
            }
        }
    }
    None
}

impl FiniteSemigroup {
    /// Same as [`validate_associative`].
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        validate_associative(rows)
    }

    /// Builds the table `a·b = op(a, b)` and validates it.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| op(a, b)).collect()).collect();
        validate_associative(&rows)
    }

    /// Table built by an associativity-preserving construction.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteSemigroup { order, table, name: None }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Name for reports; falls back to `order-n`.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("order-{}", self.order))
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Left-to-right product of a nonempty sequence of elements.
    pub fn product(&self, elements: impl IntoIterator<Item = usize>) -> Option<usize> {
        elements.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    pub fn is_associative(&self) -> bool {
        first_associativity_failure(self.order, &self.table).is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The zero element, if one exists.
    pub fn zero(&self) -> Option<usize> {
        self.elements().find(|&z| self.elements().all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// Whether `set` is closed under multiplication.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Relabels elements: old element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteSemigroup { order: n, table, name: self.name.clone() }
    }

    /// Index and period of the monogenic subsemigroup generated by `x`.
    pub fn monogenic_type(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.order];
        let mut power = x;
        let mut k = 1;
        loop {
            if seen[power] != usize::MAX {
                return (seen[power], k - seen[power]);
            }
            seen[power] = k;
            power = self.mul(power, x);
            k += 1;
        }
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.order {
            Err(SemigroupError::ElementOutOfRange { element: x, order: self.order })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.order.saturating_sub(1).to_string().len();
        writeln!(f, "{} (order {})", self.label(), self.order)?;
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A subsemigroup together with its induced table.
///
/// `elements` is sorted; element `elements[i]` of the parent is element `i`
/// of `semigroup`.
#[derive(Clone, Debug)]
pub struct Subsemigroup {
    pub elements: Vec<usize>,
    pub semigroup: FiniteSemigroup,
}

/// Membership mask of the subsemigroup generated by `gens`.
fn closure_mask(s: &FiniteSemigroup, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; s.order];
    let mut queue = VecDeque::new();
    for &g in gens {
        if !member[g] {
            member[g] = true;
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = s.mul(x, g);
            if !member[y] {
                member[y] = true;
                queue.push_back(y);
            }
        }
    }
    member
}

/// Induced semigroup on a multiplication-closed sorted element list.
pub(crate) fn induced(s: &FiniteSemigroup, elements: &[usize]) -> FiniteSemigroup {
    let mut position = vec![usize::MAX; s.order];
    for (i, &x) in elements.iter().enumerate() {
        position[x] = i;
    }
    let k = elements.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in elements {
        for &b in elements {
            table.push(position[s.mul(a, b)]);
        }
    }
    FiniteSemigroup::from_flat_unchecked(k, table)
}

/// Least multiplication-closed set containing `gens`, with its induced table.
pub fn subsemigroup_generated(s: &FiniteSemigroup, gens: &[usize]) -> Result<Subsemigroup> {
    if gens.is_empty() {
        return Err(SemigroupError::EmptyGenerators);
    }
    for &g in gens {
        s.check_element(g)?;
    }
    let mask = closure_mask(s, gens);
    let elements: Vec<usize> = (0..s.order).filter(|&x| mask[x]).collect();
    let semigroup = induced(s, &elements);
    Ok(Subsemigroup { elements, semigroup })
}

/// Componentwise product; the pair `(s, t)` is element `s * |T| + t`.
pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (ns, nt) = (s.order, t.order);
    let n = ns * nt;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / nt, a % nt);
        for b in 0..n {
            let (b1, b2) = (b / nt, b % nt);
            table.push(s.mul(a1, b1) * nt + t.mul(a2, b2));
        }
    }
    let name = format!("{}x{}", s.label(), t.label());
    FiniteSemigroup::from_flat_unchecked(n, table).with_name(name)
}

/// `m`-fold direct power; coordinates are mixed radix, first most significant.
pub fn direct_power(t: &FiniteSemigroup, m: usize) -> FiniteSemigroup {
    assert!(m >= 1, "direct power needs at least one factor");
    let mut acc = t.clone();
    for _ in 1..m {
        acc = direct_product(&acc, t);
    }
    acc.with_name(format!("{}^{}", t.label(), m))
}

/// A quotient semigroup with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub semigroup: FiniteSemigroup,
    pub projection: Vec<usize>,
}

/// Collapses a two-sided ideal to a single zero.
///
/// The zero becomes element 0; the remaining elements keep their relative
/// order and are numbered from 1.
pub fn rees_quotient(s: &FiniteSemigroup, ideal: &[usize]) -> Result<Quotient> {
    if ideal.is_empty() {
        return Err(SemigroupError::EmptySet);
    }
    let mut member = vec![false; s.order];
    for &i in ideal {
        s.check_element(i)?;
        member[i] = true;
    }
    for i in (0..s.order).filter(|&i| member[i]) {
        for x in 0..s.order {
            for (left, right) in [(x, i), (i, x)] {
                let product = s.mul(left, right);
                if !member[product] {
                    return Err(SemigroupError::NotAnIdeal { left, right, product });
                }
            }
        }
    }
    let mut projection = vec![0; s.order];
    let mut next = 1;
    for x in 0..s.order {
        if !member[x] {
            projection[x] = next;
            next += 1;
        }
    }
    let mut representative = vec![0; next];
    for x in 0..s.order {
        representative[projection[x]] = x;
    }
    let mut table = Vec::with_capacity(next * next);
    for a in 0..next {
        for b in 0..next {
            table.push(if a == 0 || b == 0 { 0 } else { projection[s.mul(representative[a], representative[b])] });
        }
    }
    let name = format!("{}/I", s.label());
    Ok(Quotient { semigroup: FiniteSemigroup::from_flat_unchecked(next, table).with_name(name), projection })
}

/// A partition of a carrier, blocks numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
    count: usize,
}

impl Congruence {
    /// Normalises arbitrary block labels to first-appearance numbering.
    pub fn from_blocks(labels: &[usize]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let blocks: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { count: renumber.len(), blocks }
    }

    pub fn identity(order: usize) -> Self {
        Congruence { blocks: (0..order).collect(), count: order }
    }

    pub fn universal(order: usize) -> Self {
        Congruence { blocks: vec![0; order], count: usize::from(order > 0) }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.count
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    /// Blocks as sorted element lists, in block order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.count];
        for (x, &b) in self.blocks.iter().enumerate() {
            classes[b].push(x);
        }
        classes
    }

    /// Checks compatibility with multiplication on both sides.
    pub fn check_compatible(&self, s: &FiniteSemigroup) -> Result<()> {
        if self.blocks.len() != s.order {
            return Err(SemigroupError::PartitionLength { len: self.blocks.len(), expected: s.order });
        }
        let first = first_members(self);
        for a in 0..s.order {
            let rep = first[self.blocks[a]];
            if rep == a {
                continue;
            }
            for by in 0..s.order {
                if !self.related(s.mul(a, by), s.mul(rep, by)) || !self.related(s.mul(by, a), s.mul(by, rep)) {
                    return Err(SemigroupError::NotCompatible { a: rep, b: a, by });
                }
            }
        }
        Ok(())
    }
}

fn first_members(c: &Congruence) -> Vec<usize> {
    let mut first = vec![usize::MAX; c.count];
    for (x, &b) in c.blocks.iter().enumerate() {
        if first[b] == usize::MAX {
            first[b] = x;
        }
    }
    first
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; keeps the smaller root.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing the seed pairs.
///
/// Every pair that actually merges two classes is queued, and its left
/// and right translates by every element are merged in turn.
pub fn congruence_closure(s: &FiniteSemigroup, seeds: &[(usize, usize)]) -> Congruence {
    let n = s.order;
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seeds {
        assert!(a < n && b < n, "seed pair ({a}, {b}) out of range for order {n}");
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    while let Some((a, b)) = work.pop() {
        for x in 0..n {
            let (l1, l2) = (s.mul(x, a), s.mul(x, b));
            if uf.union(l1, l2) {
                work.push((l1, l2));
            }
            let (r1, r2) = (s.mul(a, x), s.mul(b, x));
            if uf.union(r1, r2) {
                work.push((r1, r2));
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_blocks(&roots)
}

/// Quotient by a compatible partition; block `i` becomes element `i`.
pub fn quotient(s: &FiniteSemigroup, c: &Congruence) -> Result<Quotient> {
    c.check_compatible(s)?;
    let first = first_members(c);
    let k = c.count;
    let mut table = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            table.push(c.block_of(s.mul(first[a], first[b])));
        }
    }
    Ok(Quotient {
        semigroup: FiniteSemigroup::from_flat_unchecked(k, table).with_name(format!("{}/~", s.label())),
        projection: c.blocks.clone(),
    })
}

/// A total map between carriers, `images[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementMap {
    pub images: Vec<usize>,
}

impl ElementMap {
    pub fn new(images: Vec<usize>) -> Self {
        ElementMap { images }
    }

    pub fn identity(order: usize) -> Self {
        ElementMap { images: (0..order).collect() }
    }

    pub fn is_homomorphism(&self, s: &FiniteSemigroup, t: &FiniteSemigroup) -> bool {
        self.images.len() == s.order
            && self.images.iter().all(|&y| y < t.order)
            && (0..s.order).all(|a| (0..s.order).all(|b| self.images[s.mul(a, b)] == t.mul(self.images[a], self.images[b])))
    }

    pub fn is_surjective(&self, codomain_order: usize) -> bool {
        let mut hit = vec![false; codomain_order];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|y| seen.insert(*y))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ElementMap) -> ElementMap {
        ElementMap { images: self.images.iter().map(|&y| next.images[y]).collect() }
    }
}

/// A generating set of minimum size.
///
/// Elements outside `S·S` belong to every generating set; the remaining
/// generators are found by trying subsets of increasing size in
/// lexicographic order.
pub fn generating_set(s: &FiniteSemigroup) -> Vec<usize> {
    let n = s.order;
    let mut in_square = vec![false; n];
    for &v in &s.table {
        in_square[v] = true;
    }
    let forced: Vec<usize> = (0..n).filter(|&x| !in_square[x]).collect();
    let generates = |set: &[usize]| !set.is_empty() && closure_mask(s, set).into_iter().all(|m| m);
    if generates(&forced) {
        return forced;
    }
    let rest: Vec<usize> = (0..n).filter(|&x| in_square[x]).collect();
    for size in 1..=rest.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut candidate = forced.clone();
            candidate.extend(idx.iter().map(|&i| rest[i]));
            candidate.sort_unstable();
            if generates(&candidate) {
                return candidate;
            }
            if !next_combination(&mut idx, rest.len()) {
                break;
            }
        }
    }
    unreachable!("the whole carrier generates the semigroup")
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Grows the relation generated by `gens[i] ↦ images[i]`.
///
/// Returns the image of every element reached from the generators, or
/// `None` when the generated relation is not a function.
fn generated_graph(s: &FiniteSemigroup, t: &FiniteSemigroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut img = vec![usize::MAX; s.order];
    let mut queue = Vec::with_capacity(s.order);
    for (&g, &y) in gens.iter().zip(images) {
        match img[g] {
            usize::MAX => {
                img[g] = y;
                queue.push(g);
            }
            prev if prev != y => return None,
            _ => {}
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let y = img[x];
        for (&g, &yg) in gens.iter().zip(images) {
            let z = s.mul(x, g);
            let w = t.mul(y, yg);
            match img[z] {
                usize::MAX => {
                    img[z] = w;
                    queue.push(z);
                }
                prev if prev != w => return None,
                _ => {}
            }
        }
    }
    Some(img)
}

/// The homomorphism sending `gens[i]` to `images[i]`, provided the
/// generators generate `S` and the assignment extends consistently.
pub fn extend_to_homomorphism(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    images: &[usize],
) -> Option<ElementMap> {
    let img = generated_graph(s, t, gens, images)?;
    img.iter().all(|&y| y != usize::MAX).then(|| ElementMap::new(img))
}

fn candidate_count(lists: &[Vec<usize>]) -> u128 {
    lists.iter().map(|l| l.len() as u128).product()
}

/// Visits every homomorphism determined by generator images drawn from
/// `candidates[i]` for `gens[i]`, in mixed-radix order (first generator most
/// significant). The visitor returns `false` to stop.
fn for_each_extension(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    budget: u64,
    mut visit: impl FnMut(Vec<usize>) -> bool,
) -> Result<()> {
    let needed = candidate_count(candidates);
    if needed > budget as u128 {
        return Err(SemigroupError::BudgetExceeded { needed, budget });
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(());
    }
    let k = gens.len();
    let mut digits = vec![0usize; k];
    let mut images = vec![0usize; k];
    loop {
        for i in 0..k {
            images[i] = candidates[i][digits[i]];
        }
        if let Some(img) = generated_graph(s, t, gens, &images) {
            if !visit(img) {
                return Ok(());
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All homomorphisms `S → T` (or only the surjective ones), sorted by images.
pub fn find_homomorphisms(s: &FiniteSemigroup, t: &FiniteSemigroup, surjective_only: bool) -> Result<Vec<ElementMap>> {
    find_homomorphisms_with_budget(s, t, surjective_only, DEFAULT_NODE_BUDGET)
}

pub fn find_homomorphisms_with_budget(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    surjective_only: bool,
    budget: u64,
) -> Result<Vec<ElementMap>> {
    let gens = generating_set(s);
    let candidates = vec![(0..t.order).collect::<Vec<_>>(); gens.len()];
    let mut maps = Vec::new();
    for_each_extension(s, t, &gens, &candidates, budget, |img| {
        let map = ElementMap::new(img);
        if !surjective_only || map.is_surjective(t.order) {
            maps.push(map);
        }
        true
    })?;
    maps.sort();
    Ok(maps)
}

/// A division `T ≺ S`: a subsemigroup of `S` mapping onto `T`.
#[derive(Clone, Debug)]
pub struct Division {
    /// Sorted elements of the subsemigroup `U ≤ S`.
    pub subsemigroup: Vec<usize>,
    /// `(u, image in T)` for each `u` in `subsemigroup`.
    pub surjection: Vec<(usize, usize)>,
}

/// Finds a subsemigroup of `S` with a surjective morphism onto `T`.
///
/// Only subsemigroups generated by preimages of a minimum generating set of
/// `T` need to be tried: any division restricts to one of those.
pub fn find_division(t: &FiniteSemigroup, s: &FiniteSemigroup) -> Result<Option<Division>> {
    find_division_with_budget(t, s, DEFAULT_NODE_BUDGET)
}

pub fn find_division_with_budget(t: &FiniteSemigroup, s: &FiniteSemigroup, budget: u64) -> Result<Option<Division>> {
    if t.order > s.order {
        return Ok(None);
    }
    let t_gens = generating_set(t);
    let k = t_gens.len();
    let needed = (s.order as u128).pow(k as u32);
    if needed > budget as u128 {
        return Err(SemigroupError::BudgetExceeded { needed, budget });
    }
    let mut digits = vec![0usize; k];
    loop {
        if let Some(img) = generated_graph(s, t, &digits, &t_gens) {
            let surjection: Vec<(usize, usize)> =
                (0..s.order).filter(|&x| img[x] != usize::MAX).map(|x| (x, img[x])).collect();
            let subsemigroup = surjection.iter().map(|&(x, _)| x).collect();
            return Ok(Some(Division { subsemigroup, surjection }));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < s.order {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Whether `T` divides `S`.
pub fn divides(t: &FiniteSemigroup, s: &FiniteSemigroup) -> Result<bool> {
    Ok(find_division(t, s)?.is_some())
}

/// The unique idempotent among the powers of `x`.
pub fn omega_power(s: &FiniteSemigroup, x: usize) -> usize {
    let mut power = x;
    while !s.is_idempotent(power) {
        power = s.mul(power, x);
    }
    power
}

/// An isomorphism `S → T`, if one exists.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<Option<ElementMap>> {
    if s.order != t.order
        || s.idempotents().len() != t.idempotents().len()
        || s.is_commutative() != t.is_commutative()
    {
        return Ok(None);
    }
    let t_types: Vec<(usize, usize)> = t.elements().map(|y| t.monogenic_type(y)).collect();
    let gens = generating_set(s);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ty = s.monogenic_type(g);
            t.elements().filter(|&y| t_types[y] == ty).collect()
        })
        .collect();
    let mut found = None;
    for_each_extension(s, t, &gens, &candidates, DEFAULT_NODE_BUDGET, |img| {
        let map = ElementMap::new(img);
        if map.is_injective() {
            found = Some(map);
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

pub fn is_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<bool> {
    Ok(find_isomorphism(s, t)?.is_some())
}

/// An injective morphism `T → S`, i.e. a copy of `T` inside `S`.
pub fn find_embedding(t: &FiniteSemigroup, s: &FiniteSemigroup) -> Result<Option<ElementMap>> {
    if t.order > s.order {
        return Ok(None);
    }
    let gens = generating_set(t);
    let candidates = vec![(0..s.order).collect::<Vec<_>>(); gens.len()];
    let mut found = None;
    for_each_extension(t, s, &gens, &candidates, DEFAULT_NODE_BUDGET, |img| {
        let map = ElementMap::new(img);
        if map.is_injective() {
            found = Some(map);
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// A morphism `ψ: T → S` with `ψ` followed by `φ` the identity of `T`.
pub fn find_splitting(t: &FiniteSemigroup, s: &FiniteSemigroup, phi: &ElementMap) -> Result<Option<ElementMap>> {
    let gens = generating_set(t);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| s.elements().filter(|&x| phi.images[x] == g).collect()).collect();
    let mut found = None;
    for_each_extension(t, s, &gens, &candidates, DEFAULT_NODE_BUDGET, |img| {
        found = Some(ElementMap::new(img));
        false
    })?;
    Ok(found)
}

/// A surjection from a universe member that defeats lifting or projectivity.
#[derive(Clone, Debug, Serialize)]
pub struct LiftWitness {
    pub universe_index: usize,
    pub source: String,
    pub surjection: ElementMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftOutcome {
    pub holds: bool,
    pub counterexample: Option<LiftWitness>,
    /// Number of surjections examined.
    pub surjections: usize,
}

/// Whether every surjection from a universe member onto `T` has a copy of
/// `T` in its domain.
pub fn check_lifts(t: &FiniteSemigroup, universe: &[FiniteSemigroup]) -> Result<LiftOutcome> {
    let mut surjections = 0;
    for (universe_index, s) in universe.iter().enumerate() {
        let onto = find_homomorphisms(s, t, true)?;
        if onto.is_empty() {
            continue;
        }
        surjections += onto.len();
        if find_embedding(t, s)?.is_none() {
            return Ok(LiftOutcome {
                holds: false,
                counterexample: Some(LiftWitness { universe_index, source: s.label(), surjection: onto[0].clone() }),
                surjections,
            });
        }
    }
    Ok(LiftOutcome { holds: true, counterexample: None, surjections })
}

/// Whether every surjection from a universe member onto `T` splits.
pub fn check_projective(t: &FiniteSemigroup, universe: &[FiniteSemigroup]) -> Result<LiftOutcome> {
    let mut surjections = 0;
    for (universe_index, s) in universe.iter().enumerate() {
        for phi in find_homomorphisms(s, t, true)? {
            surjections += 1;
            if find_splitting(t, s, &phi)?.is_none() {
                return Ok(LiftOutcome {
                    holds: false,
                    counterexample: Some(LiftWitness { universe_index, source: s.label(), surjection: phi }),
                    surjections,
                });
            }
        }
    }
    Ok(LiftOutcome { holds: true, counterexample: None, surjections })
}
