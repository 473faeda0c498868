//! Backtracking search for finite semigroups satisfying a set of identities
//! and falsifying a goal.
//!
//! Cells are filled row-major. Candidate values follow the least number
//! heuristic: once the cell indices and all values placed so far mention
//! only elements up to `m`, the unmentioned elements are interchangeable and
//! only `m + 1` among them is tried. Associativity is checked incrementally
//! on every triple whose products are all known. Axiom instances are
//! evaluated incrementally: each side of each substitution instance keeps
//! its partial product and waits on the first unknown cell it needs.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{find_isomorphism, FiniteSemigroup};
use crate::words::{find_counterexample_with, Compiled, Evaluation, Identity, SweepLimits};

/// Largest order the search accepts.
pub const MAX_ORDER: usize = 10;

/// Default node budget per order.
pub const DEFAULT_SEARCH_NODES: u64 = 100_000_000;

/// Default wall-clock budget per order.
pub const DEFAULT_SEARCH_TIME: Duration = Duration::from_secs(60);

/// Cap on tracked axiom instances across all axioms.
const MAX_INSTANCES: usize = 20_000_000;

const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("orders must satisfy 1 <= min <= max <= {MAX_ORDER}, got {min}..{max}")]
    Orders { min: usize, max: usize },
    #[error("order {order} with {letters} letters needs {needed} axiom instances, limit is {MAX_INSTANCES}")]
    TooManyInstances { order: usize, letters: usize, needed: u128 },
    #[error("search budget exhausted at order {order} after {nodes} nodes")]
    BudgetExhausted { order: usize, nodes: u64 },
}

/// What to look for and how long to look.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub axioms: Vec<Identity>,
    pub falsify: Option<Identity>,
    pub min_order: usize,
    pub max_order: usize,
    pub time_budget: Option<Duration>,
    pub node_budget: u64,
}

impl SearchSpec {
    pub fn new(axioms: Vec<Identity>, falsify: Option<Identity>, orders: RangeInclusive<usize>) -> Self {
        SearchSpec {
            axioms,
            falsify,
            min_order: *orders.start(),
            max_order: *orders.end(),
            time_budget: Some(DEFAULT_SEARCH_TIME),
            node_budget: DEFAULT_SEARCH_NODES,
        }
    }

    pub fn with_time(mut self, time: Option<Duration>) -> Self {
        self.time_budget = time;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.min_order < 1 || self.min_order > self.max_order || self.max_order > MAX_ORDER {
            return Err(ModelError::Orders { min: self.min_order, max: self.max_order });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderStatus {
    Found,
    /// The search space at this order was exhausted without a model.
    Absent,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderOutcome {
    pub order: usize,
    pub status: OrderStatus,
    pub nodes: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Model {
    pub semigroup: FiniteSemigroup,
    /// First substitution falsifying the goal, when there is a goal.
    pub witness: Option<Evaluation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub model: Option<Model>,
    pub outcomes: Vec<OrderOutcome>,
}

impl SearchReport {
    /// True when no model was found and some order ran out of budget.
    pub fn budget_exhausted(&self) -> bool {
        self.model.is_none() && self.outcomes.iter().any(|o| o.status == OrderStatus::BudgetExhausted)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

enum Trail {
    /// Previous `(pos, acc)` of an instance side.
    State(u32, u16, u8),
    /// An instance side was appended to this cell's watch list.
    Watch(u32),
}

/// Mutable search state for a single order.
struct Search {
    n: usize,
    table: Vec<u8>,
    /// Flattened axiom words: for each side, letter slots into `values`.
    words: Vec<Vec<u8>>,
    word_of: Vec<u32>,
    base_of: Vec<u32>,
    partner: Vec<u32>,
    values: Vec<u8>,
    pos: Vec<u16>,
    acc: Vec<u8>,
    watch: Vec<Vec<u32>>,
    trail: Vec<Trail>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
}

impl Search {
    fn new(n: usize, axioms: &[Identity], node_budget: u64, deadline: Option<Instant>) -> Result<Self, ModelError> {
        let mut s = Search {
            n,
            table: vec![UNSET; n * n],
            words: Vec::new(),
            word_of: Vec::new(),
            base_of: Vec::new(),
            partner: Vec::new(),
            values: Vec::new(),
            pos: Vec::new(),
            acc: Vec::new(),
            watch: vec![Vec::new(); n * n],
            trail: Vec::new(),
            nodes: 0,
            node_budget,
            deadline,
        };
        let mut total: u128 = 0;
        for id in axioms.iter().filter(|id| !id.is_trivial()) {
            let c = Compiled::new(id);
            let k = c.letters.len();
            let count = (n as u128).pow(k as u32);
            total += count;
            if total > MAX_INSTANCES as u128 {
                return Err(ModelError::TooManyInstances { order: n, letters: k, needed: total });
            }
            let lw = s.words.len() as u32;
            s.words.push(c.lhs.iter().map(|&p| p as u8).collect());
            s.words.push(c.rhs.iter().map(|&p| p as u8).collect());
            for sub in 0..count as usize {
                let base = s.values.len() as u32;
                for j in 0..k {
                    s.values.push((sub / n.pow((k - 1 - j) as u32) % n) as u8);
                }
                let e = s.pos.len() as u32;
                for side in 0..2 {
                    s.word_of.push(lw + side);
                    s.base_of.push(base);
                    s.partner.push(if side == 0 { e + 1 } else { e });
                    s.pos.push(0);
                    s.acc.push(0);
                }
            }
        }
        Ok(s)
    }

    fn value(&self, e: usize, slot: u8) -> u8 {
        self.values[self.base_of[e] as usize + slot as usize]
    }

    fn word_len(&self, e: usize) -> usize {
        self.words[self.word_of[e] as usize].len()
    }

    fn complete(&self, e: usize) -> bool {
        self.pos[e] as usize == self.word_len(e)
    }

    /// Starts every instance side; returns false if some instance fails
    /// before any cell is known.
    fn initialise(&mut self) -> bool {
        for e in 0..self.pos.len() {
            let first = self.words[self.word_of[e] as usize][0];
            self.acc[e] = self.value(e, first);
            self.pos[e] = 1;
            if !self.run(e, false) {
                return false;
            }
        }
        true
    }

    /// Advances an instance side as far as known cells allow. Returns false
    /// when a completed instance has differing sides.
    fn run(&mut self, e: usize, record: bool) -> bool {
        let w = self.word_of[e] as usize;
        let len = self.words[w].len();
        let (mut pos, mut acc) = (self.pos[e] as usize, self.acc[e]);
        while pos < len {
            let cell = acc as usize * self.n + self.value(e, self.words[w][pos]) as usize;
            let v = self.table[cell];
            if v == UNSET {
                break;
            }
            acc = v;
            pos += 1;
        }
        if record {
            self.trail.push(Trail::State(e as u32, self.pos[e], self.acc[e]));
        }
        self.pos[e] = pos as u16;
        self.acc[e] = acc;
        if pos < len {
            let cell = acc as usize * self.n + self.value(e, self.words[w][pos]) as usize;
            self.watch[cell].push(e as u32);
            if record {
                self.trail.push(Trail::Watch(cell as u32));
            }
            return true;
        }
        let p = self.partner[e] as usize;
        !self.complete(p) || self.acc[p] == acc
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::State(e, pos, acc) => {
                    self.pos[e as usize] = pos;
                    self.acc[e as usize] = acc;
                }
                Trail::Watch(cell) => {
                    self.watch[cell as usize].pop();
                }
            }
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u8 {
        self.table[a * self.n + b]
    }

    /// Associativity on every fully known triple involving cell `(a, b)`.
    fn associative_at(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let v = self.get(a, b) as usize;
        for z in 0..n {
            // (ab)z = a(bz)
            let (l, bz) = (self.get(v, z), self.get(b, z));
            if l != UNSET && bz != UNSET {
                let r = self.get(a, bz as usize);
                if r != UNSET && r != l {
                    return false;
                }
            }
            // (za)b = z(ab)
            let (za, r) = (self.get(z, a), self.get(z, v));
            if za != UNSET && r != UNSET {
                let l = self.get(za as usize, b);
                if l != UNSET && l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                // (xy)b with xy = a, against x(yb)
                if xy as usize == a {
                    let yb = self.get(y, b);
                    if yb != UNSET {
                        let r = self.get(x, yb as usize);
                        if r != UNSET && r as usize != v {
                            return false;
                        }
                    }
                }
                // a(xy) with xy = b, against (ax)y
                if xy as usize == b {
                    let ax = self.get(a, x);
                    if ax != UNSET {
                        let l = self.get(ax as usize, y);
                        if l != UNSET && l as usize != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn out_of_budget(&self) -> bool {
        if self.nodes >= self.node_budget {
            return true;
        }
        if self.nodes % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                return Instant::now() >= deadline;
            }
        }
        false
    }

    fn dfs(&mut self, cell: usize, mentioned: usize, leaf: &mut dyn FnMut(&[u8]) -> bool) -> Flow {
        let n = self.n;
        if cell == n * n {
            return if leaf(&self.table) { Flow::Stop } else { Flow::Continue };
        }
        let (a, b) = (cell / n, cell % n);
        let m = mentioned.max(a).max(b);
        let top = (m + 1).min(n - 1);
        for v in 0..=top {
            self.nodes += 1;
            if self.out_of_budget() {
                return Flow::OutOfBudget;
            }
            self.table[cell] = v as u8;
            if self.associative_at(a, b) {
                let mark = self.trail.len();
                let waiting = std::mem::take(&mut self.watch[cell]);
                let ok = waiting.iter().all(|&e| self.run(e as usize, true));
                // the list is restored before undo pops appended entries
                debug_assert!(self.watch[cell].is_empty());
                self.watch[cell] = waiting;
                if ok {
                    let flow = self.dfs(cell + 1, m.max(v), leaf);
                    if flow != Flow::Continue {
                        self.undo(mark);
                        self.table[cell] = UNSET;
                        return flow;
                    }
                }
                self.undo(mark);
            }
            self.table[cell] = UNSET;
        }
        Flow::Continue
    }
}

fn table_to_semigroup(n: usize, table: &[u8]) -> FiniteSemigroup {
    FiniteSemigroup::from_flat_unchecked(n, table.iter().map(|&v| v as usize).collect())
}

/// Runs the search at one order, calling `leaf` on every admissible table
/// until it returns true.
fn search_order(
    n: usize,
    axioms: &[Identity],
    node_budget: u64,
    time: Option<Duration>,
    leaf: &mut dyn FnMut(&[u8]) -> bool,
) -> Result<(Flow, u64), ModelError> {
    let deadline = time.map(|t| Instant::now() + t);
    let mut search = Search::new(n, axioms, node_budget, deadline)?;
    if !search.initialise() {
        return Ok((Flow::Continue, 0));
    }
    let flow = search.dfs(0, 0, leaf);
    Ok((flow, search.nodes))
}

/// First model, in order of size and then table order, that satisfies the
/// axioms and falsifies the goal.
pub fn find_model(spec: &SearchSpec) -> Result<SearchReport, ModelError> {
    spec.validate()?;
    let mut outcomes = Vec::new();
    for n in spec.min_order..=spec.max_order {
        let start = Instant::now();
        let mut found: Option<Model> = None;
        let mut leaf = |table: &[u8]| {
            let s = table_to_semigroup(n, table);
            debug_assert!(s.is_associative());
            match &spec.falsify {
                None => {
                    found = Some(Model { semigroup: s, witness: None });
                    true
                }
                Some(goal) => {
                    let limits = SweepLimits { letter_bound: 26, budget: u64::MAX };
                    match find_counterexample_with(&s, goal, limits).expect("unbounded sweep") {
                        Some(witness) => {
                            found = Some(Model { semigroup: s, witness: Some(witness) });
                            true
                        }
                        None => false,
                    }
                }
            }
        };
        let (flow, nodes) = search_order(n, &spec.axioms, spec.node_budget, spec.time_budget, &mut leaf)?;
        let status = match flow {
            Flow::Stop => OrderStatus::Found,
            Flow::Continue => OrderStatus::Absent,
            Flow::OutOfBudget => OrderStatus::BudgetExhausted,
        };
        outcomes.push(OrderOutcome { order: n, status, nodes, elapsed_ms: start.elapsed().as_millis() });
        if let Some(model) = found {
            return Ok(SearchReport { model: Some(model.with_name(n)), outcomes });
        }
    }
    Ok(SearchReport { model: None, outcomes })
}

impl Model {
    fn with_name(mut self, n: usize) -> Self {
        self.semigroup = self.semigroup.with_name(format!("model-{n}"));
        self
    }
}

/// Cheap isomorphism invariants used to bucket candidates.
fn invariants(s: &FiniteSemigroup) -> (usize, bool, Vec<(usize, usize)>, Vec<usize>) {
    let mut types: Vec<(usize, usize)> = s.elements().map(|x| s.monogenic_type(x)).collect();
    types.sort_unstable();
    let mut image_sizes: Vec<usize> = s
        .elements()
        .map(|x| {
            let mut row: Vec<usize> = s.elements().map(|y| s.mul(x, y)).collect();
            row.sort_unstable();
            row.dedup();
            row.len()
        })
        .collect();
    image_sizes.sort_unstable();
    (s.idempotents().len(), s.is_commutative(), types, image_sizes)
}

/// All semigroups of the given order satisfying the axioms, one per
/// isomorphism class. Each is the least table of its class in row-major
/// order, and classes are listed by that table.
pub fn enumerate_models(order: usize, axioms: &[Identity]) -> Result<Vec<FiniteSemigroup>, ModelError> {
    enumerate_models_with_budget(order, axioms, DEFAULT_SEARCH_NODES)
}

pub fn enumerate_models_with_budget(order: usize, axioms: &[Identity], node_budget: u64) -> Result<Vec<FiniteSemigroup>, ModelError> {
    if order < 1 || order > MAX_ORDER {
        return Err(ModelError::Orders { min: order, max: order });
    }
    let mut classes: Vec<FiniteSemigroup> = Vec::new();
    let mut buckets: HashMap<(usize, bool, Vec<(usize, usize)>, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut leaf = |table: &[u8]| {
        let s = table_to_semigroup(order, table);
        let bucket = buckets.entry(invariants(&s)).or_default();
        let known = bucket
            .iter()
            .any(|&i| find_isomorphism(&classes[i], &s).expect("small orders stay within budget").is_some());
        if !known {
            bucket.push(classes.len());
            classes.push(s);
        }
        false
    };
    let (flow, nodes) = search_order(order, axioms, node_budget, None, &mut leaf)?;
    if flow == Flow::OutOfBudget {
        return Err(ModelError::BudgetExhausted { order, nodes });
    }
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.with_name(format!("S{order}.{}", i + 1)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{is_isomorphic, validate_associative};
    use crate::words::satisfies;

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_sizes_match_known_counts() {
        assert_eq!(enumerate_models(1, &[]).unwrap().len(), 1);
        assert_eq!(enumerate_models(2, &[]).unwrap().len(), 5);
        assert_eq!(enumerate_models(3, &[]).unwrap().len(), 24);
    }

    #[test]
    fn order_two_matches_naive_filter() {
        let mut naive: Vec<FiniteSemigroup> = Vec::new();
        for code in 0..16usize {
            let rows = vec![vec![code >> 3 & 1, code >> 2 & 1], vec![code >> 1 & 1, code & 1]];
            if let Ok(s) = validate_associative(&rows) {
                if !naive.iter().any(|t| is_isomorphic(t, &s).unwrap()) {
                    naive.push(s);
                }
            }
        }
        let found = enumerate_models(2, &[]).unwrap();
        assert_eq!(found.len(), naive.len());
        for s in &naive {
            assert_eq!(found.iter().filter(|t| is_isomorphic(t, s).unwrap()).count(), 1);
        }
    }

    #[test]
    fn commutative_order_two() {
        assert_eq!(enumerate_models(2, &[id("xy=yx")]).unwrap().len(), 3);
    }

    #[test]
    fn left_zero_is_the_first_noncommutative_model() {
        let report = find_model(&SearchSpec::new(vec![], Some(id("xy=yx")), 1..=2)).unwrap();
        let model = report.model.unwrap();
        assert_eq!(model.semigroup.rows(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(report.outcomes[0].status, OrderStatus::Absent);
        assert!(model.witness.is_some());
    }

    #[test]
    fn unfalsifiable_goal_is_proven_absent() {
        let report = find_model(&SearchSpec::new(vec![id("x=x")], Some(id("x=x")), 1..=3)).unwrap();
        assert!(report.model.is_none());
        assert!(report.outcomes.iter().all(|o| o.status == OrderStatus::Absent));
        assert!(!report.budget_exhausted());
    }

    #[test]
    fn tiny_node_budget_is_reported() {
        let spec = SearchSpec::new(vec![], Some(id("xy=yx")), 3..=3).with_nodes(1);
        let report = find_model(&spec).unwrap();
        assert!(report.budget_exhausted());
    }

    #[test]
    fn axioms_prune_soundly() {
        // every band of order 3, found by filtering the full catalog
        let bands = enumerate_models(3, &[id("x^2=x")]).unwrap();
        let filtered: Vec<_> =
            enumerate_models(3, &[]).unwrap().into_iter().filter(|s| satisfies(s, &id("x^2=x")).unwrap()).collect();
        assert_eq!(bands.len(), filtered.len());
        assert!(bands.iter().all(|s| satisfies(s, &id("x^2=x")).unwrap()));
    }

    #[test]
    fn order_validation() {
        assert!(find_model(&SearchSpec::new(vec![], None, 0..=2)).is_err());
        assert!(find_model(&SearchSpec::new(vec![], None, 3..=2)).is_err());
        assert!(find_model(&SearchSpec::new(vec![], None, 1..=11)).is_err());
    }
}
