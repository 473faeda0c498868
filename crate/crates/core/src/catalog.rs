//! Bundled semigroups, the presentation of C, and the A₀ identity oracle.
//!
//! Tables live in `fixtures/` as semigroup JSON and are embedded at
//! compile time, so the files and these constructors cannot drift apart.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{self, ModelError};
use crate::semigroup::{subsemigroup_generated, FiniteSemigroup};
use crate::words::{self, connected_decomposition, Evaluation, Letter, Word};

/// `(file name, JSON)` for every bundled fixture.
pub const FIXTURES: [(&str, &str); 12] = [
    ("B.json", include_str!("../fixtures/B.json")),
    ("C.json", include_str!("../fixtures/C.json")),
    ("A0.json", include_str!("../fixtures/A0.json")),
    ("N2.json", include_str!("../fixtures/N2.json")),
    ("U1.json", include_str!("../fixtures/U1.json")),
    ("L2.json", include_str!("../fixtures/L2.json")),
    ("R2.json", include_str!("../fixtures/R2.json")),
    ("Z2.json", include_str!("../fixtures/Z2.json")),
    ("Z3.json", include_str!("../fixtures/Z3.json")),
    ("Z4.json", include_str!("../fixtures/Z4.json")),
    ("MONO_2_2.json", include_str!("../fixtures/MONO_2_2.json")),
    ("NIL3.json", include_str!("../fixtures/NIL3.json")),
];

pub const MANIFEST: &str = include_str!("../fixtures/manifest.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no fixture named {0}")]
    UnknownFixture(String),
    #[error("generators {0:?} do not generate the target")]
    NotGenerating(Vec<usize>),
    #[error("presentation has {letters} generators but {images} images")]
    GeneratorCount { letters: usize, images: usize },
    #[error(transparent)]
    Word(#[from] words::WordError),
}

pub fn manifest() -> Vec<ManifestEntry> {
    serde_json::from_str(MANIFEST).expect("bundled manifest parses")
}

/// Loads a bundled fixture by name (`"B"`, `"MONO_2_2"`, …).
pub fn fixture(name: &str) -> Result<FiniteSemigroup, CatalogError> {
    let file = format!("{name}.json");
    FIXTURES
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, text)| serde_json::from_str(text).expect("bundled fixtures are valid semigroups"))
        .ok_or_else(|| CatalogError::UnknownFixture(name.to_string()))
}

fn bundled(name: &str) -> FiniteSemigroup {
    fixture(name).expect("fixture is bundled")
}

/// The 11-element generator for xyx=xyy.
pub fn table_b() -> FiniteSemigroup {
    bundled("B")
}

/// The 11-element generator for xyx=yxy.
pub fn table_c() -> FiniteSemigroup {
    bundled("C")
}

/// `A₀` as the subsemigroup `{0, 1, 3, 5}` of C, relabelled `0, 1, 2, 3`.
/// Abstractly it is `{e, f, ef, 0}` with `e, f` idempotent and `fe = 0`.
pub fn a0() -> FiniteSemigroup {
    bundled("A0")
}

/// The null semigroup `{0, n}` with `n² = 0`.
pub fn n2() -> FiniteSemigroup {
    bundled("N2")
}

/// The semilattice `{0, 1}`.
pub fn u1() -> FiniteSemigroup {
    bundled("U1")
}

/// Two-element left-zero semigroup `2^l`.
pub fn l2() -> FiniteSemigroup {
    bundled("L2")
}

/// Two-element right-zero semigroup `2^r`.
pub fn r2() -> FiniteSemigroup {
    bundled("R2")
}

pub fn z4() -> FiniteSemigroup {
    bundled("Z4")
}

/// `⟨y | y² = y⁴⟩`; element `i` is `y^(i+1)`.
pub fn mono_2_2() -> FiniteSemigroup {
    bundled("MONO_2_2")
}

/// `⟨x | x³ = 0⟩` on `0, x, x²`.
pub fn nil3() -> FiniteSemigroup {
    bundled("NIL3")
}

/// The cyclic group of order `n ≥ 1` under addition mod `n`.
pub fn z(n: usize) -> FiniteSemigroup {
    assert!(n >= 1, "cyclic groups need n >= 1");
    FiniteSemigroup::from_fn(n, |a, b| (a + b) % n).expect("addition mod n is associative").with_name(format!("Z{n}"))
}

/// `⟨x | x^index = x^(index+period)⟩`; element `i` is `x^(i+1)`.
pub fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
    assert!(index >= 1 && period >= 1, "index and period must be positive");
    let n = index + period - 1;
    let reduce = |e: usize| if e < index + period { e } else { index + (e - index) % period };
    FiniteSemigroup::from_fn(n, |a, b| reduce(a + b + 2) - 1)
        .expect("monogenic tables are associative")
        .with_name(format!("M({index},{period})"))
}

/// Universe for lift and projectivity checks: `Z4` and `⟨y|y²=y⁴⟩`,
/// then one semigroup per isomorphism class of order 1 to 4.
pub fn lifting_universe() -> Result<Vec<FiniteSemigroup>, ModelError> {
    static UNIVERSE: OnceLock<Vec<FiniteSemigroup>> = OnceLock::new();
    if let Some(u) = UNIVERSE.get() {
        return Ok(u.clone());
    }
    let mut universe = vec![z4(), mono_2_2()];
    for order in 1..=4 {
        universe.extend(model::enumerate_models(order, &[])?);
    }
    Ok(UNIVERSE.get_or_init(|| universe).clone())
}

/// A relation of a presentation; `rhs: None` means the relator equals zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCheck {
    pub generators: Vec<Letter>,
    pub relations: Vec<Relation>,
    pub claimed_elements: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub relations: Vec<RelationOutcome>,
    /// Values of the claimed words, in list order.
    pub values: Vec<usize>,
    pub distinct: bool,
    pub exhaustive: bool,
    /// Whether the `i`-th word evaluates to element `i`.
    pub positional: bool,
}

impl PresentationReport {
    pub fn passes(&self) -> bool {
        self.relations.iter().all(|r| r.holds) && self.distinct && self.exhaustive
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("literal word")
}

/// `⟨a,b,c | aa=a, b⁴=0, cc=c, ba=cb=ca=abc=0, ab³=b³=b³c=ac⟩` with the
/// eleven representatives of C in table order.
pub fn presentation_of_c() -> PresentationCheck {
    let eq = |l: &str, r: &str| Relation { lhs: w(l), rhs: Some(w(r)) };
    let zero = |l: &str| Relation { lhs: w(l), rhs: None };
    PresentationCheck {
        generators: vec![0, 1, 2],
        relations: vec![
            eq("aa", "a"),
            zero("b^4"),
            eq("cc", "c"),
            zero("ba"),
            zero("cb"),
            zero("ca"),
            zero("abc"),
            eq("ab^3", "b^3"),
            eq("b^3", "b^3c"),
            eq("b^3c", "ac"),
        ],
        claimed_elements: ["abc", "a", "b", "c", "bb", "bbb", "ab", "abb", "bc", "bbc", "abbc"].into_iter().map(w).collect(),
    }
}

pub fn verify_presentation(
    target: &FiniteSemigroup,
    gens: &[usize],
    pc: &PresentationCheck,
) -> Result<PresentationReport, CatalogError> {
    if gens.len() != pc.generators.len() {
        return Err(CatalogError::GeneratorCount { letters: pc.generators.len(), images: gens.len() });
    }
    let generated = subsemigroup_generated(target, gens).map_err(|_| CatalogError::NotGenerating(gens.to_vec()))?;
    if generated.elements.len() != target.order() {
        return Err(CatalogError::NotGenerating(gens.to_vec()));
    }
    let theta = Evaluation::from_pairs(pc.generators.iter().copied().zip(gens.iter().copied()));
    let zero = target.zero();
    let mut relations = Vec::new();
    for r in &pc.relations {
        let left = words::evaluate(target, &r.lhs, &theta)?;
        let (holds, shown) = match &r.rhs {
            Some(rhs) => (left == words::evaluate(target, rhs, &theta)?, format!("{}={}", r.lhs, rhs)),
            None => (Some(left) == zero, format!("{}=0", r.lhs)),
        };
        relations.push(RelationOutcome { relation: shown, holds });
    }
    let values =
        pc.claimed_elements.iter().map(|c| words::evaluate(target, c, &theta)).collect::<Result<Vec<_>, _>>()?;
    let set: BTreeSet<usize> = values.iter().copied().collect();
    Ok(PresentationReport {
        relations,
        distinct: set.len() == values.len(),
        exhaustive: set.len() == target.order(),
        positional: values.iter().enumerate().all(|(i, &v)| i == v),
        values,
    })
}

/// Lee's criterion for `A₀ ⊨ u = v`: the connected decompositions have the
/// same number of blocks, singleton blocks agree letter for letter, and
/// connected blocks agree in content.
pub fn a0_identity_oracle(u: &Word, v: &Word) -> bool {
    let (bu, bv) = (connected_decomposition(u), connected_decomposition(v));
    bu.len() == bv.len()
        && bu.iter().zip(&bv).all(|(x, y)| {
            if !x.connected || !y.connected {
                x.word == y.word
            } else {
                x.word.content() == y.word.content()
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::is_isomorphic;

    #[test]
    fn fixtures_load_and_match_constructors() {
        for entry in manifest() {
            let s = fixture(&entry.name).unwrap();
            assert_eq!(s.name(), Some(entry.name.as_str()));
        }
        assert_eq!(table_b().order(), 11);
        assert_eq!(z(4), z4());
        assert_eq!(monogenic(2, 2), mono_2_2());
        assert_eq!(fixture("Z3").unwrap(), z(3));
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn a0_is_generated_in_c() {
        let sub = subsemigroup_generated(&table_c(), &[1, 3]).unwrap();
        assert_eq!(sub.elements, vec![0, 1, 3, 5]);
        assert!(is_isomorphic(&sub.semigroup, &a0()).unwrap());
    }

    #[test]
    fn presentation_of_c_checks_out() {
        let report = verify_presentation(&table_c(), &[1, 2, 3], &presentation_of_c()).unwrap();
        assert!(report.passes(), "{report:?}");
        assert!(report.positional);
        // a ↦ 2 breaks aa = a since 2·2 = 4
        let wrong = verify_presentation(&table_c(), &[2, 1, 3], &presentation_of_c());
        match wrong {
            Ok(r) => assert!(!r.relations[0].holds),
            Err(e) => panic!("{e}"),
        }
        assert!(verify_presentation(&table_c(), &[1, 3], &presentation_of_c()).is_err());
    }

    #[test]
    fn lee_oracle_examples() {
        assert!(a0_identity_oracle(&w("xyx"), &w("xy^2x")));
        assert!(!a0_identity_oracle(&w("xy"), &w("xz")));
        assert!(a0_identity_oracle(&w("xyzzy"), &w("xyzzy")));
        assert!(!a0_identity_oracle(&w("x"), &w("xx")));
    }
}
