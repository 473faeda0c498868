//! Scripted re-verification of the results this workspace reproduces.
//!
//! Each registered check runs a fixed pipeline on top of `semiwb` and
//! returns a [`CheckReport`] carrying the evidence it collected. Failing
//! reports always list the concrete witnesses that broke the claim.

mod checks;
mod search;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use semiwb::catalog::CatalogError;
use semiwb::free::FreeError;
use semiwb::lattice::LatticeError;
use semiwb::model::ModelError;
use semiwb::rewrite::RewriteError;
use semiwb::{SemigroupError, WordError};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    /// The statement being re-verified.
    pub claim: String,
    pub witnesses: Value,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Skips the long model searches.
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}; expected quick or full")),
        }
    }
}

/// Budgets for one run.
#[derive(Clone, Debug)]
pub struct Options {
    pub profile: Profile,
    /// Wall clock allowed for each model search at a single order.
    pub order_time: Duration,
    /// Wall clock allowed for one search case across all its orders.
    pub case_time: Duration,
}

impl Options {
    pub fn quick() -> Self {
        Options { profile: Profile::Quick, order_time: Duration::from_secs(60), case_time: Duration::from_secs(5) }
    }

    pub fn full() -> Self {
        Options { profile: Profile::Full, order_time: Duration::from_secs(60), case_time: Duration::from_secs(120) }
    }

    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Quick => Options::quick(),
            Profile::Full => Options::full(),
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A registered check.
pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    /// Long-running searches; left out of quick runs.
    pub heavy: bool,
    run: fn(&Options) -> Result<Findings, VerifyError>,
}

/// Evidence gathered while a check runs.
#[derive(Default)]
pub(crate) struct Findings {
    evidence: Map<String, Value>,
    failures: Vec<Value>,
    exhausted: Vec<Value>,
}

impl Findings {
    pub(crate) fn record(&mut self, key: &str, value: impl Serialize) {
        self.evidence.insert(key.to_string(), serde_json::to_value(value).expect("evidence serialises"));
    }

    /// Notes a failure unless `ok`; the witness is built only when needed.
    pub(crate) fn require(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        if !ok {
            self.failures.push(witness());
        }
        ok
    }

    pub(crate) fn fail(&mut self, witness: Value) {
        self.failures.push(witness);
    }

    pub(crate) fn exhausted(&mut self, what: Value) {
        self.exhausted.push(what);
    }

    fn finish(mut self) -> (Status, Value) {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.exhausted.is_empty() {
            Status::BudgetExhausted
        } else {
            Status::Pass
        };
        if !self.failures.is_empty() {
            self.evidence.insert("failures".into(), Value::Array(self.failures));
        }
        if !self.exhausted.is_empty() {
            self.evidence.insert("budget_exhausted".into(), Value::Array(self.exhausted));
        }
        (status, Value::Object(self.evidence))
    }
}

pub fn registry() -> &'static [Check] {
    &checks::REGISTRY
}

pub fn find_check(id: &str) -> Result<&'static Check, VerifyError> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

/// Runs one check by id.
pub fn verify(id: &str, options: &Options) -> Result<CheckReport, VerifyError> {
    let check = find_check(id)?;
    let start = Instant::now();
    let (status, witnesses) = (check.run)(options)?.finish();
    Ok(CheckReport {
        id: check.id.to_string(),
        status,
        claim: check.claim.to_string(),
        witnesses,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs every check the profile covers, in registry order. A check that
/// errors out is reported as failing with the error as its witness.
pub fn run_all(options: &Options) -> Vec<CheckReport> {
    registry()
        .iter()
        .filter(|c| options.profile == Profile::Full || !c.heavy)
        .map(|c| {
            let start = Instant::now();
            verify(c.id, options).unwrap_or_else(|e| CheckReport {
                id: c.id.to_string(),
                status: Status::Fail,
                claim: c.claim.to_string(),
                witnesses: serde_json::json!({ "failures": [{ "error": e.to_string() }] }),
                elapsed_ms: start.elapsed().as_millis(),
            })
        })
        .collect()
}

/// 0 when everything passed, 1 on any failure, 2 when the only shortfall is
/// exhausted budgets.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::BudgetExhausted) {
        2
    } else {
        0
    }
}
