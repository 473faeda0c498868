//! Model searches with a per-case deadline, verified after the fact.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use semiwb::model::{find_model, Model, OrderOutcome, OrderStatus, SearchSpec};
use semiwb::words::{evaluate, find_counterexample, satisfies_all};
use semiwb::Identity;
use serde::Serialize;

use crate::{Options, VerifyError};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub(crate) enum CaseResult {
    Found { model: Model, verified: bool },
    /// Every order in range was exhausted.
    Absent,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub(crate) struct Case {
    pub satisfy: Vec<Identity>,
    pub falsify: Identity,
    pub result: CaseResult,
    pub orders: Vec<OrderOutcome>,
    pub elapsed_ms: u128,
}

/// Searches orders one at a time, stopping at the first model or when the
/// case deadline passes.
pub(crate) fn run_case(
    satisfy: Vec<Identity>,
    falsify: Identity,
    orders: RangeInclusive<usize>,
    options: &Options,
) -> Result<Case, VerifyError> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut result = CaseResult::Absent;
    for n in orders {
        let remaining = options.case_time.saturating_sub(start.elapsed());
        if remaining == Duration::ZERO {
            result = CaseResult::BudgetExhausted;
            break;
        }
        let spec = SearchSpec::new(satisfy.clone(), Some(falsify.clone()), n..=n)
            .with_time(Some(remaining.min(options.order_time)));
        let report = find_model(&spec)?;
        outcomes.extend(report.outcomes);
        if let Some(model) = report.model {
            let verified = verify_model(&model, &satisfy, &falsify)?;
            result = CaseResult::Found { model, verified };
            break;
        }
        if outcomes.last().is_some_and(|o| o.status == OrderStatus::BudgetExhausted) {
            result = CaseResult::BudgetExhausted;
            break;
        }
    }
    Ok(Case { satisfy, falsify, result, orders: outcomes, elapsed_ms: start.elapsed().as_millis() })
}

/// Independent re-check: associativity, every axiom by full sweep, and the
/// attached witness really separates the goal.
fn verify_model(model: &Model, satisfy: &[Identity], falsify: &Identity) -> Result<bool, VerifyError> {
    let s = &model.semigroup;
    if !s.is_associative() || !satisfies_all(s, satisfy)? {
        return Ok(false);
    }
    let Some(theta) = &model.witness else { return Ok(false) };
    let separated = evaluate(s, &falsify.lhs, theta)? != evaluate(s, &falsify.rhs, theta)?;
    Ok(separated && find_counterexample(s, falsify)?.is_some())
}
