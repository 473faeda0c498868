//! Computational toolkit for finite semigroups and their equational theories.
//!
//! The crate is organised by subsystem:
//!
//! * [`semigroup`]: multiplication tables, subsemigroups, products, Rees
//!   quotients, congruences, homomorphism search, division, lifting.
//! * [`words`]: words, identities, substitutions and brute-force identity
//!   checking.
//! * [`rewrite`]: normal forms for `xyx=xyy`, its mirror `xyx=yyx`, and the
//!   canonical forms for `xyx=yxy`.
//! * [`free`]: relatively free nilpotent semigroups and fully invariant
//!   quotients.
//! * [`model`]: backtracking search for finite models of identities.
//! * [`lattice`]: finite lattices, irreducibility and adjunction checks.
//! * [`avoid`]: Zimin words, pattern encounters and square-free words.
//! * [`catalog`]: bundled fixture semigroups and presentation checks.

pub mod avoid;
pub mod catalog;
pub mod free;
pub mod lattice;
pub mod model;
pub mod rewrite;
pub mod semigroup;
pub mod words;

pub use semigroup::{Congruence, ElementMap, FiniteSemigroup, SemigroupError};
pub use words::{Evaluation, Identity, Letter, Word, WordError};

/// Default cap on candidate extensions in exhaustive searches.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
