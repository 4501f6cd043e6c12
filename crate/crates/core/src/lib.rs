//! Digit-based divisibility criteria for any divisor in any radix.
//!
//! A divisor `n` in base `t` is characterised by a pair of integers `(w, u)`
//! with `w·t − u = q·n` for some nonzero multiplier `q`. The pair yields
//!
//! * a restricted rule `R = u·B + w·b`, where `A = t·B + b` splits the test
//!   number into its leading part and its units digit, and
//! * a general criterion `C = Σ u^k · w^(m−k) · a_k` that is linear in every
//!   digit of the test number at once.
//!
//! The crate derives such pairs, applies them, classifies whether a rule is a
//! genuine equivalence or only a one-way implication, and audits rule tables
//! against a direct modulo oracle.

pub mod cli;
mod error;
pub mod numeral;
pub mod params;
pub mod rules;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use numeral::Numeral;
pub use params::{ParameterSet, SoundnessClass};
pub use rules::{GdcForm, ReductionTrace, Termination};
pub use tables::{FindingKind, RuleRow, TableAuditFinding};
pub use verify::{EquivalenceReport, Method};
