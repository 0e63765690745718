//! Workbench for proof-theoretic bookkeeping at desk scale.
//!
//! The crate provides:
//!
//! * two ordinal notation systems with decidable comparison — a theta-style
//!   system over `{0, Omega, +, theta}` ([`theta`]) and a Buchholz-style
//!   psi-system with `H`-operators ([`psi`]) — both validated against an
//!   independent Cantor-normal-form arithmetic below epsilon_0 ([`cnf`]);
//! * a first-order formula AST with fixpoint atoms, polarity analysis,
//!   hierarchy classifiers and degree computation ([`formula`]);
//! * finite-universe least-fixpoint semantics: stages, inductive norms and
//!   accessible parts ([`lfp`]);
//! * a proof checker for three one-sided sequent calculi for fragments of
//!   inductive-definition theories ([`sequent`]);
//! * a checker for operator-controlled derivation certificates with ordinal
//!   and degree bookkeeping, and the positive-occurrence stage-bounding
//!   transform ([`controlled`]);
//! * decorated ground resolution: clause families, the recursive refutation
//!   construction, a decoration checker and a brute-force search oracle
//!   ([`resolve`]);
//! * the `ordcalc` command-line interface ([`cli`]).

pub mod cli;
pub mod cnf;
pub mod controlled;
pub mod formula;
pub mod lfp;
pub mod psi;
pub mod resolve;
pub mod sequent;
pub mod sexpr;
pub mod theta;

/// Result of a three-way comparison, re-exported for convenience.
pub use std::cmp::Ordering;

/// A located diagnostic produced by a validator or checker.
///
/// `path` addresses a node in a term or proof tree: indices separated by
/// dots, the empty string for the root.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { path: path.into(), message: message.into() }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "at root: {}", self.message)
        } else {
            write!(f, "at {}: {}", self.path, self.message)
        }
    }
}

/// Report type shared by the checkers: empty means accepted.
pub type Report = Vec<Diagnostic>;

pub(crate) fn push_diag(report: &mut Report, path: &[usize], message: impl Into<String>) {
    let path = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
    report.push(Diagnostic { path, message: message.into() });
}
