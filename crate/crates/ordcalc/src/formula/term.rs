//! First-order terms over the fixed arithmetic signature
//! `{0, S, +, *, 2^x, p0, p1}` with variables and numerals.
//!
//! `p0`, `p1` are the inverses of the Cantor pairing function
//! `<x,y> = (x+y)(x+y+1)/2 + x`, which is surjective, so every number codes
//! a pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    Num { value: u64 },
    Var { name: String },
    Succ { arg: Box<Term> },
    Add { lhs: Box<Term>, rhs: Box<Term> },
    Mul { lhs: Box<Term>, rhs: Box<Term> },
    /// `2^arg`.
    Exp2 { arg: Box<Term> },
    /// First inverse of the pairing function.
    Pair0 { arg: Box<Term> },
    /// Second inverse of the pairing function.
    Pair1 { arg: Box<Term> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("arithmetic overflow while evaluating a term")]
    Overflow,
    #[error("formula is not decidable by evaluation: {0}")]
    Undecidable(String),
}

pub fn num(value: u64) -> Term {
    Term::Num { value }
}

pub fn var(name: &str) -> Term {
    Term::Var { name: name.into() }
}

pub fn succ(arg: Term) -> Term {
    Term::Succ { arg: Box::new(arg) }
}

pub fn add(lhs: Term, rhs: Term) -> Term {
    Term::Add { lhs: Box::new(lhs), rhs: Box::new(rhs) }
}

pub fn mul(lhs: Term, rhs: Term) -> Term {
    Term::Mul { lhs: Box::new(lhs), rhs: Box::new(rhs) }
}

pub fn exp2(arg: Term) -> Term {
    Term::Exp2 { arg: Box::new(arg) }
}

pub fn pair0(arg: Term) -> Term {
    Term::Pair0 { arg: Box::new(arg) }
}

pub fn pair1(arg: Term) -> Term {
    Term::Pair1 { arg: Box::new(arg) }
}

/// Cantor unpairing: the unique `(x, y)` with `(x+y)(x+y+1)/2 + x = w`.
pub fn unpair(w: u64) -> (u64, u64) {
    let mut s = 0u64;
    while (s + 1) * (s + 2) / 2 <= w {
        s += 1;
    }
    let base = s * (s + 1) / 2;
    let x = w - base;
    (x, s - x)
}

/// Cantor pairing `<x, y>`.
pub fn pair(x: u64, y: u64) -> u64 {
    (x + y) * (x + y + 1) / 2 + x
}

impl Term {
    pub fn eval(&self, env: &BTreeMap<String, u64>) -> Result<u64, EvalError> {
        match self {
            Term::Num { value } => Ok(*value),
            Term::Var { name } => {
                env.get(name).copied().ok_or_else(|| EvalError::UnboundVar(name.clone()))
            }
            Term::Succ { arg } => arg.eval(env)?.checked_add(1).ok_or(EvalError::Overflow),
            Term::Add { lhs, rhs } => {
                lhs.eval(env)?.checked_add(rhs.eval(env)?).ok_or(EvalError::Overflow)
            }
            Term::Mul { lhs, rhs } => {
                lhs.eval(env)?.checked_mul(rhs.eval(env)?).ok_or(EvalError::Overflow)
            }
            Term::Exp2 { arg } => {
                let e = arg.eval(env)?;
                if e >= 64 {
                    return Err(EvalError::Overflow);
                }
                Ok(1u64 << e)
            }
            Term::Pair0 { arg } => Ok(unpair(arg.eval(env)?).0),
            Term::Pair1 { arg } => Ok(unpair(arg.eval(env)?).1),
        }
    }

    pub fn eval_closed(&self) -> Result<u64, EvalError> {
        self.eval(&BTreeMap::new())
    }

    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Term::Num { .. } => {}
            Term::Var { name } => {
                out.insert(name.clone());
            }
            Term::Succ { arg } | Term::Exp2 { arg } | Term::Pair0 { arg } | Term::Pair1 { arg } => {
                arg.collect_vars(out)
            }
            Term::Add { lhs, rhs } | Term::Mul { lhs, rhs } => {
                lhs.collect_vars(out);
                rhs.collect_vars(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Substitutes `value` for the variable `name`.
    pub fn subst(&self, name: &str, value: &Term) -> Term {
        match self {
            Term::Num { .. } => self.clone(),
            Term::Var { name: n } => {
                if n == name {
                    value.clone()
                } else {
                    self.clone()
                }
            }
            Term::Succ { arg } => succ(arg.subst(name, value)),
            Term::Exp2 { arg } => exp2(arg.subst(name, value)),
            Term::Pair0 { arg } => pair0(arg.subst(name, value)),
            Term::Pair1 { arg } => pair1(arg.subst(name, value)),
            Term::Add { lhs, rhs } => add(lhs.subst(name, value), rhs.subst(name, value)),
            Term::Mul { lhs, rhs } => mul(lhs.subst(name, value), rhs.subst(name, value)),
        }
    }

    /// Replaces every closed subterm by its numeral.
    pub fn normalize_closed(&self) -> Result<Term, EvalError> {
        if self.is_closed() {
            return Ok(num(self.eval_closed()?));
        }
        Ok(match self {
            Term::Num { .. } | Term::Var { .. } => self.clone(),
            Term::Succ { arg } => succ(arg.normalize_closed()?),
            Term::Exp2 { arg } => exp2(arg.normalize_closed()?),
            Term::Pair0 { arg } => pair0(arg.normalize_closed()?),
            Term::Pair1 { arg } => pair1(arg.normalize_closed()?),
            Term::Add { lhs, rhs } => add(lhs.normalize_closed()?, rhs.normalize_closed()?),
            Term::Mul { lhs, rhs } => mul(lhs.normalize_closed()?, rhs.normalize_closed()?),
        })
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Num { value } => write!(f, "{value}"),
            Term::Var { name } => write!(f, "{name}"),
            Term::Succ { arg } => write!(f, "S({arg})"),
            Term::Add { lhs, rhs } => write!(f, "({lhs}+{rhs})"),
            Term::Mul { lhs, rhs } => write!(f, "({lhs}*{rhs})"),
            Term::Exp2 { arg } => write!(f, "2^({arg})"),
            Term::Pair0 { arg } => write!(f, "p0({arg})"),
            Term::Pair1 { arg } => write!(f, "p1({arg})"),
        }
    }
}
