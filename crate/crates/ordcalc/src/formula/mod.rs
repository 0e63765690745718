//! Formulas of the arithmetic language with fixpoint atoms.
//!
//! Formulas are kept in negation normal form: there is no negation node,
//! every atom comes in a complementary pair and [`negate`] is an involution
//! by de Morgan's laws. Fixpoint membership is the atom `I_op^{<stage}(t)`
//! (`positive: true`) or its complement (`positive: false`); the stage is
//! either the top index `Omega` — the least fixed point itself — or a
//! countable ordinal of the psi-system. Operator bodies additionally use
//! the placeholder atoms `X(t)` / `~X(t)` for the set variable.

pub mod classify;
pub mod registry;
pub mod term;
pub mod transform;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::psi::{self, PsiTerm};

pub use classify::{classify, dg, ClassDescriptor, HierarchyMode};
pub use registry::{phi_sigma, AccShape, OperatorDef, Predicate, Registry};
pub use term::{EvalError, Term};
pub use transform::{bound_positive, bound_positive_selected, ground_bounded, to_matrix_form};

/// Stage index of a fixpoint atom: the fixed point itself (`Omega`) or a
/// countable stage given by a psi-term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StageTag {
    Omega,
    Stage(PsiTerm),
}

impl StageTag {
    pub fn from_term(t: PsiTerm) -> StageTag {
        if t == PsiTerm::Omega {
            StageTag::Omega
        } else {
            StageTag::Stage(t)
        }
    }
}

impl Serialize for StageTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            StageTag::Omega => s.serialize_str("Om"),
            StageTag::Stage(t) => s.serialize_str(&psi::to_sexpr(t)),
        }
    }
}

impl<'de> Deserialize<'de> for StageTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        let t = psi::parse_psi(&raw).map_err(serde::de::Error::custom)?;
        Ok(StageTag::from_term(t))
    }
}

impl std::fmt::Display for StageTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StageTag::Omega => write!(f, "Om"),
            StageTag::Stage(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Formula {
    Eq { lhs: Term, rhs: Term },
    Ne { lhs: Term, rhs: Term },
    Lt { lhs: Term, rhs: Term },
    /// `not (lhs < rhs)`.
    Nlt { lhs: Term, rhs: Term },
    /// Fixpoint atom `I_op^{<stage}(arg)` or its complement.
    Fix { op: String, stage: StageTag, positive: bool, arg: Term },
    /// Set-variable atom of an operator body.
    InX { arg: Term },
    NotInX { arg: Term },
    And { lhs: Box<Formula>, rhs: Box<Formula> },
    Or { lhs: Box<Formula>, rhs: Box<Formula> },
    BigAnd { items: Vec<Formula> },
    BigOr { items: Vec<Formula> },
    Exists { var: String, body: Box<Formula> },
    Forall { var: String, body: Box<Formula> },
    ExistsLt { var: String, bound: Term, body: Box<Formula> },
    ForallLt { var: String, bound: Term, body: Box<Formula> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula has free variables: {0:?}")]
    OpenFormula(BTreeSet<String>),
    #[error("quantifier bound is not closed: {0}")]
    OpenBound(Term),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("formula is outside the prenex hierarchy")]
    OutsideHierarchy,
    #[error("operator `{0}` is not registered")]
    UnknownOperator(String),
    #[error("operator `{0}` does not have the accessibility shape")]
    NotAcc(String),
    #[error("{0}")]
    Shape(String),
}

// Convenience constructors.

pub fn eq(lhs: Term, rhs: Term) -> Formula {
    Formula::Eq { lhs, rhs }
}

pub fn ne(lhs: Term, rhs: Term) -> Formula {
    Formula::Ne { lhs, rhs }
}

pub fn lt(lhs: Term, rhs: Term) -> Formula {
    Formula::Lt { lhs, rhs }
}

pub fn nlt(lhs: Term, rhs: Term) -> Formula {
    Formula::Nlt { lhs, rhs }
}

/// `I_op^{<stage}(arg)`.
pub fn fix(op: &str, stage: StageTag, arg: Term) -> Formula {
    Formula::Fix { op: op.into(), stage, positive: true, arg }
}

/// The complement atom.
pub fn cofix(op: &str, stage: StageTag, arg: Term) -> Formula {
    Formula::Fix { op: op.into(), stage, positive: false, arg }
}

pub fn in_x(arg: Term) -> Formula {
    Formula::InX { arg }
}

pub fn and(lhs: Formula, rhs: Formula) -> Formula {
    Formula::And { lhs: Box::new(lhs), rhs: Box::new(rhs) }
}

pub fn or(lhs: Formula, rhs: Formula) -> Formula {
    Formula::Or { lhs: Box::new(lhs), rhs: Box::new(rhs) }
}

pub fn big_and(items: Vec<Formula>) -> Formula {
    Formula::BigAnd { items }
}

pub fn big_or(items: Vec<Formula>) -> Formula {
    Formula::BigOr { items }
}

pub fn exists(var: &str, body: Formula) -> Formula {
    Formula::Exists { var: var.into(), body: Box::new(body) }
}

pub fn forall(var: &str, body: Formula) -> Formula {
    Formula::Forall { var: var.into(), body: Box::new(body) }
}

pub fn exists_lt(var: &str, bound: Term, body: Formula) -> Formula {
    Formula::ExistsLt { var: var.into(), bound, body: Box::new(body) }
}

pub fn forall_lt(var: &str, bound: Term, body: Formula) -> Formula {
    Formula::ForallLt { var: var.into(), bound, body: Box::new(body) }
}

/// `lhs -> rhs`, i.e. `not lhs \/ rhs`.
pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
    or(negate(&lhs), rhs)
}

/// The de Morgan complement; an involution.
pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Eq { lhs, rhs } => Formula::Ne { lhs: lhs.clone(), rhs: rhs.clone() },
        Formula::Ne { lhs, rhs } => Formula::Eq { lhs: lhs.clone(), rhs: rhs.clone() },
        Formula::Lt { lhs, rhs } => Formula::Nlt { lhs: lhs.clone(), rhs: rhs.clone() },
        Formula::Nlt { lhs, rhs } => Formula::Lt { lhs: lhs.clone(), rhs: rhs.clone() },
        Formula::Fix { op, stage, positive, arg } => Formula::Fix {
            op: op.clone(),
            stage: stage.clone(),
            positive: !positive,
            arg: arg.clone(),
        },
        Formula::InX { arg } => Formula::NotInX { arg: arg.clone() },
        Formula::NotInX { arg } => Formula::InX { arg: arg.clone() },
        Formula::And { lhs, rhs } => or(negate(lhs), negate(rhs)),
        Formula::Or { lhs, rhs } => and(negate(lhs), negate(rhs)),
        Formula::BigAnd { items } => Formula::BigOr { items: items.iter().map(negate).collect() },
        Formula::BigOr { items } => Formula::BigAnd { items: items.iter().map(negate).collect() },
        Formula::Exists { var, body } => {
            Formula::Forall { var: var.clone(), body: Box::new(negate(body)) }
        }
        Formula::Forall { var, body } => {
            Formula::Exists { var: var.clone(), body: Box::new(negate(body)) }
        }
        Formula::ExistsLt { var, bound, body } => Formula::ForallLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(negate(body)),
        },
        Formula::ForallLt { var, bound, body } => Formula::ExistsLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(negate(body)),
        },
    }
}

/// Polarity of a fixpoint-predicate family within a formula; only the
/// top-index (`Omega`-stage) atoms count, stage-tagged ones are neutral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Absent,
    PosOnly,
    NegOnly,
    Both,
}

/// Per-family polarity of the `Omega`-stage atoms.
pub fn polarity(f: &Formula) -> BTreeMap<String, Polarity> {
    let mut seen: BTreeMap<String, (bool, bool)> = BTreeMap::new();
    visit_atoms(f, &mut |g| {
        if let Formula::Fix { op, stage: StageTag::Omega, positive, .. } = g {
            let e = seen.entry(op.clone()).or_insert((false, false));
            if *positive {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
    });
    seen.into_iter()
        .map(|(op, (pos, neg))| {
            let p = match (pos, neg) {
                (false, false) => Polarity::Absent,
                (true, false) => Polarity::PosOnly,
                (false, true) => Polarity::NegOnly,
                (true, true) => Polarity::Both,
            };
            (op, p)
        })
        .collect()
}

fn visit_atoms(f: &Formula, visit: &mut impl FnMut(&Formula)) {
    match f {
        Formula::Eq { .. }
        | Formula::Ne { .. }
        | Formula::Lt { .. }
        | Formula::Nlt { .. }
        | Formula::Fix { .. }
        | Formula::InX { .. }
        | Formula::NotInX { .. } => visit(f),
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            visit_atoms(lhs, visit);
            visit_atoms(rhs, visit);
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            for i in items {
                visit_atoms(i, visit);
            }
        }
        Formula::Exists { body, .. }
        | Formula::Forall { body, .. }
        | Formula::ExistsLt { body, .. }
        | Formula::ForallLt { body, .. } => visit_atoms(body, visit),
    }
}

/// No complement fixpoint atom at the top index, and no complement
/// set-variable atom: the formula is positive.
pub fn is_positive(f: &Formula) -> bool {
    let mut ok = true;
    visit_atoms(f, &mut |g| match g {
        Formula::Fix { stage: StageTag::Omega, positive: false, .. } | Formula::NotInX { .. } => {
            ok = false
        }
        _ => {}
    });
    ok
}

/// Dual of [`is_positive`].
pub fn is_negative(f: &Formula) -> bool {
    let mut ok = true;
    visit_atoms(f, &mut |g| match g {
        Formula::Fix { stage: StageTag::Omega, positive: true, .. } | Formula::InX { .. } => {
            ok = false
        }
        _ => {}
    });
    ok
}

/// Does any top-index fixpoint atom occur (either polarity)?
pub fn has_omega_fix(f: &Formula) -> bool {
    let mut found = false;
    visit_atoms(f, &mut |g| {
        if matches!(g, Formula::Fix { stage: StageTag::Omega, .. }) {
            found = true;
        }
    });
    found
}

/// Does a set-variable atom occur (either polarity)?
pub fn has_set_var(f: &Formula) -> bool {
    let mut found = false;
    visit_atoms(f, &mut |g| {
        if matches!(g, Formula::InX { .. } | Formula::NotInX { .. }) {
            found = true;
        }
    });
    found
}

/// The countable stage indices occurring in a formula (the `Omega` index is
/// not a stage).
pub fn stage_tags(f: &Formula) -> BTreeSet<PsiTerm> {
    let mut out = BTreeSet::new();
    visit_atoms(f, &mut |g| {
        if let Formula::Fix { stage: StageTag::Stage(t), .. } = g {
            out.insert(t.clone());
        }
    });
    out
}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(f, &mut Vec::new(), &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
        for v in t.free_vars() {
            if !bound.contains(&v) {
                out.insert(v);
            }
        }
    };
    match f {
        Formula::Eq { lhs, rhs }
        | Formula::Ne { lhs, rhs }
        | Formula::Lt { lhs, rhs }
        | Formula::Nlt { lhs, rhs } => {
            add_term(lhs, bound, out);
            add_term(rhs, bound, out);
        }
        Formula::Fix { arg, .. } | Formula::InX { arg } | Formula::NotInX { arg } => {
            add_term(arg, bound, out)
        }
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            collect_free(lhs, bound, out);
            collect_free(rhs, bound, out);
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            for i in items {
                collect_free(i, bound, out);
            }
        }
        Formula::Exists { var, body } | Formula::Forall { var, body } => {
            bound.push(var.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        Formula::ExistsLt { var, bound: b, body } | Formula::ForallLt { var, bound: b, body } => {
            add_term(b, bound, out);
            bound.push(var.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

pub fn is_closed(f: &Formula) -> bool {
    free_vars(f).is_empty()
}

/// Capture-avoiding substitution of a term for a free variable.
pub fn subst(f: &Formula, name: &str, value: &Term) -> Formula {
    match f {
        Formula::Eq { lhs, rhs } => eq(lhs.subst(name, value), rhs.subst(name, value)),
        Formula::Ne { lhs, rhs } => ne(lhs.subst(name, value), rhs.subst(name, value)),
        Formula::Lt { lhs, rhs } => lt(lhs.subst(name, value), rhs.subst(name, value)),
        Formula::Nlt { lhs, rhs } => nlt(lhs.subst(name, value), rhs.subst(name, value)),
        Formula::Fix { op, stage, positive, arg } => Formula::Fix {
            op: op.clone(),
            stage: stage.clone(),
            positive: *positive,
            arg: arg.subst(name, value),
        },
        Formula::InX { arg } => Formula::InX { arg: arg.subst(name, value) },
        Formula::NotInX { arg } => Formula::NotInX { arg: arg.subst(name, value) },
        Formula::And { lhs, rhs } => and(subst(lhs, name, value), subst(rhs, name, value)),
        Formula::Or { lhs, rhs } => or(subst(lhs, name, value), subst(rhs, name, value)),
        Formula::BigAnd { items } => {
            big_and(items.iter().map(|i| subst(i, name, value)).collect())
        }
        Formula::BigOr { items } => big_or(items.iter().map(|i| subst(i, name, value)).collect()),
        Formula::Exists { var, body } => {
            let (var, body) = subst_under_binder(var, body, None, name, value);
            Formula::Exists { var, body: Box::new(body) }
        }
        Formula::Forall { var, body } => {
            let (var, body) = subst_under_binder(var, body, None, name, value);
            Formula::Forall { var, body: Box::new(body) }
        }
        Formula::ExistsLt { var, bound, body } => {
            let new_bound = bound.subst(name, value);
            let (var, body) = subst_under_binder(var, body, Some(&new_bound), name, value);
            Formula::ExistsLt { var, bound: new_bound, body: Box::new(body) }
        }
        Formula::ForallLt { var, bound, body } => {
            let new_bound = bound.subst(name, value);
            let (var, body) = subst_under_binder(var, body, Some(&new_bound), name, value);
            Formula::ForallLt { var, bound: new_bound, body: Box::new(body) }
        }
    }
}

fn subst_under_binder(
    var: &str,
    body: &Formula,
    _bound: Option<&Term>,
    name: &str,
    value: &Term,
) -> (String, Formula) {
    if var == name {
        // Shadowed: nothing to substitute below the binder.
        return (var.to_string(), body.clone());
    }
    if value.free_vars().contains(var) {
        // Rename the binder away from the substituted term's variables.
        let taken: BTreeSet<String> =
            free_vars(body).into_iter().chain(value.free_vars()).collect();
        let fresh = fresh_name(var, &taken);
        let renamed = subst(body, var, &term::var(&fresh));
        (fresh.clone(), subst(&renamed, name, value))
    } else {
        (var.to_string(), subst(body, name, value))
    }
}

fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    for i in 0.. {
        let candidate = format!("{base}_{i}");
        if !taken.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Truth of a closed sentence without unbounded quantifiers, fixpoint or
/// set-variable atoms, decided by evaluation.
pub fn eval_sentence(f: &Formula) -> Result<bool, EvalError> {
    eval_in(f, &BTreeMap::new())
}

fn eval_in(f: &Formula, env: &BTreeMap<String, u64>) -> Result<bool, EvalError> {
    match f {
        Formula::Eq { lhs, rhs } => Ok(lhs.eval(env)? == rhs.eval(env)?),
        Formula::Ne { lhs, rhs } => Ok(lhs.eval(env)? != rhs.eval(env)?),
        Formula::Lt { lhs, rhs } => Ok(lhs.eval(env)? < rhs.eval(env)?),
        Formula::Nlt { lhs, rhs } => Ok(lhs.eval(env)? >= rhs.eval(env)?),
        Formula::Fix { .. } | Formula::InX { .. } | Formula::NotInX { .. } => {
            Err(EvalError::Undecidable(format!("non-arithmetic atom {f}")))
        }
        Formula::And { lhs, rhs } => Ok(eval_in(lhs, env)? && eval_in(rhs, env)?),
        Formula::Or { lhs, rhs } => Ok(eval_in(lhs, env)? || eval_in(rhs, env)?),
        Formula::BigAnd { items } => {
            for i in items {
                if !eval_in(i, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::BigOr { items } => {
            for i in items {
                if eval_in(i, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists { .. } | Formula::Forall { .. } => {
            Err(EvalError::Undecidable(format!("unbounded quantifier in {f}")))
        }
        Formula::ExistsLt { var, bound, body } => {
            let n = bound.eval(env)?;
            for i in 0..n {
                let mut env2 = env.clone();
                env2.insert(var.clone(), i);
                if eval_in(body, &env2)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ForallLt { var, bound, body } => {
            let n = bound.eval(env)?;
            for i in 0..n {
                let mut env2 = env.clone();
                env2.insert(var.clone(), i);
                if !eval_in(body, &env2)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Formula::Eq { lhs, rhs } => write!(f, "{lhs}={rhs}"),
            Formula::Ne { lhs, rhs } => write!(f, "{lhs}!={rhs}"),
            Formula::Lt { lhs, rhs } => write!(f, "{lhs}<{rhs}"),
            Formula::Nlt { lhs, rhs } => write!(f, "{lhs}!<{rhs}"),
            Formula::Fix { op, stage, positive, arg } => {
                let neg = if *positive { "" } else { "~" };
                write!(f, "{neg}{op}^<{stage}>({arg})")
            }
            Formula::InX { arg } => write!(f, "X({arg})"),
            Formula::NotInX { arg } => write!(f, "~X({arg})"),
            Formula::And { lhs, rhs } => write!(f, "({lhs} & {rhs})"),
            Formula::Or { lhs, rhs } => write!(f, "({lhs} | {rhs})"),
            Formula::BigAnd { items } => {
                write!(f, "/\\[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Formula::BigOr { items } => {
                write!(f, "\\/[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Formula::Exists { var, body } => write!(f, "E {var}. {body}"),
            Formula::Forall { var, body } => write!(f, "A {var}. {body}"),
            Formula::ExistsLt { var, bound, body } => write!(f, "E {var}<{bound}. {body}"),
            Formula::ForallLt { var, bound, body } => write!(f, "A {var}<{bound}. {body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::term::*;
    use super::*;

    fn r(t: Term) -> Formula {
        fix("acc", StageTag::Omega, t)
    }

    #[test]
    fn negate_examples() {
        assert_eq!(negate(&eq(num(1), num(2))), ne(num(1), num(2)));
        assert_eq!(negate(&r(num(3))), cofix("acc", StageTag::Omega, num(3)));
        // A y<x. (theta -> t in X) negates to E y<x. (theta & complement).
        let f = forall("y", or(nlt(var("y"), var("x")), in_x(var("y"))));
        let n = negate(&f);
        assert_eq!(
            n,
            exists("y", and(lt(var("y"), var("x")), Formula::NotInX { arg: var("y") }))
        );
    }

    #[test]
    fn negate_is_involution_on_samples() {
        let samples = vec![
            eq(num(0), num(0)),
            r(num(1)),
            and(r(num(1)), negate(&r(num(2)))),
            forall("x", exists_lt("y", var("x"), lt(var("y"), var("x")))),
            big_or(vec![eq(num(1), num(1)), ne(num(2), num(3))]),
        ];
        for f in samples {
            assert_eq!(negate(&negate(&f)), f);
        }
    }

    #[test]
    fn polarity_examples() {
        let f = r(num(3));
        assert_eq!(polarity(&f)["acc"], Polarity::PosOnly);
        let g = and(negate(&r(num(3))), r(num(4)));
        assert_eq!(polarity(&g)["acc"], Polarity::Both);
        // Stage-tagged atoms do not count.
        let stage = StageTag::Stage(crate::psi::one());
        let h = and(
            fix("acc", stage.clone(), num(3)),
            Formula::Fix { op: "acc".into(), stage, positive: false, arg: num(4) },
        );
        assert!(is_positive(&h));
        assert!(is_negative(&h));
        assert!(polarity(&h).is_empty());
    }

    #[test]
    fn free_vars_and_subst() {
        let f = forall("y", or(nlt(var("y"), var("x")), in_x(var("y"))));
        assert_eq!(free_vars(&f), BTreeSet::from(["x".to_string()]));
        let g = subst(&f, "x", &num(2));
        assert!(is_closed(&g));
        // Capture avoidance: substituting a term containing the binder name.
        let h = exists("y", eq(var("x"), var("y")));
        let s = subst(&h, "x", &var("y"));
        if let Formula::Exists { var: v, body } = &s {
            assert_ne!(v, "y");
            assert_eq!(**body, eq(var("y"), var(v)));
        } else {
            panic!("expected an existential");
        }
    }

    #[test]
    fn eval_sentence_examples() {
        assert!(eval_sentence(&eq(num(2), num(2))).unwrap());
        assert!(!eval_sentence(&lt(num(3), num(2))).unwrap());
        let f = exists_lt("x", num(3), eq(var("x"), num(2)));
        assert!(eval_sentence(&f).unwrap());
        let g = forall_lt("x", num(0), ne(num(0), num(0)));
        assert!(eval_sentence(&g).unwrap());
        assert!(eval_sentence(&forall("x", eq(var("x"), var("x")))).is_err());
        assert!(eval_sentence(&r(num(0))).is_err());
    }

    #[test]
    fn stage_tags_collects_countable_indices() {
        let b = crate::psi::one();
        let f = and(fix("acc", StageTag::Stage(b.clone()), num(0)), r(num(1)));
        assert_eq!(stage_tags(&f), BTreeSet::from([b]));
    }

    #[test]
    fn serde_roundtrip() {
        let f = forall(
            "x",
            implies(
                lt(var("x"), num(5)),
                fix("acc", StageTag::Stage(crate::psi::one()), var("x")),
            ),
        );
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Formula>(&json).unwrap(), f);
        assert!(json.contains("\"kind\""));
    }
}
