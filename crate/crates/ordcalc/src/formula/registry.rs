//! Named positive operators and their substitution machinery.
//!
//! An operator is an `X`-positive formula `body(X, var)`; its fixpoint
//! predicate is referred to by name in [`super::Formula::Fix`] atoms.
//! Accessibility operators have the dedicated shape
//! `A y (theta0(x,y) -> t0(x,y) in X)` and carry `theta0`, `t0` explicitly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::classify::is_bounded_arith;
use super::term::{pair0, pair1, var, Term};
use super::{
    forall, negate, or, subst, Formula, FormulaError, StageTag,
};

/// A formula with one distinguished free variable, used as a predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub var: String,
    pub body: Formula,
}

impl Predicate {
    pub fn new(var: &str, body: Formula) -> Self {
        Predicate { var: var.into(), body }
    }

    pub fn apply(&self, t: &Term) -> Formula {
        subst(&self.body, &self.var, t)
    }

    pub fn negated(&self) -> Predicate {
        Predicate { var: self.var.clone(), body: negate(&self.body) }
    }
}

/// The accessibility shape `A y (theta0 -> t0 in X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccShape {
    pub y: String,
    pub theta0: Formula,
    pub t0: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDef {
    pub name: String,
    /// The number variable of the operator body.
    pub var: String,
    /// `X`-positive body over [`super::Formula::InX`] atoms.
    pub body: Formula,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acc: Option<AccShape>,
}

impl OperatorDef {
    /// A general positive operator; rejects bodies with complemented
    /// set-variable atoms.
    pub fn general(name: &str, var: &str, body: Formula) -> Result<Self, FormulaError> {
        if !super::is_positive(&body) {
            return Err(FormulaError::Shape(format!(
                "operator `{name}` body must be positive in the set variable"
            )));
        }
        let acc = detect_acc(&body);
        Ok(OperatorDef { name: name.into(), var: var.into(), body, acc })
    }

    /// An accessibility operator built from its guard and target term.
    pub fn acc(name: &str, x: &str, y: &str, theta0: Formula, t0: Term) -> Result<Self, FormulaError> {
        if !is_bounded_arith(&theta0) {
            return Err(FormulaError::Shape(format!(
                "operator `{name}` guard must be bounded arithmetic"
            )));
        }
        let body = forall(y, or(negate(&theta0), Formula::InX { arg: t0.clone() }));
        Ok(OperatorDef {
            name: name.into(),
            var: x.into(),
            body,
            acc: Some(AccShape { y: y.into(), theta0, t0 }),
        })
    }

    pub fn is_acc(&self) -> bool {
        self.acc.is_some()
    }

    /// `body(pred, t)`: substitutes the predicate for the set variable and
    /// `t` for the number variable.
    pub fn apply(&self, pred: &Predicate, t: &Term) -> Formula {
        let with_x = replace_set_var(&self.body, pred);
        subst(&with_x, &self.var, t)
    }

    /// `body(I^{<stage}, t)` for this operator's own fixpoint predicate.
    pub fn unfold(&self, stage: &StageTag, t: &Term) -> Formula {
        let pred = Predicate::new(
            "#x",
            Formula::Fix {
                op: self.name.clone(),
                stage: stage.clone(),
                positive: true,
                arg: var("#x"),
            },
        );
        self.apply(&pred, t)
    }

    /// Does the set variable occur in `body(X, t)` once bounded quantifiers
    /// with closed bounds are expanded? For accessibility operators over an
    /// empty guard range the variable can vanish.
    pub fn set_var_occurs_at(&self, t: &Term) -> Result<bool, FormulaError> {
        let instantiated = subst(&self.body, &self.var, t);
        let grounded = super::transform::ground_bounded(&instantiated)?;
        Ok(super::has_set_var(&grounded))
    }
}

fn replace_set_var(f: &Formula, pred: &Predicate) -> Formula {
    match f {
        Formula::InX { arg } => pred.apply(arg),
        Formula::NotInX { arg } => negate(&pred.apply(arg)),
        Formula::Eq { .. }
        | Formula::Ne { .. }
        | Formula::Lt { .. }
        | Formula::Nlt { .. }
        | Formula::Fix { .. } => f.clone(),
        Formula::And { lhs, rhs } => super::and(replace_set_var(lhs, pred), replace_set_var(rhs, pred)),
        Formula::Or { lhs, rhs } => or(replace_set_var(lhs, pred), replace_set_var(rhs, pred)),
        Formula::BigAnd { items } => {
            Formula::BigAnd { items: items.iter().map(|i| replace_set_var(i, pred)).collect() }
        }
        Formula::BigOr { items } => {
            Formula::BigOr { items: items.iter().map(|i| replace_set_var(i, pred)).collect() }
        }
        Formula::Exists { var, body } => {
            Formula::Exists { var: var.clone(), body: Box::new(replace_set_var(body, pred)) }
        }
        Formula::Forall { var, body } => {
            Formula::Forall { var: var.clone(), body: Box::new(replace_set_var(body, pred)) }
        }
        Formula::ExistsLt { var, bound, body } => Formula::ExistsLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(replace_set_var(body, pred)),
        },
        Formula::ForallLt { var, bound, body } => Formula::ForallLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(replace_set_var(body, pred)),
        },
    }
}

/// Recognizes the accessibility shape in a body, either disjunct order.
pub fn detect_acc(body: &Formula) -> Option<AccShape> {
    let Formula::Forall { var: y, body: inner } = body else {
        return None;
    };
    let Formula::Or { lhs, rhs } = &**inner else {
        return None;
    };
    let as_member = |g: &Formula| match g {
        Formula::InX { arg } => Some(arg.clone()),
        _ => None,
    };
    let (guard_neg, t0) = if let Some(t0) = as_member(rhs) {
        ((**lhs).clone(), t0)
    } else if let Some(t0) = as_member(lhs) {
        ((**rhs).clone(), t0)
    } else {
        return None;
    };
    if !is_bounded_arith(&guard_neg) {
        return None;
    }
    Some(AccShape { y: y.clone(), theta0: negate(&guard_neg), t0 })
}

/// Write-once collection of operators, shared read-only afterwards.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    operators: BTreeMap<String, OperatorDef>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, op: OperatorDef) -> Result<(), FormulaError> {
        if !super::is_positive(&op.body) {
            return Err(FormulaError::Shape(format!(
                "operator `{}` body must be positive in the set variable",
                op.name
            )));
        }
        self.operators.insert(op.name.clone(), op);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&OperatorDef, FormulaError> {
        self.operators.get(name).ok_or_else(|| FormulaError::UnknownOperator(name.into()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.operators.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &OperatorDef> {
        self.operators.values()
    }
}

/// For an accessibility operator `phi` and `sigma(u) = A z sigma0(z, u)`
/// with rank-0 matrix `sigma0`, the equivalent one-quantifier form
///
/// `phi_sigma(x) = A w (theta0(x, p0(w)) -> sigma0(p1(w), t0(x, p0(w))))`
///
/// obtained by coding the two universal quantifiers through the pairing
/// inverses.
pub fn phi_sigma(op: &OperatorDef, sigma: &Predicate) -> Result<Predicate, FormulaError> {
    let Some(acc) = &op.acc else {
        return Err(FormulaError::NotAcc(op.name.clone()));
    };
    let Formula::Forall { var: z, body: sigma0 } = &sigma.body else {
        return Err(FormulaError::Shape(
            "sigma must be a universally quantified formula".into(),
        ));
    };
    if !super::classify::rank0_positive(sigma0) {
        return Err(FormulaError::Shape(
            "sigma matrix must be rank 0 over positive formulas".into(),
        ));
    }
    let w = "w*";
    let p0w = pair0(var(w));
    let p1w = pair1(var(w));
    let theta = subst_term_in(&acc.theta0, &op.var, &var(&op.var), &acc.y, &p0w);
    let t1 = acc.t0.subst(&acc.y, &p0w);
    let matrix = subst(&subst(sigma0, z, &p1w), &sigma.var, &t1);
    Ok(Predicate::new(&op.var, forall(w, or(negate(&theta), matrix))))
}

fn subst_term_in(f: &Formula, x: &str, xv: &Term, y: &str, yv: &Term) -> Formula {
    subst(&subst(f, y, yv), x, xv)
}

#[cfg(test)]
mod tests {
    use super::super::term::*;
    use super::super::*;
    use super::*;

    fn lt_acc() -> OperatorDef {
        OperatorDef::acc("acc", "x", "y", lt(var("y"), var("x")), var("y")).unwrap()
    }

    #[test]
    fn acc_body_shape() {
        let op = lt_acc();
        assert!(op.is_acc());
        assert_eq!(
            op.body,
            forall("y", or(nlt(var("y"), var("x")), Formula::InX { arg: var("y") }))
        );
        assert_eq!(detect_acc(&op.body).unwrap().t0, var("y"));
    }

    #[test]
    fn general_rejects_negative_bodies() {
        assert!(OperatorDef::general("bad", "x", Formula::NotInX { arg: var("x") }).is_err());
        let ok = OperatorDef::general("ok", "x", or(in_x(var("x")), eq(var("x"), var("x"))));
        assert!(ok.unwrap().acc.is_none());
    }

    #[test]
    fn unfold_substitutes_stage_and_argument() {
        let op = lt_acc();
        let f = op.unfold(&StageTag::Omega, &num(2));
        assert_eq!(
            f,
            forall(
                "y",
                or(nlt(var("y"), num(2)), fix("acc", StageTag::Omega, var("y")))
            )
        );
    }

    #[test]
    fn apply_negative_predicate_flips() {
        let op = lt_acc();
        let sigma = Predicate::new("u", ne(var("u"), num(0)));
        let f = op.apply(&sigma.negated(), &num(1));
        assert_eq!(f, forall("y", or(nlt(var("y"), num(1)), eq(var("y"), num(0)))));
    }

    #[test]
    fn set_var_occurrence_after_grounding() {
        // The accessibility body quantifies y unboundedly, so its set
        // variable survives grounding at every argument.
        let op = lt_acc();
        assert!(op.set_var_occurs_at(&num(0)).unwrap());
        assert!(op.set_var_occurs_at(&num(3)).unwrap());
        // A bounded-quantifier body loses the set variable when the range
        // is empty: A y<x (y in X) at x = 0.
        let bounded =
            OperatorDef::general("bnd", "x", forall_lt("y", var("x"), in_x(var("y")))).unwrap();
        assert!(!bounded.set_var_occurs_at(&num(0)).unwrap());
        assert!(bounded.set_var_occurs_at(&num(3)).unwrap());
    }

    #[test]
    fn phi_sigma_template() {
        // Guard y < x, target y; sigma(u) = A z (z = u).
        let op = lt_acc();
        let sigma = Predicate::new("u", forall("z", eq(var("z"), var("u"))));
        let got = phi_sigma(&op, &sigma).unwrap();
        let w = var("w*");
        let expected = forall(
            "w*",
            or(nlt(pair0(w.clone()), var("x")), eq(pair1(w.clone()), pair0(w.clone()))),
        );
        assert_eq!(got.body, expected);
        assert_eq!(got.var, "x");
        // Shape errors.
        let flat = Predicate::new("u", eq(var("u"), num(0)));
        assert!(phi_sigma(&op, &flat).is_err());
        let non_acc =
            OperatorDef::general("g", "x", in_x(var("x"))).unwrap();
        assert!(phi_sigma(&non_acc, &sigma).is_err());
    }

    #[test]
    fn registry_lookup() {
        let mut reg = Registry::new();
        reg.insert(lt_acc()).unwrap();
        assert!(reg.get("acc").is_ok());
        assert!(matches!(reg.get("nope"), Err(FormulaError::UnknownOperator(_))));
    }

    #[test]
    fn serde_roundtrip() {
        let mut reg = Registry::new();
        reg.insert(lt_acc()).unwrap();
        let json = serde_json::to_string(&reg).unwrap();
        assert_eq!(serde_json::from_str::<Registry>(&json).unwrap(), reg);
    }
}
