//! Finite-universe least-fixpoint semantics: inductive stages, inductive
//! norms, accessible parts of finite relations, and the closure/fixpoint
//! axiom checks.
//!
//! Stages start from the empty set: `I^0 = {}`, `I^(k+1) = {x : body(I^k, x)}`.
//! The inductive norm of an element is the least `k` with membership in
//! `I^(k+1)`, infinite when the element never enters. Unbounded quantifiers
//! in operator bodies range over the truncated universe `[0, N)`; this is
//! flagged, except for accessibility operators where the guard already does
//! the bounding.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::term::{num, var};
use crate::formula::{self, Formula, OperatorDef};
use crate::{Diagnostic, Report};

/// A finite binary relation `prec` on the universe `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRelation {
    pub n: u64,
    /// Pairs `(a, b)` meaning `a prec b`.
    pub edges: BTreeSet<(u64, u64)>,
    /// Set at construction; callers may rely on it only for relations built
    /// through [`FiniteRelation::new`].
    pub transitive: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LfpError {
    #[error("edge ({0}, {1}) is outside the universe")]
    EdgeOutOfRange(u64, u64),
    #[error("operator body is not evaluable: {0}")]
    NonEvaluable(String),
    #[error(transparent)]
    Eval(#[from] formula::EvalError),
}

impl FiniteRelation {
    pub fn new(n: u64, edges: BTreeSet<(u64, u64)>) -> Result<Self, LfpError> {
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(LfpError::EdgeOutOfRange(a, b));
            }
        }
        let transitive = is_transitive(&edges);
        Ok(FiniteRelation { n, edges, transitive })
    }

    pub fn predecessors(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        self.edges.iter().filter(move |&&(_, b)| b == x).map(|&(a, _)| a)
    }
}

fn is_transitive(edges: &BTreeSet<(u64, u64)>) -> bool {
    for &(a, b) in edges {
        for &(c, d) in edges {
            if b == c && !edges.contains(&(a, d)) {
                return false;
            }
        }
    }
    true
}

/// The stage iteration of one operator over `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTrace {
    pub op: String,
    pub n: u64,
    /// `stages[0]` is empty; each later entry applies the operator once.
    pub stages: Vec<BTreeSet<u64>>,
    /// Index of the first stage that is its own successor.
    pub closure_index: usize,
    /// An unbounded quantifier was truncated to the universe in a
    /// non-accessibility body.
    pub truncation_warning: bool,
}

/// Inductive norm: least `k` with membership in stage `k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Norm::Finite(k) => write!(f, "{k}"),
            Norm::Infinite => write!(f, "inf"),
        }
    }
}

/// One application of the operator body: `{x < n : body(x_set, x)}`.
fn apply_operator(
    op: &OperatorDef,
    x_set: &BTreeSet<u64>,
    n: u64,
    truncated: &mut bool,
) -> Result<BTreeSet<u64>, LfpError> {
    let mut out = BTreeSet::new();
    for x in 0..n {
        let mut env = BTreeMap::new();
        env.insert(op.var.clone(), x);
        if eval_with_set(&op.body, &env, x_set, n, truncated)? {
            out.insert(x);
        }
    }
    Ok(out)
}

fn eval_with_set(
    f: &Formula,
    env: &BTreeMap<String, u64>,
    x_set: &BTreeSet<u64>,
    n: u64,
    truncated: &mut bool,
) -> Result<bool, LfpError> {
    match f {
        Formula::Eq { lhs, rhs } => Ok(lhs.eval(env)? == rhs.eval(env)?),
        Formula::Ne { lhs, rhs } => Ok(lhs.eval(env)? != rhs.eval(env)?),
        Formula::Lt { lhs, rhs } => Ok(lhs.eval(env)? < rhs.eval(env)?),
        Formula::Nlt { lhs, rhs } => Ok(lhs.eval(env)? >= rhs.eval(env)?),
        Formula::InX { arg } => Ok(x_set.contains(&arg.eval(env)?)),
        Formula::NotInX { arg } => Ok(!x_set.contains(&arg.eval(env)?)),
        Formula::Fix { .. } => {
            Err(LfpError::NonEvaluable("fixpoint atoms cannot occur in operator bodies".into()))
        }
        Formula::And { lhs, rhs } => Ok(eval_with_set(lhs, env, x_set, n, truncated)?
            && eval_with_set(rhs, env, x_set, n, truncated)?),
        Formula::Or { lhs, rhs } => Ok(eval_with_set(lhs, env, x_set, n, truncated)?
            || eval_with_set(rhs, env, x_set, n, truncated)?),
        Formula::BigAnd { items } => {
            for i in items {
                if !eval_with_set(i, env, x_set, n, truncated)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::BigOr { items } => {
            for i in items {
                if eval_with_set(i, env, x_set, n, truncated)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists { var, body } => {
            *truncated = true;
            range_eval(var, n, body, env, x_set, n, truncated, false)
        }
        Formula::Forall { var, body } => {
            *truncated = true;
            range_eval(var, n, body, env, x_set, n, truncated, true)
        }
        Formula::ExistsLt { var, bound, body } => {
            let b = bound.eval(env)?;
            range_eval(var, b, body, env, x_set, n, truncated, false)
        }
        Formula::ForallLt { var, bound, body } => {
            let b = bound.eval(env)?;
            range_eval(var, b, body, env, x_set, n, truncated, true)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn range_eval(
    var: &str,
    limit: u64,
    body: &Formula,
    env: &BTreeMap<String, u64>,
    x_set: &BTreeSet<u64>,
    n: u64,
    truncated: &mut bool,
    conjunctive: bool,
) -> Result<bool, LfpError> {
    for i in 0..limit {
        let mut env2 = env.clone();
        env2.insert(var.to_string(), i);
        let v = eval_with_set(body, &env2, x_set, n, truncated)?;
        if conjunctive && !v {
            return Ok(false);
        }
        if !conjunctive && v {
            return Ok(true);
        }
    }
    Ok(conjunctive)
}

/// Iterates the operator from the empty set until the stages stabilize.
pub fn lfp_stages(op: &OperatorDef, n: u64) -> Result<StageTrace, LfpError> {
    let mut truncated = false;
    let mut stages = vec![BTreeSet::new()];
    loop {
        let last = stages.last().unwrap();
        let next = apply_operator(op, last, n, &mut truncated)?;
        if next == *last {
            break;
        }
        stages.push(next);
    }
    let closure_index = stages.len() - 1;
    Ok(StageTrace {
        op: op.name.clone(),
        n,
        stages,
        closure_index,
        truncation_warning: truncated && !op.is_acc(),
    })
}

/// Least `k` with `elem` in stage `k+1`, or infinite.
pub fn norm(op: &OperatorDef, elem: u64, n: u64) -> Result<Norm, LfpError> {
    let trace = lfp_stages(op, n)?;
    Ok(norm_from_trace(&trace, elem))
}

pub fn norm_from_trace(trace: &StageTrace, elem: u64) -> Norm {
    for (k, stage) in trace.stages.iter().enumerate() {
        if stage.contains(&elem) {
            return Norm::Finite(k - 1);
        }
    }
    Norm::Infinite
}

/// Accessible part and ranks of a finite relation, computed directly on the
/// graph: a node is ranked once all predecessors are ranked, one above
/// their maximum (zero for sources).
pub fn acc_part(rel: &FiniteRelation) -> (BTreeSet<u64>, BTreeMap<u64, usize>) {
    let mut rank: BTreeMap<u64, usize> = BTreeMap::new();
    loop {
        let mut changed = false;
        for x in 0..rel.n {
            if rank.contains_key(&x) {
                continue;
            }
            let preds: Vec<u64> = rel.predecessors(x).collect();
            if preds.iter().all(|p| rank.contains_key(p)) {
                let r = preds.iter().map(|p| rank[p] + 1).max().unwrap_or(0);
                rank.insert(x, r);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (rank.keys().copied().collect(), rank)
}

/// The canonical accessibility operator of a relation:
/// `A y (y prec x -> y in X)` with the edge set spelled out in the guard.
pub fn acc_operator(name: &str, rel: &FiniteRelation) -> OperatorDef {
    let disjuncts: Vec<Formula> = rel
        .edges
        .iter()
        .map(|&(a, b)| formula::and(formula::eq(var("y"), num(a)), formula::eq(var("x"), num(b))))
        .collect();
    let theta0 = formula::big_or(disjuncts);
    OperatorDef::acc(name, "x", "y", theta0, var("y")).expect("guard is bounded arithmetic")
}

/// Checks the closure and fixpoint inclusions of the computed fixed point,
/// and progressiveness for accessibility operators.
pub fn check_fixpoint_axioms(op: &OperatorDef, n: u64) -> Result<Report, LfpError> {
    let trace = lfp_stages(op, n)?;
    let fixed = trace.stages.last().unwrap().clone();
    let mut truncated = false;
    let image = apply_operator(op, &fixed, n, &mut truncated)?;
    let mut report = Report::new();
    for x in image.difference(&fixed) {
        report.push(Diagnostic::new(
            "closure",
            format!("element {x} satisfies the body but is missing from the fixed point"),
        ));
    }
    for x in fixed.difference(&image) {
        report.push(Diagnostic::new(
            "fixpoint",
            format!("element {x} is in the fixed point but does not satisfy the body"),
        ));
    }
    if let Some(acc) = &op.acc {
        // Progressiveness: if every guarded target is settled, so is the
        // element itself.
        for x in 0..n {
            let mut env = BTreeMap::new();
            env.insert(op.var.clone(), x);
            let mut all_in = true;
            for y in 0..n {
                env.insert(acc.y.clone(), y);
                if formula_truth(&acc.theta0, &env)? {
                    let target = acc.t0.eval(&env)?;
                    if !fixed.contains(&target) {
                        all_in = false;
                        break;
                    }
                }
            }
            env.remove(&acc.y);
            if all_in && !fixed.contains(&x) {
                report.push(Diagnostic::new(
                    "prog",
                    format!("progressiveness fails at {x}: all predecessors settled"),
                ));
            }
        }
    }
    Ok(report)
}

fn formula_truth(f: &Formula, env: &BTreeMap<String, u64>) -> Result<bool, LfpError> {
    let mut t = false;
    eval_with_set(f, env, &BTreeSet::new(), 0, &mut t)
}

/// Re-derives the stage iteration and compares it against a claimed trace.
pub fn verify_trace(op: &OperatorDef, trace: &StageTrace) -> Result<Report, LfpError> {
    let fresh = lfp_stages(op, trace.n)?;
    let mut report = Report::new();
    if fresh.stages != trace.stages {
        let upto = fresh.stages.len().min(trace.stages.len());
        let mut at = None;
        for i in 0..upto {
            if fresh.stages[i] != trace.stages[i] {
                at = Some(i.to_string());
                break;
            }
        }
        report.push(Diagnostic::new(
            at.unwrap_or_else(|| "length".into()),
            format!(
                "stage mismatch: recomputation yields {} stages, trace has {}",
                fresh.stages.len(),
                trace.stages.len()
            ),
        ));
    }
    if trace.closure_index + 1 != trace.stages.len() {
        report.push(Diagnostic::new(
            "closure",
            "closure index does not point at the final stage".to_string(),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: u64, edges: &[(u64, u64)]) -> FiniteRelation {
        FiniteRelation::new(n, edges.iter().copied().collect()).unwrap()
    }

    fn chain3() -> FiniteRelation {
        rel(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn stages_on_empty_relation() {
        let op = acc_operator("acc", &rel(3, &[]));
        let trace = lfp_stages(&op, 3).unwrap();
        assert_eq!(trace.stages, vec![BTreeSet::new(), BTreeSet::from([0, 1, 2])]);
        assert_eq!(trace.closure_index, 1);
        assert!(!trace.truncation_warning);
    }

    #[test]
    fn stages_on_chain() {
        let op = acc_operator("acc", &chain3());
        let trace = lfp_stages(&op, 3).unwrap();
        assert_eq!(
            trace.stages,
            vec![
                BTreeSet::new(),
                BTreeSet::from([0]),
                BTreeSet::from([0, 1]),
                BTreeSet::from([0, 1, 2]),
            ]
        );
        assert_eq!(trace.closure_index, 3);
    }

    #[test]
    fn identity_operator_stays_empty() {
        let op = formula::OperatorDef::general("id", "x", formula::in_x(var("x"))).unwrap();
        let trace = lfp_stages(&op, 3).unwrap();
        assert_eq!(trace.stages, vec![BTreeSet::new()]);
        assert_eq!(trace.closure_index, 0);
    }

    #[test]
    fn norm_examples() {
        let empty = acc_operator("acc", &rel(3, &[]));
        assert_eq!(norm(&empty, 0, 3).unwrap(), Norm::Finite(0));
        let chain = acc_operator("acc", &chain3());
        assert_eq!(norm(&chain, 2, 3).unwrap(), Norm::Finite(2));
        let cycle = acc_operator("acc", &rel(2, &[(0, 1), (1, 0)]));
        assert_eq!(norm(&cycle, 0, 2).unwrap(), Norm::Infinite);
    }

    #[test]
    fn acc_part_examples() {
        let (w, rank) = acc_part(&rel(3, &[]));
        assert_eq!(w, BTreeSet::from([0, 1, 2]));
        assert_eq!(rank.values().copied().collect::<Vec<_>>(), vec![0, 0, 0]);
        let (w, rank) = acc_part(&chain3());
        assert_eq!(w, BTreeSet::from([0, 1, 2]));
        assert_eq!(rank[&0], 0);
        assert_eq!(rank[&1], 1);
        assert_eq!(rank[&2], 2);
        let (w, rank) = acc_part(&rel(3, &[(0, 1), (1, 0)]));
        assert_eq!(w, BTreeSet::from([2]));
        assert_eq!(rank.get(&0), None);
        assert_eq!(rank[&2], 0);
    }

    #[test]
    fn norm_and_acc_part_agree_exhaustively_n3() {
        for n in 0..=3u64 {
            let pair_count = (n * n) as u32;
            for mask in 0..(1u64 << pair_count) {
                let mut edges = BTreeSet::new();
                let mut bit = 0;
                for a in 0..n {
                    for b in 0..n {
                        if mask & (1 << bit) != 0 {
                            edges.insert((a, b));
                        }
                        bit += 1;
                    }
                }
                let r = FiniteRelation::new(n, edges).unwrap();
                let op = acc_operator("acc", &r);
                let (w, rank) = acc_part(&r);
                for x in 0..n {
                    let by_stage = norm(&op, x, n).unwrap();
                    match by_stage {
                        Norm::Finite(k) => {
                            assert!(w.contains(&x));
                            assert_eq!(rank[&x], k, "rank mismatch at {x} mask {mask}");
                        }
                        Norm::Infinite => assert!(!w.contains(&x)),
                    }
                }
            }
        }
    }

    #[test]
    fn rank_matches_recursive_oracle_on_transitive_samples() {
        // Independent route: memoized recursion over predecessors.
        fn rec_rank(
            rel: &FiniteRelation,
            x: u64,
            visiting: &mut BTreeSet<u64>,
            memo: &mut BTreeMap<u64, Option<usize>>,
        ) -> Option<usize> {
            if let Some(r) = memo.get(&x) {
                return *r;
            }
            if !visiting.insert(x) {
                return None;
            }
            let mut best: isize = -1;
            let mut accessible = true;
            for p in rel.predecessors(x).collect::<Vec<_>>() {
                match rec_rank(rel, p, visiting, memo) {
                    Some(r) => best = best.max(r as isize),
                    None => {
                        accessible = false;
                        break;
                    }
                }
            }
            visiting.remove(&x);
            let out = if accessible { Some((best + 1) as usize) } else { None };
            memo.insert(x, out);
            out
        }

        let samples = [
            rel(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]),
            rel(4, &[]),
            rel(4, &[(0, 0)]),
            chain3(),
        ];
        for r in samples {
            assert!(r.transitive);
            let (_, rank) = acc_part(&r);
            let mut memo = BTreeMap::new();
            for x in 0..r.n {
                let expected = rec_rank(&r, x, &mut BTreeSet::new(), &mut memo);
                assert_eq!(rank.get(&x).copied(), expected);
            }
        }
    }

    #[test]
    fn fixpoint_axioms_hold_for_acc_instances() {
        for r in [rel(3, &[]), chain3(), rel(3, &[(0, 0)]), rel(4, &[(1, 2), (2, 3), (1, 3)])] {
            let op = acc_operator("acc", &r);
            let report = check_fixpoint_axioms(&op, r.n).unwrap();
            assert!(report.is_empty(), "{report:?}");
        }
        // Empty universe passes vacuously.
        let op = acc_operator("acc", &rel(0, &[]));
        assert!(check_fixpoint_axioms(&op, 0).unwrap().is_empty());
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let op = acc_operator("acc", &chain3());
        let mut trace = lfp_stages(&op, 3).unwrap();
        assert!(verify_trace(&op, &trace).unwrap().is_empty());
        trace.stages.pop();
        trace.closure_index = trace.stages.len() - 1;
        let report = verify_trace(&op, &trace).unwrap();
        assert!(!report.is_empty());
    }

    #[test]
    fn truncation_warning_only_outside_acc() {
        // An unbounded quantifier in a non-accessibility body is flagged.
        let body = formula::forall(
            "y",
            formula::and(formula::in_x(var("y")), formula::eq(var("x"), var("x"))),
        );
        let op = formula::OperatorDef::general("odd", "x", body).unwrap();
        assert!(op.acc.is_none());
        let trace = lfp_stages(&op, 2).unwrap();
        assert!(trace.truncation_warning);
        let acc = acc_operator("acc", &chain3());
        assert!(!lfp_stages(&acc, 3).unwrap().truncation_warning);
    }

    #[test]
    fn relation_validation() {
        assert!(FiniteRelation::new(2, BTreeSet::from([(0, 5)])).is_err());
        assert!(!rel(3, &[(0, 1), (1, 2)]).transitive);
        assert!(chain3().transitive);
    }
}
