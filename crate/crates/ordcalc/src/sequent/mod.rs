//! Checker for three one-sided sequent calculi over the fixpoint language.
//!
//! Sequents are finite sets of formulas; a proof is a finite tree whose
//! nodes carry a conclusion, a rule tag with payload, and premises. The
//! checker validates each node locally; subset-style matching of premises
//! against the conclusion makes accepted proofs stable under weakening.
//!
//! The three theories differ in the fixpoint-elimination rule and in the
//! class of induction formulas:
//!
//! * `pn-id:k` — arbitrary positive operators; the elimination invariant
//!   `sigma` is positive or negative; induction formulas at rank `<= k`.
//! * `pandn-acc:k` — accessibility operators only; `sigma` is a conjunction
//!   of a negative and a positive formula, eliminated through the split
//!   disjunction of the two substituted bodies; rank `<= k`.
//! * `pi01p-acc` — accessibility operators only; `sigma` is universally
//!   quantified with a rank-0 matrix, eliminated through its one-quantifier
//!   pairing form; rank `<= 1`.
//!
//! True-arithmetic initial sequents are restricted to closed bounded
//! sentences decided by evaluation, plus reflexivity `t = t`; anything
//! else must be declared as a trusted axiom in the proof file, and every
//! use of a trusted axiom is logged in the outcome.

pub mod fixtures;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::formula::term::{num, succ, var, Term};
use crate::formula::{
    self, classify, free_vars, is_negative, is_positive, negate, phi_sigma, subst, Formula,
    Predicate, Registry, StageTag,
};
use crate::{Diagnostic, Report};

pub type Sequent = BTreeSet<Formula>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryId {
    /// Arbitrary positive operators, `sigma` positive or negative,
    /// induction up to rank `k`.
    PnId(u32),
    /// Accessibility operators, `sigma` a negative/positive conjunction,
    /// induction up to rank `k`.
    PAndNIdAcc(u32),
    /// Accessibility operators, `sigma` universally quantified over a
    /// rank-0 matrix, induction up to rank 1.
    Pi01PAcc,
}

impl TheoryId {
    pub fn requires_acc(&self) -> bool {
        matches!(self, TheoryId::PAndNIdAcc(_) | TheoryId::Pi01PAcc)
    }

    pub fn induction_rank_limit(&self) -> u32 {
        match self {
            TheoryId::PnId(k) | TheoryId::PAndNIdAcc(k) => *k,
            TheoryId::Pi01PAcc => 1,
        }
    }
}

impl std::str::FromStr for TheoryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "pi01p-acc" {
            return Ok(TheoryId::Pi01PAcc);
        }
        if let Some(k) = s.strip_prefix("pn-id:") {
            return k.parse().map(TheoryId::PnId).map_err(|e| e.to_string());
        }
        if let Some(k) = s.strip_prefix("pandn-acc:") {
            return k.parse().map(TheoryId::PAndNIdAcc).map_err(|e| e.to_string());
        }
        Err(format!("unknown theory `{s}`; expected pn-id:K, pandn-acc:K or pi01p-acc"))
    }
}

impl std::fmt::Display for TheoryId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoryId::PnId(k) => write!(f, "pn-id:{k}"),
            TheoryId::PAndNIdAcc(k) => write!(f, "pandn-acc:{k}"),
            TheoryId::Pi01PAcc => write!(f, "pi01p-acc"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rule {
    /// `L, ~L, Gamma` for a literal `L`.
    LogicalInit { literal: Formula },
    /// `t != s, ~L(t), L(s), Gamma` for a literal template `L`.
    EqualityInit { t: Term, s: Term, literal: Predicate },
    /// A true closed bounded sentence, `t = t`, or a declared axiom.
    ArithInit { formula: Formula },
    Cut { formula: Formula },
    Exists { principal: Formula, witness: Term },
    Forall { principal: Formula, eigen: String },
    BoundedExists { principal: Formula, witness: Term },
    BoundedForall { principal: Formula, eigen: String },
    OrIntro { principal: Formula, index: usize },
    AndIntro { principal: Formula },
    /// Fixpoint closure: from the unfolded body.
    FixIntro { principal: Formula },
    /// Fixpoint elimination with invariant `sigma`, theory-shaped.
    FixElim { principal: Formula, sigma: Predicate, eigen: String },
    Ind { theta: Predicate, eigen: String, term: Term },
}

impl Rule {
    fn name(&self) -> &'static str {
        match self {
            Rule::LogicalInit { .. } => "logical-init",
            Rule::EqualityInit { .. } => "equality-init",
            Rule::ArithInit { .. } => "arith-init",
            Rule::Cut { .. } => "cut",
            Rule::Exists { .. } => "exists",
            Rule::Forall { .. } => "forall",
            Rule::BoundedExists { .. } => "b-exists",
            Rule::BoundedForall { .. } => "b-forall",
            Rule::OrIntro { .. } => "or",
            Rule::AndIntro { .. } => "and",
            Rule::FixIntro { .. } => "fix-intro",
            Rule::FixElim { .. } => "fix-elim",
            Rule::Ind { .. } => "ind",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Rule::LogicalInit { .. } | Rule::EqualityInit { .. } | Rule::ArithInit { .. } => 0,
            Rule::Exists { .. }
            | Rule::Forall { .. }
            | Rule::BoundedForall { .. }
            | Rule::OrIntro { .. }
            | Rule::FixIntro { .. } => 1,
            Rule::Cut { .. }
            | Rule::BoundedExists { .. }
            | Rule::AndIntro { .. }
            | Rule::FixElim { .. } => 2,
            Rule::Ind { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTree {
    pub conclusion: Vec<Formula>,
    pub rule: Rule,
    #[serde(default)]
    pub premises: Vec<ProofTree>,
}

/// A self-contained proof file: the operators it mentions, the axioms it
/// is allowed to assume, and the tree itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ProofFile {
    #[serde(default)]
    pub registry: Registry,
    #[serde(default)]
    pub trusted_axioms: Vec<Formula>,
    pub proof: ProofTree,
}

impl Default for ProofTree {
    fn default() -> Self {
        ProofTree {
            conclusion: vec![formula::eq(num(0), num(0))],
            rule: Rule::ArithInit { formula: formula::eq(num(0), num(0)) },
            premises: Vec::new(),
        }
    }
}

/// Result of a check: violations (empty means accepted) and the log of
/// trusted-axiom uses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub violations: Report,
    pub trusted_used: Report,
}

impl CheckOutcome {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_proof(file: &ProofFile, theory: TheoryId) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    let mut path = Vec::new();
    check_node(&file.proof, theory, file, &mut path, &mut out);
    out
}

fn fail(out: &mut CheckOutcome, path: &[usize], rule: &Rule, message: impl Into<String>) {
    let path = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
    out.violations.push(Diagnostic::new(path, format!("({}) {}", rule.name(), message.into())));
}

fn check_node(
    node: &ProofTree,
    theory: TheoryId,
    file: &ProofFile,
    path: &mut Vec<usize>,
    out: &mut CheckOutcome,
) {
    let concl: Sequent = node.conclusion.iter().cloned().collect();
    for f in &concl {
        if let Some(msg) = finitary_language_violation(f) {
            fail(out, path, &node.rule, format!("formula `{f}`: {msg}"));
        }
        if theory.requires_acc() {
            for op in mentioned_operators(f) {
                match file.registry.get(&op) {
                    Ok(def) if def.is_acc() => {}
                    Ok(_) => fail(
                        out,
                        path,
                        &node.rule,
                        format!("operator `{op}` must have the accessibility shape here"),
                    ),
                    Err(e) => fail(out, path, &node.rule, e.to_string()),
                }
            }
        }
    }
    if node.premises.len() != node.rule.arity() {
        fail(
            out,
            path,
            &node.rule,
            format!("expected {} premises, found {}", node.rule.arity(), node.premises.len()),
        );
        // Arity is wrong; still descend to report nested problems.
        for (i, premise) in node.premises.iter().enumerate() {
            path.push(i);
            check_node(premise, theory, file, path, out);
            path.pop();
        }
        return;
    }
    check_rule(node, &concl, theory, file, path, out);
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, theory, file, path, out);
        path.pop();
    }
}

fn check_rule(
    node: &ProofTree,
    concl: &Sequent,
    theory: TheoryId,
    file: &ProofFile,
    path: &mut Vec<usize>,
    out: &mut CheckOutcome,
) {
    let rule = &node.rule;
    let premise_seq =
        |i: usize| -> Sequent { node.premises[i].conclusion.iter().cloned().collect() };
    // The premise, minus the formulas the rule introduces, must sit inside
    // the conclusion.
    let require_premise = |i: usize, removed: &[Formula], out: &mut CheckOutcome| {
        let mut p = premise_seq(i);
        for r in removed {
            p.remove(r);
        }
        if !p.is_subset(concl) {
            let extra: Vec<String> =
                p.difference(concl).map(|f| format!("`{f}`")).collect();
            fail(
                out,
                path,
                rule,
                format!("premise {i} carries formulas missing from the conclusion: {}", extra.join(", ")),
            );
        }
    };

    match rule {
        Rule::LogicalInit { literal } => {
            if !is_literal(literal) {
                fail(out, path, rule, format!("`{literal}` is not a literal"));
            }
            if !concl.contains(literal) || !concl.contains(&negate(literal)) {
                fail(out, path, rule, "conclusion must contain the literal and its complement");
            }
        }
        Rule::EqualityInit { t, s, literal } => {
            if !is_literal(&literal.body) {
                fail(out, path, rule, "the template must be a literal");
            }
            let wanted = [
                formula::ne(t.clone(), s.clone()),
                negate(&literal.apply(t)),
                literal.apply(s),
            ];
            for w in &wanted {
                if !concl.contains(w) {
                    fail(out, path, rule, format!("conclusion is missing `{w}`"));
                }
            }
        }
        Rule::ArithInit { formula: a } => {
            if !concl.contains(a) {
                fail(out, path, rule, format!("conclusion is missing `{a}`"));
                return;
            }
            if is_reflexivity(a) {
                return;
            }
            if file.trusted_axioms.contains(a) {
                let p = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
                out.trusted_used.push(Diagnostic::new(p, format!("trusted axiom `{a}` used")));
                return;
            }
            if !formula::is_closed(a) {
                fail(out, path, rule, format!("`{a}` is open and not a declared axiom"));
                return;
            }
            match formula::eval_sentence(a) {
                Ok(true) => {}
                Ok(false) => fail(out, path, rule, format!("`{a}` is false")),
                Err(e) => fail(out, path, rule, format!("`{a}`: {e}")),
            }
        }
        Rule::Cut { formula: c } => {
            require_premise(0, &[negate(c)], out);
            require_premise(1, &[c.clone()], out);
        }
        Rule::Exists { principal, witness } => {
            let Formula::Exists { var: x, body } = principal else {
                fail(out, path, rule, "principal formula must be existential");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            require_premise(0, &[subst(body, x, witness)], out);
        }
        Rule::Forall { principal, eigen } => {
            let Formula::Forall { var: x, body } = principal else {
                fail(out, path, rule, "principal formula must be universal");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            check_eigen(eigen, concl, &[], rule, path, out);
            require_premise(0, &[subst(body, x, &var(eigen))], out);
        }
        Rule::BoundedExists { principal, witness } => {
            let Formula::ExistsLt { var: x, bound, body } = principal else {
                fail(out, path, rule, "principal formula must be a bounded existential");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            require_premise(0, &[subst(body, x, witness)], out);
            require_premise(1, &[formula::lt(witness.clone(), bound.clone())], out);
        }
        Rule::BoundedForall { principal, eigen } => {
            let Formula::ForallLt { var: x, bound, body } = principal else {
                fail(out, path, rule, "principal formula must be a bounded universal");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            check_eigen(eigen, concl, &[], rule, path, out);
            require_premise(
                0,
                &[formula::nlt(var(eigen), bound.clone()), subst(body, x, &var(eigen))],
                out,
            );
        }
        Rule::OrIntro { principal, index } => {
            require_in_conclusion(concl, principal, rule, path, out);
            let Some(disjunct) = disjunct_of(principal, *index) else {
                fail(out, path, rule, format!("principal has no disjunct {index}"));
                return;
            };
            require_premise(0, &[disjunct], out);
        }
        Rule::AndIntro { principal } => {
            require_in_conclusion(concl, principal, rule, path, out);
            let Formula::And { lhs, rhs } = principal else {
                fail(out, path, rule, "principal formula must be a conjunction");
                return;
            };
            require_premise(0, &[(**lhs).clone()], out);
            require_premise(1, &[(**rhs).clone()], out);
        }
        Rule::FixIntro { principal } => {
            let Formula::Fix { op, stage: StageTag::Omega, positive: true, arg } = principal
            else {
                fail(out, path, rule, "principal must be a positive fixpoint atom");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            match file.registry.get(op) {
                Ok(def) => require_premise(0, &[def.unfold(&StageTag::Omega, arg)], out),
                Err(e) => fail(out, path, rule, e.to_string()),
            }
        }
        Rule::FixElim { principal, sigma, eigen } => {
            let Formula::Fix { op, stage: StageTag::Omega, positive: false, arg } = principal
            else {
                fail(out, path, rule, "principal must be a complemented fixpoint atom");
                return;
            };
            require_in_conclusion(concl, principal, rule, path, out);
            check_eigen(eigen, concl, &[&sigma.body], rule, path, out);
            let def = match file.registry.get(op) {
                Ok(def) => def,
                Err(e) => {
                    fail(out, path, rule, e.to_string());
                    return;
                }
            };
            let a = var(eigen);
            let left = match theory {
                TheoryId::PnId(_) => {
                    if !is_positive(&sigma.body) && !is_negative(&sigma.body) {
                        fail(out, path, rule, "sigma must be positive or negative");
                        return;
                    }
                    negate(&def.apply(sigma, &a))
                }
                TheoryId::PAndNIdAcc(_) => {
                    if !def.is_acc() {
                        fail(out, path, rule, format!("operator `{op}` is not an accessibility operator"));
                        return;
                    }
                    let Formula::And { lhs, rhs } = &sigma.body else {
                        fail(out, path, rule, "sigma must be a conjunction of a negative and a positive formula");
                        return;
                    };
                    let (neg_part, pos_part) = if is_negative(lhs) && is_positive(rhs) {
                        (lhs, rhs)
                    } else if is_positive(lhs) && is_negative(rhs) {
                        (rhs, lhs)
                    } else {
                        fail(out, path, rule, "sigma must be a conjunction of a negative and a positive formula");
                        return;
                    };
                    let neg_pred = Predicate::new(&sigma.var, (**neg_part).clone());
                    let pos_pred = Predicate::new(&sigma.var, (**pos_part).clone());
                    formula::or(
                        negate(&def.apply(&neg_pred, &a)),
                        negate(&def.apply(&pos_pred, &a)),
                    )
                }
                TheoryId::Pi01PAcc => match phi_sigma(def, sigma) {
                    Ok(ps) => negate(&ps.apply(&a)),
                    Err(e) => {
                        fail(out, path, rule, e.to_string());
                        return;
                    }
                },
            };
            require_premise(0, &[left, sigma.apply(&a)], out);
            require_premise(1, &[negate(&sigma.apply(arg))], out);
        }
        Rule::Ind { theta, eigen, term } => {
            let limit = theory.induction_rank_limit();
            let rank = classify::ranks_fin(&theta.body).0;
            if rank > limit {
                fail(
                    out,
                    path,
                    rule,
                    format!("induction formula has rank {rank}, theory admits at most {limit}"),
                );
            }
            check_eigen(eigen, concl, &[&theta.body], rule, path, out);
            if term.free_vars().contains(eigen) {
                fail(out, path, rule, "eigenvariable occurs in the induction term");
            }
            let a = var(eigen);
            require_premise(0, &[theta.apply(&num(0))], out);
            require_premise(1, &[negate(&theta.apply(&a)), theta.apply(&succ(a.clone()))], out);
            require_premise(2, &[negate(&theta.apply(term))], out);
        }
    }
}

fn require_in_conclusion(
    concl: &Sequent,
    principal: &Formula,
    rule: &Rule,
    path: &[usize],
    out: &mut CheckOutcome,
) {
    if !concl.contains(principal) {
        let path = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
        out.violations.push(Diagnostic::new(
            path,
            format!("({}) principal formula `{principal}` is not in the conclusion", rule.name()),
        ));
    }
}

fn check_eigen(
    eigen: &str,
    concl: &Sequent,
    templates: &[&Formula],
    rule: &Rule,
    path: &[usize],
    out: &mut CheckOutcome,
) {
    let mut clash = concl.iter().any(|f| free_vars(f).contains(eigen));
    for t in templates {
        if free_vars(t).contains(eigen) {
            clash = true;
        }
    }
    if clash {
        let path = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
        out.violations.push(Diagnostic::new(
            path,
            format!("({}) eigenvariable `{eigen}` is not fresh", rule.name()),
        ));
    }
}

fn disjunct_of(f: &Formula, index: usize) -> Option<Formula> {
    match (f, index) {
        (Formula::Or { lhs, .. }, 0) => Some((**lhs).clone()),
        (Formula::Or { rhs, .. }, 1) => Some((**rhs).clone()),
        _ => None,
    }
}

fn is_literal(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Eq { .. }
            | Formula::Ne { .. }
            | Formula::Lt { .. }
            | Formula::Nlt { .. }
            | Formula::Fix { .. }
    )
}

fn is_reflexivity(f: &Formula) -> bool {
    matches!(f, Formula::Eq { lhs, rhs } if lhs == rhs)
}

/// The finitary language has no stage-tagged atoms, no set-variable atoms
/// and no infinitary connectives.
fn finitary_language_violation(f: &Formula) -> Option<String> {
    match f {
        Formula::Fix { stage: StageTag::Stage(_), .. } => {
            Some("stage-tagged fixpoint atoms are infinitary".into())
        }
        Formula::InX { .. } | Formula::NotInX { .. } => {
            Some("set-variable atoms belong to operator bodies".into())
        }
        Formula::BigAnd { .. } | Formula::BigOr { .. } => {
            Some("infinitary connectives are not part of the finitary calculus".into())
        }
        Formula::Eq { .. } | Formula::Ne { .. } | Formula::Lt { .. } | Formula::Nlt { .. } => None,
        Formula::Fix { .. } => None,
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            finitary_language_violation(lhs).or_else(|| finitary_language_violation(rhs))
        }
        Formula::Exists { body, .. } | Formula::Forall { body, .. } => {
            finitary_language_violation(body)
        }
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => {
            finitary_language_violation(body)
        }
    }
}

fn mentioned_operators(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_ops(f, &mut out);
    out
}

fn collect_ops(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Fix { op, .. } => {
            out.insert(op.clone());
        }
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            collect_ops(lhs, out);
            collect_ops(rhs, out);
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            for i in items {
                collect_ops(i, out);
            }
        }
        Formula::Exists { body, .. }
        | Formula::Forall { body, .. }
        | Formula::ExistsLt { body, .. }
        | Formula::ForallLt { body, .. } => collect_ops(body, out),
        _ => {}
    }
}
