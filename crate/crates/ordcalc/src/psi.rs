//! Buchholz-style notation system with the collapsing function `psi`.
//!
//! Terms are built from `0`, `Omega`, `w^b` for `b > Omega`, `psi(a)` and
//! weakly decreasing sums of such principals; there is no omega-power below
//! `Omega` (countable omega-powers are expressed through `psi`, see
//! [`omega_pow_countable`]). `psi(a)` denotes the least `b <= Omega` whose
//! closure `H_a(b)` under `+`, omega-powers above `Omega` and `psi`-values
//! with index below `a` stays below `b` on the countable side; no term of
//! the system uses `psi` for `Omega` itself, so `psi(a) < Omega` throughout.
//!
//! `psi(a)` is in normal form when every member of `G(a)` is below `a`,
//! where `G` collects the `psi`-indices occurring in a term. Comparison of
//! normal forms is `psi(a) < psi(b) iff a < b`, extended lexicographically
//! to sums; the countable fragment is checked against [`crate::cnf`],
//! anchored by `psi(0) = 1` and `psi(1) = w`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::sexpr::{self, Sexpr};
use crate::{push_diag, Report};

/// A term of the psi-system.
///
/// The derived `Ord` is structural (for sets); the semantic order is
/// [`cmp_psi`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PsiTerm {
    Zero,
    Omega,
    /// `w^exponent` with `exponent > Omega`.
    OmegaPow(Box<PsiTerm>),
    /// `psi(argument)`, a countable value.
    Psi(Box<PsiTerm>),
    /// Weakly decreasing sum of at least two principal terms.
    Sum(Vec<PsiTerm>),
}

/// The ordinal data of the collapsing steps `b_m = gamma + w^(Omega+a0)*m`,
/// `beta_m = psi(b_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseSteps {
    pub gamma: PsiTerm,
    pub a0: PsiTerm,
    pub m: usize,
    pub b_m: PsiTerm,
    pub beta_m: PsiTerm,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsiError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid term: {}", format_report(.0))]
    Invalid(Report),
    #[error("omega-power exponent must be strictly above Omega, got {0}")]
    LowExponent(PsiTerm),
    #[error("term is not in normal form: {0}")]
    NotNormal(PsiTerm),
    #[error("term is outside the countable fragment: {0}")]
    Uncountable(PsiTerm),
}

fn format_report(report: &Report) -> String {
    report.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

pub fn zero() -> PsiTerm {
    PsiTerm::Zero
}

pub fn omega_cap() -> PsiTerm {
    PsiTerm::Omega
}

/// `psi(arg)`.
pub fn psi_app(arg: PsiTerm) -> PsiTerm {
    PsiTerm::Psi(Box::new(arg))
}

/// `1 = psi(0)`.
pub fn one() -> PsiTerm {
    psi_app(PsiTerm::Zero)
}

/// The numeral `n` as an n-fold sum of `psi(0)`.
pub fn nat(n: usize) -> PsiTerm {
    match n {
        0 => PsiTerm::Zero,
        1 => one(),
        _ => PsiTerm::Sum(vec![one(); n]),
    }
}

/// `w^exponent`; the exponent must be strictly above `Omega`.
pub fn omega_pow(exponent: PsiTerm) -> Result<PsiTerm, PsiError> {
    if cmp_psi(&exponent, &PsiTerm::Omega) != Ordering::Greater {
        return Err(PsiError::LowExponent(exponent));
    }
    Ok(PsiTerm::OmegaPow(Box::new(exponent)))
}

/// Countable omega-powers are psi-values: `w^a = psi(a)` for countable `a`,
/// by the countable-fragment identity `psi(a) = w^a`. This is the only place
/// the rewrite happens; the term grammar itself has no omega-power below
/// `Omega`.
pub fn omega_pow_countable(a: &PsiTerm) -> Result<PsiTerm, PsiError> {
    if !is_countable_psi(a) {
        return Err(PsiError::Uncountable(a.clone()));
    }
    Ok(psi_app(a.clone()))
}

/// Structural validity of the grammar.
pub fn validate_psi(t: &PsiTerm) -> Report {
    let mut report = Report::new();
    let mut path = Vec::new();
    validate_at(t, &mut path, &mut report, false);
    report
}

fn validate_at(t: &PsiTerm, path: &mut Vec<usize>, report: &mut Report, in_sum: bool) {
    match t {
        PsiTerm::Zero => {
            if in_sum {
                push_diag(report, path, "sum components must be principal, got 0");
            }
        }
        PsiTerm::Omega => {}
        PsiTerm::OmegaPow(e) => {
            path.push(0);
            validate_at(e, path, report, false);
            path.pop();
            if cmp_psi(e, &PsiTerm::Omega) != Ordering::Greater {
                push_diag(report, path, "omega-power exponent must be strictly above Omega");
            }
        }
        PsiTerm::Psi(a) => {
            path.push(0);
            validate_at(a, path, report, false);
            path.pop();
        }
        PsiTerm::Sum(items) => {
            if in_sum {
                push_diag(report, path, "sums must be flat");
                return;
            }
            if items.len() < 2 {
                push_diag(report, path, "sum must contain at least two components");
            }
            for (i, item) in items.iter().enumerate() {
                path.push(i);
                validate_at(item, path, report, true);
                path.pop();
            }
            for (i, pair) in items.windows(2).enumerate() {
                if cmp_psi(&pair[0], &pair[1]) == Ordering::Less {
                    path.push(i + 1);
                    push_diag(report, path, "sum components must be weakly decreasing");
                    path.pop();
                }
            }
        }
    }
}

pub fn is_valid(t: &PsiTerm) -> bool {
    validate_psi(t).is_empty()
}

/// The set `G`: `G(0) = G(Omega) = {}`, `G(psi(a)) = {a} + G(a)`,
/// `G(w^a) = G(a)`, `G(b+c) = G(b) + G(c)`.
pub fn g_set(t: &PsiTerm) -> BTreeSet<PsiTerm> {
    let mut out = BTreeSet::new();
    collect_g(t, &mut out);
    out
}

fn collect_g(t: &PsiTerm, out: &mut BTreeSet<PsiTerm>) {
    match t {
        PsiTerm::Zero | PsiTerm::Omega => {}
        PsiTerm::OmegaPow(e) => collect_g(e, out),
        PsiTerm::Psi(a) => {
            out.insert((**a).clone());
            collect_g(a, out);
        }
        PsiTerm::Sum(items) => {
            for item in items {
                collect_g(item, out);
            }
        }
    }
}

/// Normal form: every `psi(a)` subterm satisfies `G(a) < a` element-wise.
pub fn is_nf(t: &PsiTerm) -> bool {
    match t {
        PsiTerm::Zero | PsiTerm::Omega => true,
        PsiTerm::OmegaPow(e) => is_nf(e),
        PsiTerm::Psi(a) => g_set(a).iter().all(|g| cmp_psi(g, a) == Ordering::Less) && is_nf(a),
        PsiTerm::Sum(items) => items.iter().all(is_nf),
    }
}

/// Total comparison of terms: `0` least, then `psi`-values, `Omega`,
/// omega-powers; sums lexicographically.
pub fn cmp_psi(s: &PsiTerm, t: &PsiTerm) -> Ordering {
    if s == t {
        return Ordering::Equal;
    }
    let cs = components(s);
    let ct = components(t);
    for i in 0.. {
        match (cs.get(i), ct.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match cmp_principal(x, y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
        }
    }
    unreachable!()
}

/// Checked comparison for callers that require normal forms.
pub fn cmp_psi_nf(s: &PsiTerm, t: &PsiTerm) -> Result<Ordering, PsiError> {
    for u in [s, t] {
        if !is_nf(u) {
            return Err(PsiError::NotNormal(u.clone()));
        }
    }
    Ok(cmp_psi(s, t))
}

fn components(t: &PsiTerm) -> Vec<PsiTerm> {
    match t {
        PsiTerm::Zero => Vec::new(),
        PsiTerm::Sum(items) => items.clone(),
        _ => vec![t.clone()],
    }
}

fn rank(t: &PsiTerm) -> u8 {
    match t {
        PsiTerm::Psi(_) => 0,
        PsiTerm::Omega => 1,
        PsiTerm::OmegaPow(_) => 2,
        PsiTerm::Zero | PsiTerm::Sum(_) => unreachable!("not a principal term"),
    }
}

fn cmp_principal(x: &PsiTerm, y: &PsiTerm) -> Ordering {
    match rank(x).cmp(&rank(y)) {
        Ordering::Equal => match (x, y) {
            (PsiTerm::Psi(a), PsiTerm::Psi(b)) => cmp_psi(a, b),
            (PsiTerm::Omega, PsiTerm::Omega) => Ordering::Equal,
            (PsiTerm::OmegaPow(a), PsiTerm::OmegaPow(b)) => cmp_psi(a, b),
            _ => unreachable!(),
        },
        ord => ord,
    }
}

/// Normalized ordinal sum with absorption.
pub fn add_psi(s: &PsiTerm, t: &PsiTerm) -> PsiTerm {
    let cs = components(s);
    let ct = components(t);
    let Some(head) = ct.first() else {
        return s.clone();
    };
    let mut out: Vec<PsiTerm> = cs
        .into_iter()
        .take_while(|x| cmp_principal(x, head) != Ordering::Less)
        .collect();
    out.extend(ct);
    rebuild(out)
}

fn rebuild(components: Vec<PsiTerm>) -> PsiTerm {
    match components.len() {
        0 => PsiTerm::Zero,
        1 => components.into_iter().next().unwrap(),
        _ => PsiTerm::Sum(components),
    }
}

/// `t * n` for a natural `n` (n-fold sum).
pub fn mul_nat(t: &PsiTerm, n: usize) -> PsiTerm {
    if n == 0 || *t == PsiTerm::Zero {
        return PsiTerm::Zero;
    }
    let cs = components(t);
    let mut out = Vec::with_capacity(cs.len() + n - 1);
    // Only copies of the leading component stack; in all but the last copy
    // the tail is absorbed by the next leading component.
    for _ in 1..n {
        out.push(cs[0].clone());
    }
    out.extend(cs);
    rebuild(out)
}

/// Membership in the closure `H_gamma(X)`: contains `0`, `Omega` and `X`,
/// and is closed under sums, omega-powers above `Omega`, and `psi(b)` for
/// `b` in the closure with `b < gamma`.
pub fn h_member(gamma: &PsiTerm, x: &[PsiTerm], t: &PsiTerm) -> bool {
    if x.contains(t) {
        return true;
    }
    match t {
        PsiTerm::Zero | PsiTerm::Omega => true,
        PsiTerm::Sum(items) => items.iter().all(|i| h_member(gamma, x, i)),
        PsiTerm::OmegaPow(e) => {
            cmp_psi(e, &PsiTerm::Omega) == Ordering::Greater && h_member(gamma, x, e)
        }
        PsiTerm::Psi(b) => h_member(gamma, x, b) && cmp_psi(b, gamma) == Ordering::Less,
    }
}

/// `gamma + w^(Omega + a)`, normalized. For `a = 0` the omega-power
/// collapses to `Omega` itself, since `Omega` is an epsilon number.
pub fn hat(gamma: &PsiTerm, a: &PsiTerm) -> PsiTerm {
    add_psi(gamma, &omega_pow_above(a))
}

fn omega_pow_above(a: &PsiTerm) -> PsiTerm {
    if *a == PsiTerm::Zero {
        PsiTerm::Omega
    } else {
        PsiTerm::OmegaPow(Box::new(add_psi(&PsiTerm::Omega, a)))
    }
}

/// The ordinal bookkeeping of the collapsing recursion at step `m >= 1`.
pub fn collapse_steps(gamma: &PsiTerm, a0: &PsiTerm, m: usize) -> CollapseSteps {
    assert!(m >= 1, "collapse step index must be at least 1");
    let b_m = collapse_b(gamma, a0, m);
    let beta_m = psi_app(b_m.clone());
    CollapseSteps { gamma: gamma.clone(), a0: a0.clone(), m, b_m, beta_m }
}

/// `gamma + w^(Omega+a0) * m`.
pub fn collapse_b(gamma: &PsiTerm, a0: &PsiTerm, m: usize) -> PsiTerm {
    add_psi(gamma, &mul_nat(&omega_pow_above(a0), m))
}

/// Node count of the term tree.
pub fn size(t: &PsiTerm) -> usize {
    match t {
        PsiTerm::Zero | PsiTerm::Omega => 1,
        PsiTerm::OmegaPow(e) => 1 + size(e),
        PsiTerm::Psi(a) => 1 + size(a),
        PsiTerm::Sum(items) => 1 + items.iter().map(size).sum::<usize>(),
    }
}

/// Built only from `0`, `+` and `psi` with countable arguments?
pub fn is_countable_psi(t: &PsiTerm) -> bool {
    match t {
        PsiTerm::Zero => true,
        PsiTerm::Omega | PsiTerm::OmegaPow(_) => false,
        PsiTerm::Psi(a) => is_countable_psi(a),
        PsiTerm::Sum(items) => items.iter().all(is_countable_psi),
    }
}

/// Evaluation of the countable fragment into Cantor normal form:
/// `psi(a) = w^a`, anchored by `psi(0) = 1` and `psi(1) = w`.
pub fn eval_countable_psi(t: &PsiTerm) -> Result<crate::cnf::Ordinal, PsiError> {
    match t {
        PsiTerm::Zero => Ok(crate::cnf::Ordinal::zero()),
        PsiTerm::Omega | PsiTerm::OmegaPow(_) => Err(PsiError::Uncountable(t.clone())),
        PsiTerm::Psi(a) => Ok(eval_countable_psi(a)?.omega_pow()),
        PsiTerm::Sum(items) => {
            let mut acc = crate::cnf::Ordinal::zero();
            for item in items {
                acc = acc.add(&eval_countable_psi(item)?);
            }
            Ok(acc)
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// All valid terms with node count at most `size_bound`, each exactly once.
pub fn enumerate_psi(size_bound: usize) -> Vec<PsiTerm> {
    terms_by_size(size_bound).into_iter().flatten().collect()
}

/// Valid terms grouped by exact node count.
pub fn terms_by_size(max_size: usize) -> Vec<Vec<PsiTerm>> {
    let mut by_size: Vec<Vec<PsiTerm>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        let mut terms = Vec::new();
        if s == 1 {
            terms.push(PsiTerm::Zero);
            terms.push(PsiTerm::Omega);
        }
        if s >= 2 {
            for arg in &by_size[s - 1] {
                terms.push(psi_app(arg.clone()));
            }
            for exp in &by_size[s - 1] {
                if cmp_psi(exp, &PsiTerm::Omega) == Ordering::Greater {
                    terms.push(PsiTerm::OmegaPow(Box::new(exp.clone())));
                }
            }
            for items in gen_component_lists(s - 1, None, &by_size) {
                if items.len() >= 2 {
                    terms.push(PsiTerm::Sum(items));
                }
            }
        }
        by_size[s] = terms;
    }
    by_size
}

/// Weakly decreasing lists of principal terms with total size `budget`.
fn gen_component_lists(
    budget: usize,
    upper: Option<&PsiTerm>,
    by_size: &[Vec<PsiTerm>],
) -> Vec<Vec<PsiTerm>> {
    let mut out = Vec::new();
    let admissible = |t: &PsiTerm, upper: Option<&PsiTerm>| {
        !matches!(t, PsiTerm::Zero | PsiTerm::Sum(_))
            && upper.map_or(true, |u| cmp_psi(t, u) != Ordering::Greater)
    };
    for first_size in 1..budget {
        for t in &by_size[first_size] {
            if !admissible(t, upper) {
                continue;
            }
            for rest in gen_component_lists(budget - first_size, Some(t), by_size) {
                let mut list = vec![t.clone()];
                list.extend(rest);
                out.push(list);
            }
        }
    }
    if budget >= 1 {
        for t in &by_size[budget] {
            if admissible(t, upper) {
                out.push(vec![t.clone()]);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Wire syntax and pretty printing

/// Canonical s-expression syntax: `0`, `Om`, `(w EXP)`, `(p ARG)`,
/// `(sum T1 T2 ...)`.
pub fn to_sexpr(t: &PsiTerm) -> String {
    sexpr_of(t).to_string()
}

fn sexpr_of(t: &PsiTerm) -> Sexpr {
    match t {
        PsiTerm::Zero => Sexpr::Atom("0".into()),
        PsiTerm::Omega => Sexpr::Atom("Om".into()),
        PsiTerm::OmegaPow(e) => Sexpr::List(vec![Sexpr::Atom("w".into()), sexpr_of(e)]),
        PsiTerm::Psi(a) => Sexpr::List(vec![Sexpr::Atom("p".into()), sexpr_of(a)]),
        PsiTerm::Sum(items) => {
            let mut out = vec![Sexpr::Atom("sum".into())];
            out.extend(items.iter().map(sexpr_of));
            Sexpr::List(out)
        }
    }
}

/// Parses the canonical syntax and validates the result.
pub fn parse_psi(input: &str) -> Result<PsiTerm, PsiError> {
    let e = sexpr::parse(input).map_err(|e| PsiError::Parse(e.to_string()))?;
    let t = term_of_sexpr(&e)?;
    let report = validate_psi(&t);
    if report.is_empty() {
        Ok(t)
    } else {
        Err(PsiError::Invalid(report))
    }
}

fn term_of_sexpr(e: &Sexpr) -> Result<PsiTerm, PsiError> {
    match e {
        Sexpr::Atom(s) if s == "0" => Ok(PsiTerm::Zero),
        Sexpr::Atom(s) if s == "Om" => Ok(PsiTerm::Omega),
        Sexpr::Atom(s) => Err(PsiError::Parse(format!("unknown atom `{s}`"))),
        Sexpr::List(items) => match items.split_first() {
            Some((Sexpr::Atom(head), rest)) if head == "w" && rest.len() == 1 => {
                Ok(PsiTerm::OmegaPow(Box::new(term_of_sexpr(&rest[0])?)))
            }
            Some((Sexpr::Atom(head), rest)) if head == "p" && rest.len() == 1 => {
                Ok(psi_app(term_of_sexpr(&rest[0])?))
            }
            Some((Sexpr::Atom(head), rest)) if head == "sum" && rest.len() >= 2 => {
                let mut out = Vec::new();
                for item in rest {
                    out.push(term_of_sexpr(item)?);
                }
                Ok(PsiTerm::Sum(out))
            }
            _ => Err(PsiError::Parse(format!("unrecognized form `{e}`"))),
        },
    }
}

impl std::fmt::Display for PsiTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsiTerm::Zero => write!(f, "0"),
            PsiTerm::Omega => write!(f, "Om"),
            PsiTerm::OmegaPow(e) => {
                if matches!(**e, PsiTerm::Sum(_)) {
                    write!(f, "w^({e})")
                } else {
                    write!(f, "w^{e}")
                }
            }
            PsiTerm::Psi(a) => write!(f, "p({a})"),
            PsiTerm::Sum(items) => {
                let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Ordinal;

    fn om() -> PsiTerm {
        PsiTerm::Omega
    }

    #[test]
    fn g_set_examples() {
        assert!(g_set(&om()).is_empty());
        assert_eq!(g_set(&psi_app(om())), BTreeSet::from([om()]));
        // w^(Omega + psi(0)) has G = {0}.
        let t = omega_pow(add_psi(&om(), &one())).unwrap();
        assert_eq!(g_set(&t), BTreeSet::from([PsiTerm::Zero]));
    }

    #[test]
    fn nf_examples() {
        assert!(is_nf(&one()));
        // psi(psi(0)): G = {0} and 0 < psi(0).
        assert!(is_nf(&psi_app(one())));
        // psi(psi(Omega)): G(psi(Omega)) = {Omega}, and Omega is not below
        // psi(Omega).
        assert!(!is_nf(&psi_app(psi_app(om()))));
    }

    #[test]
    fn cmp_examples() {
        // psi(0) < psi(1) with 1 = psi(0)
        assert_eq!(cmp_psi(&one(), &psi_app(one())), Ordering::Less);
        assert_eq!(cmp_psi(&psi_app(om()), &om()), Ordering::Less);
        let lhs = psi_app(omega_pow(add_psi(&om(), &one())).unwrap());
        let rhs = psi_app(omega_pow(add_psi(&om(), &psi_app(one()))).unwrap());
        assert_eq!(cmp_psi(&lhs, &rhs), Ordering::Less);
        assert!(cmp_psi_nf(&lhs, &rhs).is_ok());
        assert!(cmp_psi_nf(&psi_app(psi_app(om())), &om()).is_err());
    }

    #[test]
    fn add_and_constructor_examples() {
        let s = add_psi(&om(), &one());
        assert_eq!(s, PsiTerm::Sum(vec![om(), one()]));
        assert!(is_valid(&s));
        // 1 + Omega = Omega
        assert_eq!(add_psi(&one(), &om()), om());
        assert!(matches!(omega_pow(one()), Err(PsiError::LowExponent(_))));
        assert!(matches!(omega_pow(om()), Err(PsiError::LowExponent(_))));
    }

    #[test]
    fn mul_nat_shapes() {
        assert_eq!(mul_nat(&om(), 3), PsiTerm::Sum(vec![om(), om(), om()]));
        assert_eq!(mul_nat(&one(), 1), one());
        assert_eq!(mul_nat(&PsiTerm::Zero, 5), PsiTerm::Zero);
        // (Omega + 1) * 2 = Omega + Omega + 1
        let t = add_psi(&om(), &one());
        assert_eq!(mul_nat(&t, 2), PsiTerm::Sum(vec![om(), om(), one()]));
    }

    #[test]
    fn h_member_examples() {
        assert!(h_member(&PsiTerm::Zero, &[], &om()));
        // psi(psi(0)) is in H_2 but not in H_1: the inner index needs 1 < gamma.
        assert!(h_member(&nat(2), &[], &psi_app(one())));
        assert!(!h_member(&one(), &[], &psi_app(one())));
        // X-members are admitted directly.
        let t = psi_app(om());
        assert!(h_member(&PsiTerm::Zero, &[t.clone()], &t));
    }

    #[test]
    fn h_member_monotone_small() {
        let universe = enumerate_psi(4);
        let gammas = [PsiTerm::Zero, one(), nat(2), om()];
        for t in &universe {
            for g1 in &gammas {
                for g2 in &gammas {
                    if cmp_psi(g1, g2) != Ordering::Greater && h_member(g1, &[], t) {
                        assert!(
                            h_member(g2, &[], t),
                            "monotonicity violated: {t} in H_{g1} but not H_{g2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hat_examples() {
        // gamma = a = 0: w^Omega collapses to Omega itself.
        assert_eq!(hat(&PsiTerm::Zero, &PsiTerm::Zero), om());
        // psi(0) + w^(Omega+1) absorbs the countable part.
        let expected = omega_pow(add_psi(&om(), &one())).unwrap();
        assert_eq!(hat(&one(), &one()), expected);
        // Increasing the exponent absorbs the smaller omega-power.
        let low = omega_pow(add_psi(&om(), &one())).unwrap();
        let expected_high = omega_pow(add_psi(&om(), &psi_app(one()))).unwrap();
        assert_eq!(hat(&low, &psi_app(one())), expected_high);
    }

    #[test]
    fn collapse_steps_examples() {
        let s1 = collapse_steps(&PsiTerm::Zero, &PsiTerm::Zero, 1);
        assert_eq!(s1.b_m, om());
        assert_eq!(s1.beta_m, psi_app(om()));
        let s2 = collapse_steps(&PsiTerm::Zero, &PsiTerm::Zero, 2);
        assert_eq!(s2.b_m, PsiTerm::Sum(vec![om(), om()]));
        assert_eq!(cmp_psi(&s1.beta_m, &s2.beta_m), Ordering::Less);
        // a0 = psi(1) = w: b_5 = w^(Omega+w) * 5.
        let s5 = collapse_steps(&PsiTerm::Zero, &psi_app(one()), 5);
        let pow = omega_pow(add_psi(&om(), &psi_app(one()))).unwrap();
        assert_eq!(s5.b_m, PsiTerm::Sum(vec![pow; 5]));
        assert!(is_nf(&s5.beta_m));
        assert!(is_valid(&s5.b_m));
    }

    #[test]
    fn beta_m_strictly_increasing() {
        let samples = [
            (PsiTerm::Zero, PsiTerm::Zero),
            (PsiTerm::Zero, one()),
            (one(), psi_app(one())),
            (om(), nat(2)),
        ];
        for (gamma, a0) in samples {
            for m in 1..5 {
                let lo = collapse_steps(&gamma, &a0, m);
                let hi = collapse_steps(&gamma, &a0, m + 1);
                assert_eq!(cmp_psi(&lo.beta_m, &hi.beta_m), Ordering::Less);
            }
        }
    }

    #[test]
    fn collapsing_monotone_in_a() {
        // a0 < a implies psi(hat(gamma, a0)) < psi(hat(gamma, a)).
        let gammas = [PsiTerm::Zero, one(), om()];
        let a_values = [PsiTerm::Zero, one(), nat(2), psi_app(one())];
        for gamma in &gammas {
            for a0 in &a_values {
                for a in &a_values {
                    if cmp_psi(a0, a) == Ordering::Less {
                        let lo = psi_app(hat(gamma, a0));
                        let hi = psi_app(hat(gamma, a));
                        assert_eq!(
                            cmp_psi(&lo, &hi),
                            Ordering::Less,
                            "gamma={gamma} a0={a0} a={a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eval_countable_examples() {
        assert_eq!(eval_countable_psi(&one()).unwrap(), Ordinal::one());
        assert_eq!(eval_countable_psi(&psi_app(one())).unwrap(), Ordinal::omega());
        assert_eq!(
            eval_countable_psi(&psi_app(nat(2))).unwrap(),
            Ordinal::from_nat(2).omega_pow()
        );
        assert!(eval_countable_psi(&om()).is_err());
    }

    #[test]
    fn countable_order_agrees_with_cnf_at_small_sizes() {
        let countable: Vec<PsiTerm> = enumerate_psi(7)
            .into_iter()
            .filter(|t| is_countable_psi(t) && is_nf(t))
            .collect();
        assert!(countable.len() > 10);
        for s in &countable {
            for t in &countable {
                let lhs = cmp_psi(s, t);
                let rhs = eval_countable_psi(s).unwrap().cmp(&eval_countable_psi(t).unwrap());
                assert_eq!(lhs, rhs, "disagreement on {s} vs {t}");
            }
        }
    }

    #[test]
    fn enumeration_small_and_unique() {
        assert_eq!(enumerate_psi(1), vec![PsiTerm::Zero, om()]);
        let terms = enumerate_psi(6);
        let set: BTreeSet<_> = terms.iter().cloned().collect();
        assert_eq!(set.len(), terms.len());
        for t in &terms {
            assert!(is_valid(t), "invalid enumerated term {t}");
            assert!(size(t) <= 6);
        }
        assert!(terms.contains(&omega_pow(add_psi(&om(), &one())).unwrap()));
    }

    /// The collapsed value `psi(a)` is least with `H_a(b) /\ Omega <= b`
    /// over the enumerated countable universe, spot-checked at 1, w, w^2.
    #[test]
    fn psi_minimality_spot_check() {
        let universe: Vec<PsiTerm> = enumerate_psi(7)
            .into_iter()
            .filter(|t| is_countable_psi(t) && is_nf(t))
            .collect();
        let closure_ok = |alpha: &PsiTerm, beta: &PsiTerm| -> bool {
            let below: Vec<PsiTerm> = universe
                .iter()
                .filter(|u| cmp_psi(u, beta) == Ordering::Less)
                .cloned()
                .collect();
            universe
                .iter()
                .all(|u| !h_member(alpha, &below, u) || cmp_psi(u, beta) == Ordering::Less)
        };
        for target in [one(), psi_app(one()), psi_app(nat(2))] {
            let PsiTerm::Psi(alpha) = &target else { unreachable!() };
            assert!(closure_ok(alpha, &target), "closure escapes at {target}");
            for beta in &universe {
                if cmp_psi(beta, &target) == Ordering::Less {
                    assert!(!closure_ok(alpha, beta), "minimality of {target} violated at {beta}");
                }
            }
        }
    }

    #[test]
    fn parse_print_roundtrip() {
        for t in enumerate_psi(6) {
            let wire = to_sexpr(&t);
            assert_eq!(parse_psi(&wire).unwrap(), t, "roundtrip failed for {wire}");
        }
    }

    #[test]
    fn parse_rejects_invalid() {
        assert!(parse_psi("(w (p 0))").is_err());
        assert!(parse_psi("(sum (p 0))").is_err());
        assert!(parse_psi("(sum (p 0) Om)").is_err());
    }
}
