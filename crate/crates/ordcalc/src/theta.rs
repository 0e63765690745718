//! Ordinal notation system over the symbols `{0, Omega, +, theta}`.
//!
//! Terms denote ordinals in base-Omega Cantor normal form
//! `Omega^a_{n-1}*b_{n-1} + ... + Omega^a_0*b_0` with strictly decreasing
//! exponents and countable nonzero coefficients, where the countable values
//! are generated by the collapsing function `theta` (written `v` in the wire
//! syntax). Coefficients are weakly decreasing sums of theta-applications;
//! a purely countable, non-principal value is the one-monomial sum with
//! exponent `0`. `Omega` itself is the monomial `Omega^1*1` with
//! `1 = theta(0)`.
//!
//! Comparison of theta-applications follows the coefficient-set rule
//!
//! `theta(a) < theta(b)  iff  (a < b and K(a) < theta(b))
//!                            or some d in K(b) has theta(a) <= d`
//!
//! where `K` collects the countable coefficients occurring in a term.
//! Every `theta` value is additively closed, which the property tests
//! exercise; the countable fragment is checked against [`crate::cnf`].

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::sexpr::{self, Sexpr};
use crate::{push_diag, Report};

/// A term of the notation system.
///
/// The derived `Ord` is structural and used only for sets and maps; the
/// semantic order is [`cmp_theta`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaTerm {
    Zero,
    /// `theta(argument)`; always a countable, additively principal value.
    App(Box<ThetaTerm>),
    /// Base-Omega normal form, exponents strictly decreasing left to right.
    Sum(Vec<Monomial>),
}

/// One monomial `Omega^exponent * coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponent: ThetaTerm,
    /// Non-empty, weakly decreasing list of `App` terms; their sum is the
    /// countable coefficient.
    pub coefficient: Vec<ThetaTerm>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid term: {}", format_report(.0))]
    Invalid(Report),
    #[error("term is outside the countable fragment at {0}")]
    Uncountable(String),
}

fn format_report(report: &Report) -> String {
    report.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

pub fn zero() -> ThetaTerm {
    ThetaTerm::Zero
}

/// `theta(arg)`.
pub fn app(arg: ThetaTerm) -> ThetaTerm {
    ThetaTerm::App(Box::new(arg))
}

/// `1 = theta(0)`.
pub fn one() -> ThetaTerm {
    app(ThetaTerm::Zero)
}

/// The numeral `n` as an n-fold sum of `theta(0)`.
pub fn nat(n: usize) -> ThetaTerm {
    match n {
        0 => ThetaTerm::Zero,
        1 => one(),
        _ => ThetaTerm::Sum(vec![Monomial { exponent: ThetaTerm::Zero, coefficient: vec![one(); n] }]),
    }
}

/// `Omega = Omega^1 * 1`.
pub fn omega_cap() -> ThetaTerm {
    ThetaTerm::Sum(vec![Monomial { exponent: one(), coefficient: vec![one()] }])
}

/// `Omega^e * (sum of coefficient apps)`, unvalidated.
pub fn monomial(exponent: ThetaTerm, coefficient: Vec<ThetaTerm>) -> ThetaTerm {
    ThetaTerm::Sum(vec![Monomial { exponent, coefficient }])
}

/// Structural validity: exactly the terms of the notation system.
pub fn validate_theta(t: &ThetaTerm) -> Report {
    let mut report = Report::new();
    let mut path = Vec::new();
    validate_at(t, &mut path, &mut report);
    report
}

fn validate_at(t: &ThetaTerm, path: &mut Vec<usize>, report: &mut Report) {
    match t {
        ThetaTerm::Zero => {}
        ThetaTerm::App(arg) => {
            path.push(0);
            validate_at(arg, path, report);
            path.pop();
        }
        ThetaTerm::Sum(monomials) => {
            if monomials.is_empty() {
                push_diag(report, path, "sum must contain at least one monomial");
                return;
            }
            for (i, m) in monomials.iter().enumerate() {
                path.push(i);
                validate_monomial(m, path, report);
                path.pop();
            }
            // Exponents strictly decrease left to right.
            for (i, pair) in monomials.windows(2).enumerate() {
                if cmp_theta(&pair[0].exponent, &pair[1].exponent) != Ordering::Greater {
                    path.push(i + 1);
                    push_diag(report, path, "sum exponents must strictly decrease");
                    path.pop();
                }
            }
            // A one-monomial sum with exponent 0 and a single coefficient
            // term would duplicate the bare theta-application.
            if monomials.len() == 1
                && monomials[0].exponent == ThetaTerm::Zero
                && monomials[0].coefficient.len() == 1
            {
                push_diag(report, path, "redundant wrapper: exponent 0 with a single coefficient term");
            }
        }
    }
}

fn validate_monomial(m: &Monomial, path: &mut Vec<usize>, report: &mut Report) {
    validate_at(&m.exponent, path, report);
    if m.coefficient.is_empty() {
        push_diag(report, path, "coefficient must be a non-empty sum of theta terms");
        return;
    }
    for (j, c) in m.coefficient.iter().enumerate() {
        if !matches!(c, ThetaTerm::App(_)) {
            path.push(j);
            push_diag(report, path, "coefficient components must be theta applications");
            path.pop();
        } else {
            path.push(j);
            validate_at(c, path, report);
            path.pop();
        }
    }
    for (j, pair) in m.coefficient.windows(2).enumerate() {
        if cmp_theta(&pair[0], &pair[1]) == Ordering::Less {
            path.push(j + 1);
            push_diag(report, path, "coefficient components must be weakly decreasing");
            path.pop();
        }
    }
}

pub fn is_valid(t: &ThetaTerm) -> bool {
    validate_theta(t).is_empty()
}

/// The coefficient set `K`.
///
/// `K(0) = {}`, `K(theta(b)) = {theta(b)}`, and a sum contributes the `K`-sets
/// of its exponents together with the theta-components of its coefficients
/// (so the numeral `k` has `K(k) = {1}`).
pub fn k_set(t: &ThetaTerm) -> BTreeSet<ThetaTerm> {
    let mut out = BTreeSet::new();
    collect_k(t, &mut out);
    out
}

fn collect_k(t: &ThetaTerm, out: &mut BTreeSet<ThetaTerm>) {
    match t {
        ThetaTerm::Zero => {}
        ThetaTerm::App(_) => {
            out.insert(t.clone());
        }
        ThetaTerm::Sum(monomials) => {
            for m in monomials {
                collect_k(&m.exponent, out);
                for c in &m.coefficient {
                    out.insert(c.clone());
                }
            }
        }
    }
}

/// Total comparison of valid terms; the unique order extending the
/// theta-application rule by base-Omega lexicographic comparison.
pub fn cmp_theta(s: &ThetaTerm, t: &ThetaTerm) -> Ordering {
    if s == t {
        return Ordering::Equal;
    }
    match (s, t) {
        (ThetaTerm::Zero, _) => Ordering::Less,
        (_, ThetaTerm::Zero) => Ordering::Greater,
        (ThetaTerm::App(a), ThetaTerm::App(b)) => {
            if app_less(a, b) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        _ => {
            let ms = monomial_view(s);
            let mt = monomial_view(t);
            cmp_monomials(&ms, &mt)
        }
    }
}

/// `theta(a) < theta(b)` per the coefficient-set rule.
fn app_less(a: &ThetaTerm, b: &ThetaTerm) -> bool {
    let tb = app(b.clone());
    if cmp_theta(a, b) == Ordering::Less
        && k_set(a).iter().all(|g| cmp_theta(g, &tb) == Ordering::Less)
    {
        return true;
    }
    let ta = app(a.clone());
    k_set(b).iter().any(|d| cmp_theta(&ta, d) != Ordering::Greater)
}

/// A term as a list of monomials: `0` is empty, an application is
/// `Omega^0 * itself`.
fn monomial_view(t: &ThetaTerm) -> Vec<Monomial> {
    match t {
        ThetaTerm::Zero => Vec::new(),
        ThetaTerm::App(_) => {
            vec![Monomial { exponent: ThetaTerm::Zero, coefficient: vec![t.clone()] }]
        }
        ThetaTerm::Sum(ms) => ms.clone(),
    }
}

fn cmp_monomials(a: &[Monomial], b: &[Monomial]) -> Ordering {
    for i in 0.. {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = cmp_theta(&x.exponent, &y.exponent)
                    .then_with(|| cmp_coefficient(&x.coefficient, &y.coefficient));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
    unreachable!()
}

fn cmp_coefficient(a: &[ThetaTerm], b: &[ThetaTerm]) -> Ordering {
    for i in 0.. {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match cmp_theta(x, y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
        }
    }
    unreachable!()
}

/// Normalized ordinal sum `s + t`.
pub fn add_theta(s: &ThetaTerm, t: &ThetaTerm) -> ThetaTerm {
    let ms = monomial_view(s);
    let mt = monomial_view(t);
    let Some(head) = mt.first() else {
        return s.clone();
    };
    let mut out: Vec<Monomial> = Vec::new();
    let mut merged = false;
    for m in &ms {
        match cmp_theta(&m.exponent, &head.exponent) {
            Ordering::Greater => out.push(m.clone()),
            Ordering::Equal => {
                out.push(Monomial {
                    exponent: m.exponent.clone(),
                    coefficient: add_coefficient(&m.coefficient, &head.coefficient),
                });
                merged = true;
                break;
            }
            Ordering::Less => break,
        }
    }
    if merged {
        out.extend(mt[1..].iter().cloned());
    } else {
        out.extend(mt.iter().cloned());
    }
    rebuild(out)
}

fn add_coefficient(a: &[ThetaTerm], b: &[ThetaTerm]) -> Vec<ThetaTerm> {
    let head = &b[0];
    let mut out: Vec<ThetaTerm> = a
        .iter()
        .take_while(|x| cmp_theta(x, head) != Ordering::Less)
        .cloned()
        .collect();
    out.extend(b.iter().cloned());
    out
}

fn rebuild(monomials: Vec<Monomial>) -> ThetaTerm {
    if monomials.is_empty() {
        return ThetaTerm::Zero;
    }
    if monomials.len() == 1
        && monomials[0].exponent == ThetaTerm::Zero
        && monomials[0].coefficient.len() == 1
    {
        return monomials[0].coefficient[0].clone();
    }
    ThetaTerm::Sum(monomials)
}

/// Node count of the term tree.
pub fn size(t: &ThetaTerm) -> usize {
    match t {
        ThetaTerm::Zero => 1,
        ThetaTerm::App(a) => 1 + size(a),
        ThetaTerm::Sum(ms) => {
            1 + ms
                .iter()
                .map(|m| size(&m.exponent) + m.coefficient.iter().map(size).sum::<usize>())
                .sum::<usize>()
        }
    }
}

/// Is the term free of Omega-monomials with nonzero exponent, recursively?
pub fn is_countable(t: &ThetaTerm) -> bool {
    match t {
        ThetaTerm::Zero => true,
        ThetaTerm::App(a) => is_countable(a),
        ThetaTerm::Sum(ms) => {
            ms.iter().all(|m| {
                m.exponent == ThetaTerm::Zero && m.coefficient.iter().all(is_countable)
            })
        }
    }
}

/// Evaluation of the countable fragment into Cantor normal form, anchored by
/// `theta(0) = 1` and `theta(1) = w`: `theta(a)` evaluates to `w^a`.
pub fn eval_countable_theta(t: &ThetaTerm) -> Result<crate::cnf::Ordinal, ThetaError> {
    eval_countable_at(t, &mut Vec::new())
}

fn eval_countable_at(t: &ThetaTerm, path: &mut Vec<usize>) -> Result<crate::cnf::Ordinal, ThetaError> {
    match t {
        ThetaTerm::Zero => Ok(crate::cnf::Ordinal::zero()),
        ThetaTerm::App(a) => {
            path.push(0);
            let v = eval_countable_at(a, path)?;
            path.pop();
            Ok(v.omega_pow())
        }
        ThetaTerm::Sum(ms) => {
            let mut acc = crate::cnf::Ordinal::zero();
            for (i, m) in ms.iter().enumerate() {
                if m.exponent != ThetaTerm::Zero {
                    let p = path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
                    return Err(ThetaError::Uncountable(if p.is_empty() {
                        format!("monomial {i}")
                    } else {
                        format!("{p}, monomial {i}")
                    }));
                }
                for (j, c) in m.coefficient.iter().enumerate() {
                    path.push(j);
                    let v = eval_countable_at(c, path)?;
                    path.pop();
                    acc = acc.add(&v);
                }
            }
            Ok(acc)
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// All valid terms with node count at most `size_bound`, each exactly once,
/// in size-then-construction order. `size_bound = 0` yields nothing.
pub fn enumerate_theta(size_bound: usize) -> Vec<ThetaTerm> {
    let by_size = terms_by_size(size_bound);
    by_size.into_iter().flatten().collect()
}

/// Valid terms grouped by exact node count, index = size (entry 0 unused).
pub fn terms_by_size(max_size: usize) -> Vec<Vec<ThetaTerm>> {
    let mut by_size: Vec<Vec<ThetaTerm>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        let mut terms = Vec::new();
        if s == 1 {
            terms.push(ThetaTerm::Zero);
        }
        if s >= 2 {
            for arg in &by_size[s - 1] {
                terms.push(app(arg.clone()));
            }
            for monomials in gen_monomial_lists(s - 1, None, &by_size) {
                if monomials.len() == 1
                    && monomials[0].exponent == ThetaTerm::Zero
                    && monomials[0].coefficient.len() == 1
                {
                    continue;
                }
                terms.push(ThetaTerm::Sum(monomials));
            }
        }
        by_size[s] = terms;
    }
    by_size
}

/// Non-empty monomial lists of total content size `budget`, exponents
/// strictly below `upper` (when given) and strictly decreasing.
fn gen_monomial_lists(
    budget: usize,
    upper: Option<&ThetaTerm>,
    by_size: &[Vec<ThetaTerm>],
) -> Vec<Vec<Monomial>> {
    let mut out = Vec::new();
    if budget == 0 {
        return out;
    }
    // First monomial takes `head` of the budget: exponent + coefficient.
    for head in 2..=budget {
        for exp_size in 1..=head - 1 {
            for exp in &by_size[exp_size] {
                if let Some(u) = upper {
                    if cmp_theta(exp, u) != Ordering::Less {
                        continue;
                    }
                }
                let coef_size = head - exp_size;
                for coef in gen_app_lists(coef_size, None, by_size) {
                    let mono = Monomial { exponent: exp.clone(), coefficient: coef };
                    if head == budget {
                        out.push(vec![mono.clone()]);
                    }
                    if budget > head {
                        for rest in gen_monomial_lists(budget - head, Some(exp), by_size) {
                            let mut list = vec![mono.clone()];
                            list.extend(rest);
                            out.push(list);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Non-empty weakly decreasing lists of applications with total size
/// `budget`, first component at most `upper` (when given).
fn gen_app_lists(
    budget: usize,
    upper: Option<&ThetaTerm>,
    by_size: &[Vec<ThetaTerm>],
) -> Vec<Vec<ThetaTerm>> {
    let mut out = Vec::new();
    if budget == 0 {
        return out;
    }
    for first_size in 2..=budget {
        for arg in &by_size[first_size - 1] {
            let first = app(arg.clone());
            if let Some(u) = upper {
                if cmp_theta(&first, u) == Ordering::Greater {
                    continue;
                }
            }
            if first_size == budget {
                out.push(vec![first.clone()]);
            } else {
                for rest in gen_app_lists(budget - first_size, Some(&first), by_size) {
                    let mut list = vec![first.clone()];
                    list.extend(rest);
                    out.push(list);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Wire syntax and pretty printing

/// Canonical s-expression syntax: `0`, `(v ARG)`,
/// `(sum (mono EXP (cs APP...)) ...)`.
pub fn to_sexpr(t: &ThetaTerm) -> String {
    sexpr_of(t).to_string()
}

fn sexpr_of(t: &ThetaTerm) -> Sexpr {
    match t {
        ThetaTerm::Zero => Sexpr::Atom("0".into()),
        ThetaTerm::App(a) => Sexpr::List(vec![Sexpr::Atom("v".into()), sexpr_of(a)]),
        ThetaTerm::Sum(ms) => {
            let mut items = vec![Sexpr::Atom("sum".into())];
            for m in ms {
                let mut coef = vec![Sexpr::Atom("cs".into())];
                coef.extend(m.coefficient.iter().map(sexpr_of));
                items.push(Sexpr::List(vec![
                    Sexpr::Atom("mono".into()),
                    sexpr_of(&m.exponent),
                    Sexpr::List(coef),
                ]));
            }
            Sexpr::List(items)
        }
    }
}

/// Parses the canonical syntax and validates the result.
pub fn parse_theta(input: &str) -> Result<ThetaTerm, ThetaError> {
    let e = sexpr::parse(input).map_err(|e| ThetaError::Parse(e.to_string()))?;
    let t = term_of_sexpr(&e)?;
    let report = validate_theta(&t);
    if report.is_empty() {
        Ok(t)
    } else {
        Err(ThetaError::Invalid(report))
    }
}

fn term_of_sexpr(e: &Sexpr) -> Result<ThetaTerm, ThetaError> {
    match e {
        Sexpr::Atom(s) if s == "0" => Ok(ThetaTerm::Zero),
        Sexpr::Atom(s) => Err(ThetaError::Parse(format!("unknown atom `{s}`"))),
        Sexpr::List(items) => match items.split_first() {
            Some((Sexpr::Atom(head), rest)) if head == "v" => {
                if rest.len() != 1 {
                    return Err(ThetaError::Parse("`v` takes exactly one argument".into()));
                }
                Ok(app(term_of_sexpr(&rest[0])?))
            }
            Some((Sexpr::Atom(head), rest)) if head == "sum" => {
                if rest.is_empty() {
                    return Err(ThetaError::Parse("`sum` needs at least one monomial".into()));
                }
                let mut ms = Vec::new();
                for item in rest {
                    ms.push(monomial_of_sexpr(item)?);
                }
                Ok(ThetaTerm::Sum(ms))
            }
            _ => Err(ThetaError::Parse(format!("unrecognized form `{e}`"))),
        },
    }
}

fn monomial_of_sexpr(e: &Sexpr) -> Result<Monomial, ThetaError> {
    let items = e
        .list()
        .ok_or_else(|| ThetaError::Parse("monomial must be a list".into()))?;
    match items {
        [Sexpr::Atom(head), exp, coef] if head == "mono" => {
            let exponent = term_of_sexpr(exp)?;
            let citems = coef
                .list()
                .ok_or_else(|| ThetaError::Parse("coefficient must be a `(cs ...)` list".into()))?;
            match citems.split_first() {
                Some((Sexpr::Atom(c), rest)) if c == "cs" && !rest.is_empty() => {
                    let mut coefficient = Vec::new();
                    for item in rest {
                        coefficient.push(term_of_sexpr(item)?);
                    }
                    Ok(Monomial { exponent, coefficient })
                }
                _ => Err(ThetaError::Parse("coefficient must be a non-empty `(cs ...)` list".into())),
            }
        }
        _ => Err(ThetaError::Parse("monomial must be `(mono EXP (cs ...))`".into())),
    }
}

impl std::fmt::Display for ThetaTerm {
    /// Human-readable form: `0`, `v(b)`, `O` for Omega, `O^a*b` monomials
    /// joined by `+`. The canonical wire syntax is [`to_sexpr`].
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaTerm::Zero => write!(f, "0"),
            ThetaTerm::App(a) => write!(f, "v({a})"),
            ThetaTerm::Sum(ms) => {
                if *self == omega_cap() {
                    return write!(f, "O");
                }
                let mut first = true;
                for m in ms {
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    let coef = m
                        .coefficient
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join("+");
                    if m.exponent == ThetaTerm::Zero {
                        write!(f, "{coef}")?;
                    } else {
                        let exp = m.exponent.to_string();
                        let exp = if matches!(m.exponent, ThetaTerm::Sum(_)) {
                            format!("({exp})")
                        } else {
                            exp
                        };
                        if m.coefficient.len() == 1 {
                            write!(f, "O^{exp}*{coef}")?;
                        } else {
                            write!(f, "O^{exp}*({coef})")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Ordinal;

    fn omega_sq() -> ThetaTerm {
        // Omega^2 * 1
        monomial(nat(2), vec![one()])
    }

    fn omega_times_omega() -> ThetaTerm {
        // Omega^1 * w  with w = theta(1)
        monomial(one(), vec![app(one())])
    }

    #[test]
    fn validate_examples() {
        assert!(is_valid(&omega_cap()));
        let wrapper = monomial(ThetaTerm::Zero, vec![one()]);
        let report = validate_theta(&wrapper);
        assert_eq!(report.len(), 1);
        assert!(report[0].message.contains("redundant wrapper"));
        assert!(is_valid(&app(omega_sq())));
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let bad_order = ThetaTerm::Sum(vec![
            Monomial { exponent: ThetaTerm::Zero, coefficient: vec![one()] },
            Monomial { exponent: one(), coefficient: vec![one()] },
        ]);
        assert!(!is_valid(&bad_order));
        let bad_coeff = monomial(one(), vec![ThetaTerm::Zero]);
        assert!(!is_valid(&bad_coeff));
        let weak_increase = monomial(one(), vec![one(), app(one())]);
        assert!(!is_valid(&weak_increase));
    }

    #[test]
    fn k_set_examples() {
        assert!(k_set(&ThetaTerm::Zero).is_empty());
        let t = app(omega_times_omega());
        assert_eq!(k_set(&t), BTreeSet::from([t.clone()]));
        // Omega^1 * theta(0): K(1) together with the coefficient 1.
        assert_eq!(k_set(&omega_cap()), BTreeSet::from([one()]));
        // Numerals contribute their components: K(2) = {1}.
        assert_eq!(k_set(&nat(2)), BTreeSet::from([one()]));
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(cmp_theta(&ThetaTerm::Zero, &one()), Ordering::Less);
        assert_eq!(cmp_theta(&one(), &app(one())), Ordering::Less);
        assert_eq!(cmp_theta(&app(omega_times_omega()), &app(omega_sq())), Ordering::Less);
        // Countable sanity: v(2) < v(w) and the reverse is Greater.
        let v2 = app(nat(2));
        let vw = app(app(one()));
        assert_eq!(cmp_theta(&v2, &vw), Ordering::Less);
        assert_eq!(cmp_theta(&vw, &v2), Ordering::Greater);
        assert_eq!(cmp_theta(&vw, &vw), Ordering::Equal);
    }

    #[test]
    fn add_examples() {
        let t = omega_cap();
        assert_eq!(add_theta(&t, &ThetaTerm::Zero), t);
        // 1 + w = w
        assert_eq!(add_theta(&one(), &app(one())), app(one()));
        // w + 1 keeps both parts
        let w_plus_1 = add_theta(&app(one()), &one());
        assert_eq!(w_plus_1, monomial(ThetaTerm::Zero, vec![app(one()), one()]));
        assert!(is_valid(&w_plus_1));
        // numerals add
        assert_eq!(add_theta(&nat(2), &nat(3)), nat(5));
    }

    #[test]
    fn enumerate_small_sizes() {
        assert_eq!(enumerate_theta(1), vec![ThetaTerm::Zero]);
        let up_to_2 = enumerate_theta(2);
        assert_eq!(up_to_2, vec![ThetaTerm::Zero, one()]);
    }

    /// Independent generate-and-filter enumeration used to cross-check the
    /// structured enumerator.
    fn naive_terms(max_size: usize) -> BTreeSet<ThetaTerm> {
        let mut by_size: Vec<Vec<ThetaTerm>> = vec![Vec::new(); max_size + 1];
        for s in 1..=max_size {
            let mut terms = Vec::new();
            if s == 1 {
                terms.push(ThetaTerm::Zero);
            }
            if s >= 2 {
                for arg in &by_size[s - 1] {
                    terms.push(app(arg.clone()));
                }
                for ms in naive_monomials(s - 1, &by_size) {
                    terms.push(ThetaTerm::Sum(ms));
                }
            }
            by_size[s] = terms;
        }
        by_size
            .into_iter()
            .flatten()
            .filter(is_valid)
            .collect()
    }

    fn naive_monomials(budget: usize, by_size: &[Vec<ThetaTerm>]) -> Vec<Vec<Monomial>> {
        let mut out = Vec::new();
        for head in 2..=budget {
            for exp_size in 1..head {
                for exp in &by_size[exp_size] {
                    for coef in naive_coefficients(head - exp_size, by_size) {
                        let mono = Monomial { exponent: exp.clone(), coefficient: coef };
                        if head == budget {
                            out.push(vec![mono.clone()]);
                        } else {
                            for rest in naive_monomials(budget - head, by_size) {
                                let mut list = vec![mono.clone()];
                                list.extend(rest);
                                out.push(list);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn naive_coefficients(budget: usize, by_size: &[Vec<ThetaTerm>]) -> Vec<Vec<ThetaTerm>> {
        let mut out = Vec::new();
        for first_size in 2..=budget {
            for t in &by_size[first_size] {
                if first_size == budget {
                    out.push(vec![t.clone()]);
                } else {
                    for rest in naive_coefficients(budget - first_size, by_size) {
                        let mut list = vec![t.clone()];
                        list.extend(rest);
                        out.push(list);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_naive_generator() {
        for bound in 1..=6 {
            let structured: BTreeSet<ThetaTerm> = enumerate_theta(bound).into_iter().collect();
            let naive = naive_terms(bound);
            assert_eq!(structured, naive, "size bound {bound}");
            assert_eq!(structured.len(), enumerate_theta(bound).len(), "duplicates at {bound}");
        }
    }

    #[test]
    fn enumeration_is_valid_and_unique() {
        let terms = enumerate_theta(7);
        let set: BTreeSet<_> = terms.iter().cloned().collect();
        assert_eq!(set.len(), terms.len());
        for t in &terms {
            assert!(is_valid(t), "invalid enumerated term {t}");
            assert!(size(t) <= 7);
        }
    }

    #[test]
    fn eval_countable_examples() {
        assert_eq!(eval_countable_theta(&one()).unwrap(), Ordinal::one());
        assert_eq!(eval_countable_theta(&app(one())).unwrap(), Ordinal::omega());
        // v(1+1) = w^2
        let v2 = app(nat(2));
        assert_eq!(
            eval_countable_theta(&v2).unwrap(),
            Ordinal::from_nat(2).omega_pow()
        );
        assert!(eval_countable_theta(&omega_cap()).is_err());
    }

    #[test]
    fn countable_order_agrees_with_cnf_at_small_sizes() {
        let countable: Vec<ThetaTerm> =
            enumerate_theta(6).into_iter().filter(is_countable).collect();
        for s in &countable {
            for t in &countable {
                let lhs = cmp_theta(s, t);
                let rhs = eval_countable_theta(s)
                    .unwrap()
                    .cmp(&eval_countable_theta(t).unwrap());
                assert_eq!(lhs, rhs, "disagreement on {s} vs {t}");
            }
        }
    }

    #[test]
    fn parse_print_roundtrip() {
        for t in enumerate_theta(6) {
            let wire = to_sexpr(&t);
            let parsed = parse_theta(&wire).unwrap();
            assert_eq!(parsed, t, "roundtrip failed for {wire}");
        }
    }

    #[test]
    fn parse_rejects_invalid() {
        assert!(parse_theta("(sum (mono 0 (cs (v 0))))").is_err());
        assert!(parse_theta("(v)").is_err());
        assert!(parse_theta("x").is_err());
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(omega_cap().to_string(), "O");
        assert_eq!(app(one()).to_string(), "v(v(0))");
        assert_eq!(nat(2).to_string(), "v(0)+v(0)");
        assert_eq!(omega_sq().to_string(), "O^(v(0)+v(0))*v(0)");
    }

    #[test]
    fn additive_closure_spot_checks() {
        // b, c < v(a) implies b + c < v(a) for a few concrete triples.
        let bound = app(nat(2)); // w^2
        let w = app(one());
        let cases = [
            (one(), one()),
            (w.clone(), w.clone()),
            (add_theta(&w, &one()), w.clone()),
        ];
        for (b, c) in cases {
            assert_eq!(cmp_theta(&b, &bound), Ordering::Less);
            assert_eq!(cmp_theta(&c, &bound), Ordering::Less);
            assert_eq!(cmp_theta(&add_theta(&b, &c), &bound), Ordering::Less);
        }
    }
}
