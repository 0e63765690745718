//! Formula-class machinery: polarity classes, the prenex hierarchies over
//! positive formulas and over fixpoint atoms, and the cut degree.
//!
//! Rank 0 over positive formulas swallows whole positive or negative
//! blocks, quantifiers included: a wholly positive formula sits at rank 0
//! no matter its shape. Only quantifiers standing outside the positive and
//! negative blocks raise the rank. Two rank computations are provided:
//!
//! * finitary: cumulative, closed under bounded quantification, with like
//!   quantifiers merged — every formula has a rank;
//! * infinitary: strictly alternating unbounded quantifiers over a matrix
//!   of finite conjunctions and disjunctions of positive and negative
//!   blocks — partial, formulas outside the shape have no rank.
//!
//! The degree of a formula is `0` when no top-index fixpoint atom occurs
//! and `1 +` its least infinitary rank otherwise.

use serde::Serialize;

use super::{has_omega_fix, is_negative, is_positive, Formula, FormulaError, StageTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyMode {
    Finitary,
    Infinitary,
}

/// Everything [`classify`] reports about a single formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDescriptor {
    pub is_pos: bool,
    pub is_neg: bool,
    /// Conjunction of a positive and a negative formula, in either order.
    pub is_p_and_n: bool,
    /// Disjunction of a negative and a positive formula, in either order.
    pub is_n_or_p: bool,
    /// Shape `A y (theta0 -> t0 in R)` for bounded arithmetic `theta0`.
    pub is_acc_formula: bool,
    /// Least `k` with the formula in `Pi^0_k` over positive formulas, in
    /// the selected mode; `None` outside the hierarchy (infinitary mode).
    pub pi_rank_p: Option<u32>,
    pub sigma_rank_p: Option<u32>,
    /// Least `k` in the hierarchy whose rank 0 is bounded formulas over
    /// fixpoint and arithmetic atoms (no block swallowing).
    pub pi_rank_omega: Option<u32>,
    pub sigma_rank_omega: Option<u32>,
}

pub fn classify(f: &Formula, mode: HierarchyMode) -> ClassDescriptor {
    let (pi_rank_p, sigma_rank_p) = match mode {
        HierarchyMode::Finitary => {
            let (p, s) = ranks_fin(f);
            (Some(p), Some(s))
        }
        HierarchyMode::Infinitary => ranks_inf(f),
    };
    let (pi_rank_omega, sigma_rank_omega) = ranks_omega(f);
    ClassDescriptor {
        is_pos: is_positive(f),
        is_neg: is_negative(f),
        is_p_and_n: matches!(f, Formula::And { lhs, rhs }
            if (is_positive(lhs) && is_negative(rhs)) || (is_negative(lhs) && is_positive(rhs))),
        is_n_or_p: matches!(f, Formula::Or { lhs, rhs }
            if (is_positive(lhs) && is_negative(rhs)) || (is_negative(lhs) && is_positive(rhs))),
        is_acc_formula: is_acc_formula(f),
        pi_rank_p,
        sigma_rank_p,
        pi_rank_omega: Some(pi_rank_omega),
        sigma_rank_omega: Some(sigma_rank_omega),
    }
}

/// Cut degree: `0` without top-index fixpoint atoms, else one more than the
/// least infinitary rank.
pub fn dg(f: &Formula) -> Result<u32, FormulaError> {
    if !has_omega_fix(f) {
        return Ok(0);
    }
    let (pi, sigma) = ranks_inf(f);
    match (pi, sigma) {
        (Some(p), Some(s)) => Ok(1 + p.min(s)),
        (Some(p), None) => Ok(1 + p),
        (None, Some(s)) => Ok(1 + s),
        (None, None) => Err(FormulaError::OutsideHierarchy),
    }
}

/// Rank 0 over positive formulas: positive or negative blocks combined by
/// connectives and bounded quantifiers.
pub fn rank0_positive(f: &Formula) -> bool {
    if is_positive(f) || is_negative(f) {
        return true;
    }
    match f {
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            rank0_positive(lhs) && rank0_positive(rhs)
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => items.iter().all(rank0_positive),
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => rank0_positive(body),
        _ => false,
    }
}

/// Finitary ranks `(pi, sigma)`: total, cumulative, like quantifiers merge.
pub fn ranks_fin(f: &Formula) -> (u32, u32) {
    if rank0_positive(f) {
        return (0, 0);
    }
    match f {
        Formula::Forall { body, .. } => {
            let (bp, bs) = ranks_fin(body);
            let pi = bp.max(1).min(bs + 1);
            (pi, pi + 1)
        }
        Formula::Exists { body, .. } => {
            let (bp, bs) = ranks_fin(body);
            let sigma = bs.max(1).min(bp + 1);
            (sigma + 1, sigma)
        }
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            let (lp, ls) = ranks_fin(lhs);
            let (rp, rs) = ranks_fin(rhs);
            (avail(lp, ls).max(avail(rp, rs)), avail(ls, lp).max(avail(rs, rp)))
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            let mut pi = 0;
            let mut sigma = 0;
            for i in items {
                let (p, s) = ranks_fin(i);
                pi = pi.max(avail(p, s));
                sigma = sigma.max(avail(s, p));
            }
            (pi, sigma)
        }
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => {
            let (bp, bs) = ranks_fin(body);
            (avail(bp, bs), avail(bs, bp))
        }
        // Atoms that are neither positive nor negative do not exist; the
        // remaining atom cases are rank 0 and caught above.
        _ => (0, 0),
    }
}

/// Least level at which a subformula with ranks `(own, dual)` is available
/// on the `own` side, using cumulativity from the dual side.
fn avail(own: u32, dual: u32) -> u32 {
    own.min(dual + 1)
}

/// Rank 0 of the infinitary hierarchy: finite positive combinations of
/// positive and negative blocks (rewritable into the canonical matrix form,
/// see [`super::to_matrix_form`]).
pub fn rank0_infinitary(f: &Formula) -> bool {
    if is_positive(f) || is_negative(f) {
        return true;
    }
    match f {
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            rank0_infinitary(lhs) && rank0_infinitary(rhs)
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            items.iter().all(rank0_infinitary)
        }
        _ => false,
    }
}

/// Infinitary ranks: strictly alternating prenex over a rank-0 matrix.
pub fn ranks_inf(f: &Formula) -> (Option<u32>, Option<u32>) {
    if rank0_infinitary(f) {
        return (Some(0), Some(0));
    }
    match f {
        Formula::Forall { body, .. } => {
            let (_, bs) = ranks_inf(body);
            (bs.map(|k| k + 1), None)
        }
        Formula::Exists { body, .. } => {
            let (bp, _) = ranks_inf(body);
            (None, bp.map(|k| k + 1))
        }
        _ => (None, None),
    }
}

/// Ranks in the hierarchy whose rank 0 is the bounded formulas over atomic
/// formulas (fixpoint atoms of either polarity included, no swallowing of
/// quantified blocks).
pub fn ranks_omega(f: &Formula) -> (u32, u32) {
    if rank0_omega(f) {
        return (0, 0);
    }
    match f {
        Formula::Forall { body, .. } => {
            let (bp, bs) = ranks_omega(body);
            let pi = bp.max(1).min(bs + 1);
            (pi, pi + 1)
        }
        Formula::Exists { body, .. } => {
            let (bp, bs) = ranks_omega(body);
            let sigma = bs.max(1).min(bp + 1);
            (sigma + 1, sigma)
        }
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            let (lp, ls) = ranks_omega(lhs);
            let (rp, rs) = ranks_omega(rhs);
            (avail(lp, ls).max(avail(rp, rs)), avail(ls, lp).max(avail(rs, rp)))
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            let mut pi = 0;
            let mut sigma = 0;
            for i in items {
                let (p, s) = ranks_omega(i);
                pi = pi.max(avail(p, s));
                sigma = sigma.max(avail(s, p));
            }
            (pi, sigma)
        }
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => {
            let (bp, bs) = ranks_omega(body);
            (avail(bp, bs), avail(bs, bp))
        }
        _ => (0, 0),
    }
}

fn rank0_omega(f: &Formula) -> bool {
    match f {
        Formula::Eq { .. }
        | Formula::Ne { .. }
        | Formula::Lt { .. }
        | Formula::Nlt { .. }
        | Formula::Fix { .. } => true,
        Formula::InX { .. } | Formula::NotInX { .. } => false,
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            rank0_omega(lhs) && rank0_omega(rhs)
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => items.iter().all(rank0_omega),
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => rank0_omega(body),
        Formula::Exists { .. } | Formula::Forall { .. } => false,
    }
}

/// Bounded arithmetic: no fixpoint or set-variable atoms, no unbounded
/// quantifiers.
pub fn is_bounded_arith(f: &Formula) -> bool {
    match f {
        Formula::Eq { .. } | Formula::Ne { .. } | Formula::Lt { .. } | Formula::Nlt { .. } => true,
        Formula::Fix { .. } | Formula::InX { .. } | Formula::NotInX { .. } => false,
        Formula::And { lhs, rhs } | Formula::Or { lhs, rhs } => {
            is_bounded_arith(lhs) && is_bounded_arith(rhs)
        }
        Formula::BigAnd { items } | Formula::BigOr { items } => {
            items.iter().all(is_bounded_arith)
        }
        Formula::ExistsLt { body, .. } | Formula::ForallLt { body, .. } => is_bounded_arith(body),
        Formula::Exists { .. } | Formula::Forall { .. } => false,
    }
}

/// `A y (theta0 -> t0 in R)` with bounded arithmetic `theta0`, up to the
/// order of the disjuncts; `R` is a top-index fixpoint atom.
pub fn is_acc_formula(f: &Formula) -> bool {
    let Formula::Forall { body, .. } = f else {
        return false;
    };
    let Formula::Or { lhs, rhs } = &**body else {
        return false;
    };
    let is_member = |g: &Formula| {
        matches!(g, Formula::Fix { stage: StageTag::Omega, positive: true, .. })
    };
    (is_bounded_arith(lhs) && is_member(rhs)) || (is_bounded_arith(rhs) && is_member(lhs))
}

#[cfg(test)]
mod tests {
    use super::super::term::*;
    use super::super::*;
    use super::*;

    fn r(t: Term) -> Formula {
        fix("acc", StageTag::Omega, t)
    }

    #[test]
    fn acc_shape_detection() {
        // A y (y < x -> y in R) is the accessibility shape.
        let f = forall("y", or(nlt(var("y"), var("x")), r(var("y"))));
        assert!(is_acc_formula(&f));
        // Swapped disjuncts are accepted as well.
        let g = forall("y", or(r(var("y")), nlt(var("y"), var("x"))));
        assert!(is_acc_formula(&g));
        // An unbounded quantifier inside the guard is not.
        let h = forall("y", or(forall("z", ne(var("z"), var("y"))), r(var("y"))));
        assert!(!is_acc_formula(&h));
    }

    #[test]
    fn p_and_n_accepts_both_orders() {
        let c = r(num(1));
        let d = negate(&r(num(2)));
        assert!(classify(&and(c.clone(), d.clone()), HierarchyMode::Finitary).is_p_and_n);
        assert!(classify(&and(d.clone(), c.clone()), HierarchyMode::Finitary).is_p_and_n);
        assert!(classify(&or(d.clone(), c.clone()), HierarchyMode::Finitary).is_n_or_p);
        assert!(!classify(&and(c.clone(), c), HierarchyMode::Finitary).is_p_and_n);
    }

    #[test]
    fn positive_blocks_sit_at_rank_zero() {
        // A wholly positive formula has rank 0 in both modes, quantifiers
        // included; only quantifiers outside the blocks count.
        let f = forall("x", r(var("x")));
        assert_eq!(ranks_fin(&f), (0, 0));
        assert_eq!(ranks_inf(&f), (Some(0), Some(0)));
        assert_eq!(dg(&f).unwrap(), 1);
        // The atom-based hierarchy does count the quantifier.
        assert_eq!(ranks_omega(&f), (1, 2));
    }

    #[test]
    fn mixed_matrix_ranks() {
        // A x E y (R(x) & ~R(y)): mixed matrix, two alternating quantifiers.
        let m = and(r(var("x")), negate(&r(var("y"))));
        assert!(rank0_positive(&m));
        let f = forall("x", exists("y", m));
        assert_eq!(ranks_fin(&f).0, 2);
        assert_eq!(ranks_inf(&f), (Some(2), None));
        assert_eq!(dg(&f).unwrap(), 3);
        // Like quantifiers merge in the finitary mode only.
        let g = forall("x", forall("y", and(r(var("x")), negate(&r(var("y"))))));
        assert_eq!(ranks_fin(&g).0, 1);
        assert_eq!(ranks_inf(&g), (None, None));
        assert!(dg(&g).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(dg(&eq(num(0), num(0))).unwrap(), 0);
        assert_eq!(dg(&r(num(3))).unwrap(), 1);
        // Stage-tagged atoms only: still degree 0.
        let st = fix("acc", StageTag::Stage(crate::psi::one()), num(3));
        assert_eq!(dg(&forall("x", st)).unwrap(), 0);
        // Mixed rank-0 matrix: degree 1.
        let mixed = and(r(num(1)), negate(&r(num(2))));
        assert_eq!(dg(&mixed).unwrap(), 1);
        // E x of a mixed matrix: degree 2.
        let e = exists("x", and(r(var("x")), negate(&r(var("x")))));
        assert_eq!(dg(&e).unwrap(), 2);
    }

    #[test]
    fn degree_is_negation_symmetric() {
        let m = and(r(var("x")), negate(&r(var("y"))));
        let samples = vec![
            r(num(0)),
            and(r(num(1)), negate(&r(num(2)))),
            forall("x", exists("y", m.clone())),
            exists("x", forall("y", negate(&m))),
            eq(num(1), num(1)),
        ];
        for f in samples {
            assert_eq!(dg(&f).unwrap(), dg(&negate(&f)).unwrap(), "degree asymmetry for {f}");
        }
    }

    #[test]
    fn acc_substitution_stays_at_degree_one() {
        // An accessibility operator body with a positive or negative block
        // substituted stays a block, so the substituted formula keeps
        // degree <= 1.
        let theta0 = lt(var("y"), var("x"));
        let sub_pos = forall("y", or(negate(&theta0), r(var("y"))));
        let sub_neg = forall("y", or(negate(&theta0), negate(&r(var("y")))));
        assert_eq!(dg(&sub_pos).unwrap(), 1);
        assert_eq!(dg(&sub_neg).unwrap(), 1);
        assert_eq!(dg(&and(sub_neg, sub_pos)).unwrap(), 1);
    }

    #[test]
    fn omega_ranks_count_all_quantifiers() {
        let f = forall("x", exists("y", and(r(var("x")), lt(var("y"), var("x")))));
        assert_eq!(ranks_omega(&f), (2, 3));
        let g = exists_lt("x", num(5), r(var("x")));
        assert_eq!(ranks_omega(&g), (0, 0));
    }
}
