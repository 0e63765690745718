//! Formula transforms: grounding of bounded quantifiers, the
//! positive-occurrence stage bounding `A -> A^(b)`, and the rewrite of
//! rank-0 formulas into the canonical matrix form.

use std::collections::BTreeSet;

use crate::psi::PsiTerm;

use super::classify::rank0_infinitary;
use super::term::{num, Term};
use super::{
    and, big_and, big_or, eq, free_vars, is_negative, is_positive, negate, or, subst, Formula,
    FormulaError, StageTag,
};

/// Expands every bounded quantifier with a closed bound into a finite
/// conjunction or disjunction and replaces closed terms by numerals. The
/// formula must be closed; unbounded quantifiers stay.
pub fn ground_bounded(f: &Formula) -> Result<Formula, FormulaError> {
    let fv = free_vars(f);
    if !fv.is_empty() {
        return Err(FormulaError::OpenFormula(fv));
    }
    ground_at(f)
}

fn ground_at(f: &Formula) -> Result<Formula, FormulaError> {
    let norm = |t: &Term| t.normalize_closed().map_err(FormulaError::from);
    Ok(match f {
        Formula::Eq { lhs, rhs } => Formula::Eq { lhs: norm(lhs)?, rhs: norm(rhs)? },
        Formula::Ne { lhs, rhs } => Formula::Ne { lhs: norm(lhs)?, rhs: norm(rhs)? },
        Formula::Lt { lhs, rhs } => Formula::Lt { lhs: norm(lhs)?, rhs: norm(rhs)? },
        Formula::Nlt { lhs, rhs } => Formula::Nlt { lhs: norm(lhs)?, rhs: norm(rhs)? },
        Formula::Fix { op, stage, positive, arg } => Formula::Fix {
            op: op.clone(),
            stage: stage.clone(),
            positive: *positive,
            arg: norm(arg)?,
        },
        Formula::InX { arg } => Formula::InX { arg: norm(arg)? },
        Formula::NotInX { arg } => Formula::NotInX { arg: norm(arg)? },
        Formula::And { lhs, rhs } => and(ground_at(lhs)?, ground_at(rhs)?),
        Formula::Or { lhs, rhs } => or(ground_at(lhs)?, ground_at(rhs)?),
        Formula::BigAnd { items } => {
            big_and(items.iter().map(ground_at).collect::<Result<_, _>>()?)
        }
        Formula::BigOr { items } => {
            big_or(items.iter().map(ground_at).collect::<Result<_, _>>()?)
        }
        Formula::Exists { var, body } => {
            Formula::Exists { var: var.clone(), body: Box::new(ground_at(body)?) }
        }
        Formula::Forall { var, body } => {
            Formula::Forall { var: var.clone(), body: Box::new(ground_at(body)?) }
        }
        Formula::ExistsLt { var, bound, body } => {
            let n = closed_bound(bound)?;
            let mut items = Vec::with_capacity(n as usize);
            for i in 0..n {
                items.push(ground_at(&subst(body, var, &num(i)))?);
            }
            big_or(items)
        }
        Formula::ForallLt { var, bound, body } => {
            let n = closed_bound(bound)?;
            let mut items = Vec::with_capacity(n as usize);
            for i in 0..n {
                items.push(ground_at(&subst(body, var, &num(i)))?);
            }
            big_and(items)
        }
    })
}

fn closed_bound(t: &Term) -> Result<u64, FormulaError> {
    if !t.is_closed() {
        return Err(FormulaError::OpenBound(t.clone()));
    }
    Ok(t.eval_closed()?)
}

/// `A^(b)`: replaces every positive occurrence of a top-index fixpoint atom
/// by its stage-`b` version; complements are untouched.
pub fn bound_positive(f: &Formula, b: &PsiTerm) -> Formula {
    let mut counter = 0;
    bound_selected_at(f, b, &mut counter, None)
}

/// Selective variant: only the positive occurrences whose index (in
/// depth-first traversal order) is in `mask` are replaced.
pub fn bound_positive_selected(f: &Formula, b: &PsiTerm, mask: &BTreeSet<usize>) -> Formula {
    let mut counter = 0;
    bound_selected_at(f, b, &mut counter, Some(mask))
}

fn bound_selected_at(
    f: &Formula,
    b: &PsiTerm,
    counter: &mut usize,
    mask: Option<&BTreeSet<usize>>,
) -> Formula {
    match f {
        Formula::Fix { op, stage: StageTag::Omega, positive: true, arg } => {
            let index = *counter;
            *counter += 1;
            if mask.map_or(true, |m| m.contains(&index)) {
                Formula::Fix {
                    op: op.clone(),
                    stage: StageTag::from_term(b.clone()),
                    positive: true,
                    arg: arg.clone(),
                }
            } else {
                f.clone()
            }
        }
        Formula::Eq { .. }
        | Formula::Ne { .. }
        | Formula::Lt { .. }
        | Formula::Nlt { .. }
        | Formula::Fix { .. }
        | Formula::InX { .. }
        | Formula::NotInX { .. } => f.clone(),
        Formula::And { lhs, rhs } => and(
            bound_selected_at(lhs, b, counter, mask),
            bound_selected_at(rhs, b, counter, mask),
        ),
        Formula::Or { lhs, rhs } => or(
            bound_selected_at(lhs, b, counter, mask),
            bound_selected_at(rhs, b, counter, mask),
        ),
        Formula::BigAnd { items } => {
            big_and(items.iter().map(|i| bound_selected_at(i, b, counter, mask)).collect())
        }
        Formula::BigOr { items } => {
            big_or(items.iter().map(|i| bound_selected_at(i, b, counter, mask)).collect())
        }
        Formula::Exists { var, body } => Formula::Exists {
            var: var.clone(),
            body: Box::new(bound_selected_at(body, b, counter, mask)),
        },
        Formula::Forall { var, body } => Formula::Forall {
            var: var.clone(),
            body: Box::new(bound_selected_at(body, b, counter, mask)),
        },
        Formula::ExistsLt { var, bound, body } => Formula::ExistsLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(bound_selected_at(body, b, counter, mask)),
        },
        Formula::ForallLt { var, bound, body } => Formula::ForallLt {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(bound_selected_at(body, b, counter, mask)),
        },
    }
}

/// Rewrites a rank-0 formula into the canonical matrix form: a disjunction
/// of conjunctions of implications `C -> D` between positive formulas (a
/// negative block `N` becomes `not N -> 0 != 0`, a positive block `P`
/// becomes `0 = 0 -> P`). Returns `None` when the input is not rank 0.
pub fn to_matrix_form(f: &Formula) -> Option<Formula> {
    if !rank0_infinitary(f) {
        return None;
    }
    let clauses = dnf_blocks(f);
    let disjuncts: Vec<Formula> = clauses
        .into_iter()
        .map(|blocks| {
            let conjuncts: Vec<Formula> =
                blocks.into_iter().map(|b| block_implication(&b)).collect();
            big_and(conjuncts)
        })
        .collect();
    Some(big_or(disjuncts))
}

/// DNF over whole positive/negative blocks.
fn dnf_blocks(f: &Formula) -> Vec<Vec<Formula>> {
    if is_positive(f) || is_negative(f) {
        return vec![vec![f.clone()]];
    }
    match f {
        Formula::Or { lhs, rhs } => {
            let mut out = dnf_blocks(lhs);
            out.extend(dnf_blocks(rhs));
            out
        }
        Formula::BigOr { items } => items.iter().flat_map(dnf_blocks).collect(),
        Formula::And { lhs, rhs } => distribute(dnf_blocks(lhs), dnf_blocks(rhs)),
        Formula::BigAnd { items } => {
            let mut acc = vec![Vec::new()];
            for i in items {
                acc = distribute(acc, dnf_blocks(i));
            }
            acc
        }
        // rank0_infinitary admits nothing else that is not itself a block
        _ => vec![vec![f.clone()]],
    }
}

fn distribute(a: Vec<Vec<Formula>>, b: Vec<Vec<Formula>>) -> Vec<Vec<Formula>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            let mut clause = x.clone();
            clause.extend(y.iter().cloned());
            out.push(clause);
        }
    }
    out
}

fn block_implication(b: &Formula) -> Formula {
    if is_positive(b) {
        // 0 = 0 -> b
        or(ne(num(0), num(0)), b.clone())
    } else {
        // not b -> 0 != 0, i.e. b | 0 != 0
        or(b.clone(), eq_false())
    }
}

fn ne(lhs: Term, rhs: Term) -> Formula {
    Formula::Ne { lhs, rhs }
}

fn eq_false() -> Formula {
    negate(&eq(num(0), num(0)))
}

#[cfg(test)]
mod tests {
    use super::super::term::*;
    use super::super::*;
    use crate::psi;

    fn r(t: Term) -> Formula {
        fix("acc", StageTag::Omega, t)
    }

    #[test]
    fn ground_bounded_examples() {
        // E x<3 (x = 2) expands to three disjuncts.
        let f = exists_lt("x", num(3), eq(var("x"), num(2)));
        let g = ground_bounded(&f).unwrap();
        assert_eq!(
            g,
            big_or(vec![eq(num(0), num(2)), eq(num(1), num(2)), eq(num(2), num(2))])
        );
        // A x<0 A is the empty conjunction.
        let h = ground_bounded(&forall_lt("x", num(0), r(var("x")))).unwrap();
        assert_eq!(h, big_and(vec![]));
        // A x<2 of a fixpoint atom.
        let k = ground_bounded(&forall_lt("x", num(2), r(var("x")))).unwrap();
        assert_eq!(k, big_and(vec![r(num(0)), r(num(1))]));
        // Open formulas are rejected.
        assert!(matches!(
            ground_bounded(&eq(var("x"), num(0))),
            Err(FormulaError::OpenFormula(_))
        ));
        // Closed terms become numerals, also under unbounded quantifiers.
        let m = ground_bounded(&forall("x", lt(var("x"), add(num(2), num(3))))).unwrap();
        assert_eq!(m, forall("x", lt(var("x"), num(5))));
    }

    #[test]
    fn bound_positive_examples() {
        let b = psi::one();
        let tagged = StageTag::Stage(b.clone());
        assert_eq!(bound_positive(&r(num(3)), &b), fix("acc", tagged.clone(), num(3)));
        let neg = negate(&r(num(3)));
        assert_eq!(bound_positive(&neg, &b), neg);
        let mixed = or(r(num(1)), negate(&r(num(2))));
        assert_eq!(
            bound_positive(&mixed, &b),
            or(fix("acc", tagged.clone(), num(1)), negate(&r(num(2))))
        );
    }

    #[test]
    fn bound_positive_mask_selects_occurrences() {
        let b = psi::one();
        let f = and(r(num(0)), and(r(num(1)), r(num(2))));
        let only_second = bound_positive_selected(&f, &b, &BTreeSet::from([1]));
        assert_eq!(
            only_second,
            and(
                r(num(0)),
                and(fix("acc", StageTag::Stage(b.clone()), num(1)), r(num(2)))
            )
        );
        let all = bound_positive_selected(&f, &b, &BTreeSet::from([0, 1, 2]));
        assert_eq!(all, bound_positive(&f, &b));
    }

    #[test]
    fn matrix_form_covers_rank_zero() {
        let mixed = and(or(r(num(0)), negate(&r(num(1)))), negate(&r(num(2))));
        let m = to_matrix_form(&mixed).expect("rank 0");
        // The rewrite must itself be rank 0 with the canonical shape: a
        // disjunction of conjunctions of binary implications.
        let Formula::BigOr { items } = &m else { panic!("expected top disjunction") };
        for clause in items {
            let Formula::BigAnd { items } = clause else { panic!("expected conjunction") };
            for imp in items {
                assert!(matches!(imp, Formula::Or { .. }));
            }
        }
        // Not rank 0: a mixed matrix under an unbounded quantifier.
        let f = forall("x", and(r(var("x")), negate(&r(var("x")))));
        assert!(to_matrix_form(&f).is_none());
        // Whole positive blocks pass through as single implications.
        let p = forall("x", r(var("x")));
        assert!(to_matrix_form(&p).is_some());
    }

    #[test]
    fn classify_stable_under_grounding() {
        use super::super::classify::{classify, HierarchyMode};
        let samples = vec![
            exists_lt("x", num(3), and(r(var("x")), negate(&r(var("x"))))),
            forall("x", exists_lt("y", num(2), and(r(var("y")), negate(&r(var("x")))))),
            forall_lt("x", num(2), r(var("x"))),
        ];
        for f in samples {
            let before = classify(&f, HierarchyMode::Finitary);
            let after = classify(&ground_bounded(&f).unwrap(), HierarchyMode::Finitary);
            assert!(after.pi_rank_p.unwrap() <= before.pi_rank_p.unwrap());
            assert!(after.sigma_rank_p.unwrap() <= before.sigma_rank_p.unwrap());
        }
    }
}
