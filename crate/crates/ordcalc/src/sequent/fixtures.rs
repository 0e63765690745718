//! Golden proof corpus: for every rule at least one accepted and one
//! rejected fixture, spread over the three theories and all three
//! fixpoint-elimination shapes.

use super::{ProofFile, ProofTree, Rule, TheoryId};
use crate::formula::term::{add, num, succ, var};
use crate::formula::{
    and, cofix, eq, exists, fix, forall, forall_lt, exists_lt, lt, ne, negate, nlt, or,
    phi_sigma, Formula, OperatorDef, Predicate, Registry, StageTag,
};

pub struct GoldenProof {
    pub name: &'static str,
    pub theory: TheoryId,
    pub file: ProofFile,
    pub expect_accept: bool,
    /// Rule tag at the root, for coverage bookkeeping.
    pub root_rule: &'static str,
}

fn node(conclusion: Vec<Formula>, rule: Rule, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree { conclusion, rule, premises }
}

fn arith(conclusion: Vec<Formula>, witness: Formula) -> ProofTree {
    node(conclusion, Rule::ArithInit { formula: witness }, vec![])
}

fn extend(base: &[Formula], added: &[Formula]) -> Vec<Formula> {
    let mut out = base.to_vec();
    for a in added {
        if !out.contains(a) {
            out.push(a.clone());
        }
    }
    out
}

/// `op(X, x) = X(x) \/ x = x`: a general positive (non-accessibility)
/// operator whose fixed point is everything.
fn op_member() -> OperatorDef {
    OperatorDef::general(
        "mem",
        "x",
        or(Formula::InX { arg: var("x") }, eq(var("x"), var("x"))),
    )
    .unwrap()
}

/// `op(X, x) = X(x)`: the fixed point is empty.
fn op_identity() -> OperatorDef {
    OperatorDef::general("idop", "x", Formula::InX { arg: var("x") }).unwrap()
}

/// Accessibility operator whose relation is the single loop `0 prec 0`;
/// element 0 is never accessible.
fn op_loop() -> OperatorDef {
    OperatorDef::acc("loop", "x", "y", and(eq(var("y"), num(0)), eq(var("x"), num(0))), var("y"))
        .unwrap()
}

fn registry(ops: &[OperatorDef]) -> Registry {
    let mut reg = Registry::new();
    for op in ops {
        reg.insert(op.clone()).unwrap();
    }
    reg
}

fn file(reg: Registry, proof: ProofTree) -> ProofFile {
    ProofFile { registry: reg, trusted_axioms: vec![], proof }
}

/// Fixpoint elimination in the positive-or-negative theory, parameterized
/// by the eigenvariable name: the complement atom of the empty fixed point
/// at 2, with invariant `sigma(u) = u != u`.
pub fn fix_elim_pn_accept(eigen: &str) -> GoldenProof {
    let idop = op_identity();
    let concl = vec![cofix("idop", StageTag::Omega, num(2))];
    let sigma = Predicate::new("u", ne(var("u"), var("u")));
    let a = var(eigen);
    let left = negate(&idop.apply(&sigma, &a)); // a = a
    let sigma_a = sigma.apply(&a); // a != a
    let p1_concl = extend(&concl, &[left, sigma_a.clone()]);
    let p1 = node(
        p1_concl,
        Rule::LogicalInit { literal: sigma_a },
        vec![],
    );
    let not_sigma_2 = negate(&sigma.apply(&num(2))); // 2 = 2
    let p2_concl = extend(&concl, &[not_sigma_2.clone()]);
    let p2 = arith(p2_concl, not_sigma_2);
    let proof = node(
        concl,
        Rule::FixElim {
            principal: cofix("idop", StageTag::Omega, num(2)),
            sigma,
            eigen: eigen.into(),
        },
        vec![p1, p2],
    );
    GoldenProof {
        name: "fix-elim accepted in the positive-or-negative theory",
        theory: TheoryId::PnId(0),
        file: file(registry(&[idop]), proof),
        expect_accept: true,
        root_rule: "fix-elim",
    }
}

/// Elimination in the conjunction theory: 0 is not accessible under the
/// self-loop, with invariant `sigma(u) = u != 0 /\ u = u`.
fn fix_elim_pandn_accept() -> GoldenProof {
    let loop_op = op_loop();
    let concl = vec![cofix("loop", StageTag::Omega, num(0))];
    let sigma = Predicate::new("u", and(ne(var("u"), num(0)), eq(var("u"), var("u"))));
    let a = var("a");
    let neg_pred = Predicate::new("u", ne(var("u"), num(0)));
    let pos_pred = Predicate::new("u", eq(var("u"), var("u")));
    let left = or(
        negate(&loop_op.apply(&neg_pred, &a)),
        negate(&loop_op.apply(&pos_pred, &a)),
    );
    let not_phi_neg = negate(&loop_op.apply(&neg_pred, &a));
    let sigma_a = sigma.apply(&a);

    // Premise 1 derives {left, sigma(a)} by splitting the conjunction; the
    // negative conjunct closes against the unfolded guard at witness 0.
    let p1_concl = extend(&concl, &[left.clone(), sigma_a.clone()]);
    let branch_neg_concl = extend(&p1_concl, &[ne(a.clone(), num(0))]);
    let after_or = extend(&branch_neg_concl, &[not_phi_neg.clone()]);
    let Formula::Exists { var: yv, body: ex_body } = &not_phi_neg else { unreachable!() };
    let witness_instance = crate::formula::subst(ex_body, yv, &num(0));
    let after_wit = extend(&after_or, &[witness_instance.clone()]);
    let Formula::And { lhs: wl, rhs: wr } = &witness_instance else { unreachable!() };
    let left_conj = extend(&after_wit, &[(**wl).clone()]);
    let Formula::And { lhs: guard_y, rhs: guard_x } = &**wl else { unreachable!() };
    let innermost = node(
        left_conj.clone(),
        Rule::AndIntro { principal: (**wl).clone() },
        vec![
            arith(extend(&left_conj, &[(**guard_y).clone()]), (**guard_y).clone()),
            node(
                extend(&left_conj, &[(**guard_x).clone()]),
                Rule::LogicalInit { literal: (**guard_x).clone() },
                vec![],
            ),
        ],
    );
    let wit_node = node(
        after_wit.clone(),
        Rule::AndIntro { principal: witness_instance.clone() },
        vec![innermost, arith(extend(&after_wit, &[(**wr).clone()]), (**wr).clone())],
    );
    let exists_node = node(
        after_or.clone(),
        Rule::Exists { principal: not_phi_neg.clone(), witness: num(0) },
        vec![wit_node],
    );
    let branch_neg = node(
        branch_neg_concl,
        Rule::OrIntro { principal: left.clone(), index: 0 },
        vec![exists_node],
    );
    let refl = eq(a.clone(), a.clone());
    let branch_pos = arith(extend(&p1_concl, &[refl.clone()]), refl);
    let p1 = node(
        p1_concl,
        Rule::AndIntro { principal: sigma_a },
        vec![branch_neg, branch_pos],
    );

    // Premise 2 derives the complement of sigma at 0.
    let not_sigma_0 = negate(&sigma.apply(&num(0)));
    let p2_concl = extend(&concl, &[not_sigma_0.clone()]);
    let p2 = node(
        p2_concl.clone(),
        Rule::OrIntro { principal: not_sigma_0, index: 0 },
        vec![arith(extend(&p2_concl, &[eq(num(0), num(0))]), eq(num(0), num(0)))],
    );

    let proof = node(
        concl,
        Rule::FixElim {
            principal: cofix("loop", StageTag::Omega, num(0)),
            sigma,
            eigen: "a".into(),
        },
        vec![p1, p2],
    );
    GoldenProof {
        name: "fix-elim accepted in the conjunction theory",
        theory: TheoryId::PAndNIdAcc(0),
        file: file(registry(&[loop_op]), proof),
        expect_accept: true,
        root_rule: "fix-elim",
    }
}

/// Elimination in the universally quantified theory, through the pairing
/// form of the operator.
fn fix_elim_pi01p_accept() -> GoldenProof {
    let loop_op = op_loop();
    let concl = vec![cofix("loop", StageTag::Omega, num(0))];
    let sigma = Predicate::new("u", forall("z", or(ne(var("z"), var("z")), ne(var("u"), num(0)))));
    let a = var("a");
    let ps = phi_sigma(&loop_op, &sigma).unwrap();
    let left = negate(&ps.apply(&a));
    let sigma_a = sigma.apply(&a);

    let p1_concl = extend(&concl, &[left.clone(), sigma_a.clone()]);
    let Formula::Exists { var: wv, body: ex_body } = &left else { unreachable!() };
    let wit = crate::formula::subst(ex_body, wv, &num(0));
    let after_wit = extend(&p1_concl, &[wit.clone()]);
    let Formula::And { lhs: g1, rhs: g2 } = &wit else { unreachable!() };
    // g1 = p0(0) = 0 /\ a = 0, g2 = p1(0) = p1(0) /\ p0(0) = 0.
    let g1_concl = extend(&after_wit, &[(**g1).clone()]);
    let Formula::And { lhs: g1a, rhs: g1b } = &**g1 else { unreachable!() };
    // Close a = 0 against sigma(a): instantiate z, pick the right disjunct.
    let eq_a0_concl = extend(&g1_concl, &[(**g1b).clone()]);
    let Formula::Forall { var: zv, body: sbody } = &sigma_a else { unreachable!() };
    let inst = crate::formula::subst(sbody, zv, &var("c"));
    let inst_concl = extend(&eq_a0_concl, &[inst.clone()]);
    let ne_a0 = ne(a.clone(), num(0));
    let or_node = node(
        inst_concl.clone(),
        Rule::OrIntro { principal: inst.clone(), index: 1 },
        vec![node(
            extend(&inst_concl, &[ne_a0.clone()]),
            Rule::LogicalInit { literal: ne_a0 },
            vec![],
        )],
    );
    let eq_a0_node = node(
        eq_a0_concl,
        Rule::Forall { principal: sigma_a.clone(), eigen: "c".into() },
        vec![or_node],
    );
    let g1_node = node(
        g1_concl,
        Rule::AndIntro { principal: (**g1).clone() },
        vec![arith(extend(&after_wit, &[(**g1a).clone(), (**g1).clone()]), (**g1a).clone()), eq_a0_node],
    );
    let g2_concl = extend(&after_wit, &[(**g2).clone()]);
    let Formula::And { lhs: g2a, rhs: g2b } = &**g2 else { unreachable!() };
    let g2_node = node(
        g2_concl.clone(),
        Rule::AndIntro { principal: (**g2).clone() },
        vec![
            arith(extend(&g2_concl, &[(**g2a).clone()]), (**g2a).clone()),
            arith(extend(&g2_concl, &[(**g2b).clone()]), (**g2b).clone()),
        ],
    );
    let wit_node = node(
        after_wit,
        Rule::AndIntro { principal: wit.clone() },
        vec![g1_node, g2_node],
    );
    let p1 = node(
        p1_concl,
        Rule::Exists { principal: left, witness: num(0) },
        vec![wit_node],
    );

    let not_sigma_0 = negate(&sigma.apply(&num(0)));
    let p2_concl = extend(&concl, &[not_sigma_0.clone()]);
    let Formula::Exists { var: zv2, body: nbody } = &not_sigma_0 else { unreachable!() };
    let ninst = crate::formula::subst(nbody, zv2, &num(0));
    let ninst_concl = extend(&p2_concl, &[ninst.clone()]);
    let Formula::And { lhs: n1, rhs: n2 } = &ninst else { unreachable!() };
    let p2 = node(
        p2_concl,
        Rule::Exists { principal: not_sigma_0.clone(), witness: num(0) },
        vec![node(
            ninst_concl.clone(),
            Rule::AndIntro { principal: ninst.clone() },
            vec![
                arith(extend(&ninst_concl, &[(**n1).clone()]), (**n1).clone()),
                arith(extend(&ninst_concl, &[(**n2).clone()]), (**n2).clone()),
            ],
        )],
    );

    let proof = node(
        concl,
        Rule::FixElim {
            principal: cofix("loop", StageTag::Omega, num(0)),
            sigma,
            eigen: "a".into(),
        },
        vec![p1, p2],
    );
    GoldenProof {
        name: "fix-elim accepted in the quantified theory",
        theory: TheoryId::Pi01PAcc,
        file: file(registry(&[loop_op]), proof),
        expect_accept: true,
        root_rule: "fix-elim",
    }
}

/// A mixed-matrix induction formula with two alternating quantifier blocks.
fn rank2_theta() -> Predicate {
    Predicate::new(
        "u",
        forall(
            "xx",
            exists(
                "yy",
                or(
                    and(
                        fix("loop", StageTag::Omega, var("xx")),
                        cofix("loop", StageTag::Omega, var("yy")),
                    ),
                    eq(var("u"), var("u")),
                ),
            ),
        ),
    )
}

fn ind_fixture(name: &'static str, theory: TheoryId, theta: Predicate, accept: bool) -> GoldenProof {
    let delta = eq(num(0), num(0));
    let trivial = |c: Vec<Formula>| arith(c, delta.clone());
    let proof = node(
        vec![delta.clone()],
        Rule::Ind { theta, eigen: "a".into(), term: num(2) },
        vec![
            trivial(vec![delta.clone()]),
            trivial(vec![delta.clone()]),
            trivial(vec![delta.clone()]),
        ],
    );
    GoldenProof {
        name,
        theory,
        file: file(registry(&[op_loop()]), proof),
        expect_accept: accept,
        root_rule: "ind",
    }
}

pub fn golden_corpus() -> Vec<GoldenProof> {
    let mem = op_member();
    let idop = op_identity();
    let mut corpus = Vec::new();

    // --- initial sequents -------------------------------------------------
    let lit = fix("idop", StageTag::Omega, num(3));
    corpus.push(GoldenProof {
        name: "logical initial sequent accepted",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[idop.clone()]),
            node(
                vec![negate(&lit), lit.clone()],
                Rule::LogicalInit { literal: lit.clone() },
                vec![],
            ),
        ),
        expect_accept: true,
        root_rule: "logical-init",
    });
    corpus.push(GoldenProof {
        name: "logical initial sequent without the complement rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![eq(num(0), num(0)), ne(num(1), num(1))],
                Rule::LogicalInit { literal: eq(num(0), num(0)) },
                vec![],
            ),
        ),
        expect_accept: false,
        root_rule: "logical-init",
    });

    let template = Predicate::new("u", fix("idop", StageTag::Omega, var("u")));
    corpus.push(GoldenProof {
        name: "equality initial sequent accepted",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[idop.clone()]),
            node(
                vec![
                    ne(succ(num(2)), num(3)),
                    cofix("idop", StageTag::Omega, succ(num(2))),
                    fix("idop", StageTag::Omega, num(3)),
                ],
                Rule::EqualityInit { t: succ(num(2)), s: num(3), literal: template.clone() },
                vec![],
            ),
        ),
        expect_accept: true,
        root_rule: "equality-init",
    });
    corpus.push(GoldenProof {
        name: "equality initial sequent with a missing instance rejected",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[idop.clone()]),
            node(
                vec![
                    ne(num(1), num(2)),
                    cofix("idop", StageTag::Omega, num(1)),
                    fix("idop", StageTag::Omega, num(3)),
                ],
                Rule::EqualityInit { t: num(1), s: num(2), literal: template },
                vec![],
            ),
        ),
        expect_accept: false,
        root_rule: "equality-init",
    });

    corpus.push(GoldenProof {
        name: "true bounded sentence accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            arith(vec![eq(add(num(2), num(2)), num(4))], eq(add(num(2), num(2)), num(4))),
        ),
        expect_accept: true,
        root_rule: "arith-init",
    });
    corpus.push(GoldenProof {
        name: "false sentence rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            arith(vec![eq(add(num(2), num(2)), num(5))], eq(add(num(2), num(2)), num(5))),
        ),
        expect_accept: false,
        root_rule: "arith-init",
    });

    // --- cut ---------------------------------------------------------------
    let c = eq(num(1), num(1));
    let base = eq(num(0), num(0));
    corpus.push(GoldenProof {
        name: "cut accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![base.clone()],
                Rule::Cut { formula: c.clone() },
                vec![
                    arith(vec![base.clone(), negate(&c)], base.clone()),
                    arith(vec![c.clone(), base.clone()], c.clone()),
                ],
            ),
        ),
        expect_accept: true,
        root_rule: "cut",
    });
    corpus.push(GoldenProof {
        name: "cut with an unmatched side formula rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![base.clone()],
                Rule::Cut { formula: c.clone() },
                vec![
                    arith(vec![base.clone(), negate(&c), eq(num(5), num(5))], base.clone()),
                    arith(vec![c.clone(), base.clone()], c),
                ],
            ),
        ),
        expect_accept: false,
        root_rule: "cut",
    });

    // --- quantifier rules ---------------------------------------------------
    let ex = exists("x", eq(var("x"), num(2)));
    corpus.push(GoldenProof {
        name: "existential witness accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![ex.clone()],
                Rule::Exists { principal: ex.clone(), witness: num(2) },
                vec![arith(vec![eq(num(2), num(2)), ex.clone()], eq(num(2), num(2)))],
            ),
        ),
        expect_accept: true,
        root_rule: "exists",
    });
    corpus.push(GoldenProof {
        name: "existential with mismatched instance rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![ex.clone()],
                Rule::Exists { principal: ex.clone(), witness: num(2) },
                vec![arith(vec![eq(num(3), num(3)), ex.clone()], eq(num(3), num(3)))],
            ),
        ),
        expect_accept: false,
        root_rule: "exists",
    });

    let all = forall("x", eq(var("x"), var("x")));
    corpus.push(GoldenProof {
        name: "universal quantifier accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![all.clone()],
                Rule::Forall { principal: all.clone(), eigen: "a".into() },
                vec![arith(vec![eq(var("a"), var("a")), all.clone()], eq(var("a"), var("a")))],
            ),
        ),
        expect_accept: true,
        root_rule: "forall",
    });
    corpus.push(GoldenProof {
        name: "universal quantifier with a stale eigenvariable rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![all.clone(), lt(var("a"), num(1))],
                Rule::Forall { principal: all.clone(), eigen: "a".into() },
                vec![arith(
                    vec![eq(var("a"), var("a")), all.clone(), lt(var("a"), num(1))],
                    eq(var("a"), var("a")),
                )],
            ),
        ),
        expect_accept: false,
        root_rule: "forall",
    });

    let bex = exists_lt("x", num(3), eq(var("x"), num(2)));
    corpus.push(GoldenProof {
        name: "bounded existential accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![bex.clone()],
                Rule::BoundedExists { principal: bex.clone(), witness: num(2) },
                vec![
                    arith(vec![eq(num(2), num(2)), bex.clone()], eq(num(2), num(2))),
                    arith(vec![lt(num(2), num(3)), bex.clone()], lt(num(2), num(3))),
                ],
            ),
        ),
        expect_accept: true,
        root_rule: "b-exists",
    });
    let bex_bad = exists_lt("x", num(2), eq(var("x"), num(5)));
    corpus.push(GoldenProof {
        name: "bounded existential with an out-of-range witness rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![bex_bad.clone()],
                Rule::BoundedExists { principal: bex_bad.clone(), witness: num(5) },
                vec![
                    arith(vec![eq(num(5), num(5)), bex_bad.clone()], eq(num(5), num(5))),
                    arith(vec![eq(num(0), num(0)), bex_bad.clone()], eq(num(0), num(0))),
                ],
            ),
        ),
        expect_accept: false,
        root_rule: "b-exists",
    });

    let ball = forall_lt("x", num(2), eq(num(0), num(0)));
    corpus.push(GoldenProof {
        name: "bounded universal accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![ball.clone()],
                Rule::BoundedForall { principal: ball.clone(), eigen: "a".into() },
                vec![arith(
                    vec![nlt(var("a"), num(2)), eq(num(0), num(0)), ball.clone()],
                    eq(num(0), num(0)),
                )],
            ),
        ),
        expect_accept: true,
        root_rule: "b-forall",
    });
    let ball_bad = forall_lt("x", var("a"), eq(var("x"), var("x")));
    corpus.push(GoldenProof {
        name: "bounded universal with the eigenvariable in the bound rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![ball_bad.clone()],
                Rule::BoundedForall { principal: ball_bad.clone(), eigen: "a".into() },
                vec![arith(
                    vec![nlt(var("a"), var("a")), eq(var("a"), var("a")), ball_bad.clone()],
                    eq(var("a"), var("a")),
                )],
            ),
        ),
        expect_accept: false,
        root_rule: "b-forall",
    });

    // --- propositional rules ------------------------------------------------
    let disj = or(eq(num(0), num(1)), eq(num(0), num(0)));
    corpus.push(GoldenProof {
        name: "disjunction accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![disj.clone()],
                Rule::OrIntro { principal: disj.clone(), index: 1 },
                vec![arith(vec![eq(num(0), num(0)), disj.clone()], eq(num(0), num(0)))],
            ),
        ),
        expect_accept: true,
        root_rule: "or",
    });
    corpus.push(GoldenProof {
        name: "disjunction with the wrong disjunct claimed rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![disj.clone()],
                Rule::OrIntro { principal: disj.clone(), index: 0 },
                vec![arith(vec![eq(num(0), num(0)), disj.clone()], eq(num(0), num(0)))],
            ),
        ),
        expect_accept: false,
        root_rule: "or",
    });

    let conj = and(eq(num(0), num(0)), eq(num(1), num(1)));
    corpus.push(GoldenProof {
        name: "conjunction accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![conj.clone()],
                Rule::AndIntro { principal: conj.clone() },
                vec![
                    arith(vec![eq(num(0), num(0)), conj.clone()], eq(num(0), num(0))),
                    arith(vec![eq(num(1), num(1)), conj.clone()], eq(num(1), num(1))),
                ],
            ),
        ),
        expect_accept: true,
        root_rule: "and",
    });
    corpus.push(GoldenProof {
        name: "conjunction with a missing branch rejected",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![conj.clone()],
                Rule::AndIntro { principal: conj.clone() },
                vec![arith(vec![eq(num(0), num(0)), conj.clone()], eq(num(0), num(0)))],
            ),
        ),
        expect_accept: false,
        root_rule: "and",
    });

    // --- fixpoint closure ----------------------------------------------------
    let member0 = fix("mem", StageTag::Omega, num(0));
    let unfold0 = mem.unfold(&StageTag::Omega, &num(0));
    corpus.push(GoldenProof {
        name: "fixpoint closure accepted",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[mem.clone()]),
            node(
                vec![member0.clone()],
                Rule::FixIntro { principal: member0.clone() },
                vec![node(
                    vec![unfold0.clone(), member0.clone()],
                    Rule::OrIntro { principal: unfold0.clone(), index: 1 },
                    vec![arith(
                        vec![eq(num(0), num(0)), unfold0.clone(), member0.clone()],
                        eq(num(0), num(0)),
                    )],
                )],
            ),
        ),
        expect_accept: true,
        root_rule: "fix-intro",
    });
    let wrong_unfold = mem.unfold(&StageTag::Omega, &num(1));
    corpus.push(GoldenProof {
        name: "fixpoint closure with a mismatched unfolding rejected",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[mem.clone()]),
            node(
                vec![member0.clone()],
                Rule::FixIntro { principal: member0.clone() },
                vec![node(
                    vec![wrong_unfold.clone(), member0.clone()],
                    Rule::OrIntro { principal: wrong_unfold.clone(), index: 1 },
                    vec![arith(
                        vec![eq(num(1), num(1)), wrong_unfold, member0],
                        eq(num(1), num(1)),
                    )],
                )],
            ),
        ),
        expect_accept: false,
        root_rule: "fix-intro",
    });

    // --- fixpoint elimination, three shapes ----------------------------------
    corpus.push(fix_elim_pn_accept("a"));
    corpus.push(fix_elim_pandn_accept());
    corpus.push(fix_elim_pi01p_accept());

    // Mixed invariant violates the positive-or-negative restriction.
    let mixed_sigma = Predicate::new(
        "u",
        and(fix("idop", StageTag::Omega, var("u")), cofix("idop", StageTag::Omega, var("u"))),
    );
    corpus.push(GoldenProof {
        name: "fix-elim with a mixed invariant rejected",
        theory: TheoryId::PnId(0),
        file: file(
            registry(&[idop.clone()]),
            node(
                vec![cofix("idop", StageTag::Omega, num(2))],
                Rule::FixElim {
                    principal: cofix("idop", StageTag::Omega, num(2)),
                    sigma: mixed_sigma,
                    eigen: "a".into(),
                },
                vec![
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                ],
            ),
        ),
        expect_accept: false,
        root_rule: "fix-elim",
    });
    // Accessibility-only theory with a general operator.
    corpus.push(GoldenProof {
        name: "fix-elim over a non-accessibility operator rejected",
        theory: TheoryId::PAndNIdAcc(0),
        file: file(
            registry(&[idop.clone()]),
            node(
                vec![cofix("idop", StageTag::Omega, num(0))],
                Rule::FixElim {
                    principal: cofix("idop", StageTag::Omega, num(0)),
                    sigma: Predicate::new("u", and(ne(var("u"), num(0)), eq(var("u"), var("u")))),
                    eigen: "a".into(),
                },
                vec![
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                ],
            ),
        ),
        expect_accept: false,
        root_rule: "fix-elim",
    });
    // Quantified theory with an unquantified invariant.
    corpus.push(GoldenProof {
        name: "fix-elim with an unquantified invariant rejected",
        theory: TheoryId::Pi01PAcc,
        file: file(
            registry(&[op_loop()]),
            node(
                vec![cofix("loop", StageTag::Omega, num(0))],
                Rule::FixElim {
                    principal: cofix("loop", StageTag::Omega, num(0)),
                    sigma: Predicate::new("u", ne(var("u"), num(0))),
                    eigen: "a".into(),
                },
                vec![
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                    arith(vec![eq(num(0), num(0))], eq(num(0), num(0))),
                ],
            ),
        ),
        expect_accept: false,
        root_rule: "fix-elim",
    });

    // --- induction -------------------------------------------------------------
    corpus.push(ind_fixture(
        "induction with a rank-0 formula accepted",
        TheoryId::PnId(0),
        Predicate::new("u", eq(var("u"), var("u"))),
        true,
    ));
    corpus.push(ind_fixture(
        "induction with a rank-0 formula accepted in the quantified theory",
        TheoryId::Pi01PAcc,
        Predicate::new("u", eq(var("u"), var("u"))),
        true,
    ));
    corpus.push(ind_fixture(
        "rank-2 induction formula rejected at rank limit 1",
        TheoryId::Pi01PAcc,
        rank2_theta(),
        false,
    ));
    corpus.push(ind_fixture(
        "rank-2 induction formula rejected in the rank-1 theory",
        TheoryId::PnId(1),
        rank2_theta(),
        false,
    ));
    // The very same formula is admissible once the rank limit allows it.
    corpus.push(ind_fixture(
        "rank-2 induction formula accepted in the rank-2 theory",
        TheoryId::PnId(2),
        rank2_theta(),
        true,
    ));

    // The induction premises in `ind_fixture` are vacuous (the conclusion
    // alone), so the accepted variants really exercise only the class
    // check plus subset matching; one more fixture derives the premises.
    let theta = Predicate::new("u", eq(add(var("u"), num(0)), var("u")));
    let delta = eq(num(42), num(42));
    let p1f = theta.apply(&num(0));
    let p2a = negate(&theta.apply(&var("a")));
    let p2b = theta.apply(&succ(var("a")));
    let p3f = negate(&theta.apply(&num(2)));
    corpus.push(GoldenProof {
        name: "induction with derived premises accepted",
        theory: TheoryId::PnId(0),
        file: file(
            Registry::new(),
            node(
                vec![delta.clone()],
                Rule::Ind {
                    theta: theta.clone(),
                    eigen: "a".into(),
                    term: num(2),
                },
                vec![
                    arith(vec![delta.clone(), p1f.clone()], p1f),
                    arith(vec![delta.clone(), p2a, p2b.clone()], delta.clone()),
                    arith(vec![p3f, delta.clone()], delta.clone()),
                ],
            ),
        ),
        expect_accept: true,
        root_rule: "ind",
    });

    corpus
}
