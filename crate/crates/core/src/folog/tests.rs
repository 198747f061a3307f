use super::*;
use crate::nat;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn test_sig() -> Signature {
    Signature::new()
        .with_relation("E", 2)
        .with_relation("P", 1)
        .with_function("f", 1)
        .with_function("c", 0)
}

#[test]
fn parse_simple_sentences() {
    let sig = sig_e();
    assert_eq!(
        parse_formula("(forall x (= x x))", &sig).unwrap(),
        forall("x", eq(var("x"), var("x")))
    );
    assert_eq!(
        parse_formula("(exists x (E x x))", &sig).unwrap(),
        exists("x", rel("E", vec![var("x"), var("x")]))
    );
}

#[test]
fn parse_arity_error() {
    let err = parse_formula("(E x)", &sig_e()).unwrap_err();
    assert!(err.message.contains("expects 2 arguments"), "{err}");
}

#[test]
fn parse_reports_position() {
    let err = parse_formula("(forall x (B x))", &sig_e()).unwrap_err();
    assert_eq!(err.position, 11);
}

#[test]
fn substitution_avoids_capture() {
    // [x/y] (∀x E(x, y)) must rename the binder first.
    let f = forall("x", rel("E", vec![var("x"), var("y")]));
    let result = substitute(&f, "y", &var("x"));
    match &result {
        Formula::Forall(binder, body) => {
            assert_ne!(binder, "x");
            assert_eq!(**body, rel("E", vec![var(binder), var("x")]));
        }
        other => panic!("unexpected shape {other}"),
    }
}

#[test]
fn substitution_of_non_free_variable_is_identity() {
    let f = forall("x", rel("E", vec![var("x"), var("x")]));
    assert_eq!(substitute(&f, "x", &var("y")), f);
    let g = rel("P", vec![var("z")]);
    assert_eq!(substitute(&g, "y", &var("w")), g);
}

#[test]
fn relativize_guards_quantifiers() {
    let guard = rel("P", vec![var("x")]);
    let f = forall("v", eq(var("v"), var("v")));
    assert_eq!(
        relativize(&f, &guard),
        forall(
            "v",
            implies(rel("P", vec![var("v")]), eq(var("v"), var("v")))
        )
    );
    // Quantifier-free formulas pass through unchanged.
    let qf = rel("E", vec![var("a"), var("b")]);
    assert_eq!(relativize(&qf, &guard), qf);
}

#[test]
fn relativize_guards_every_nesting_level() {
    let guard = rel("P", vec![var("x")]);
    let f = forall("a", exists("b", rel("E", vec![var("a"), var("b")])));
    let expected = forall(
        "a",
        implies(
            rel("P", vec![var("a")]),
            exists(
                "b",
                and(
                    rel("P", vec![var("b")]),
                    rel("E", vec![var("a"), var("b")]),
                ),
            ),
        ),
    );
    assert_eq!(relativize(&f, &guard), expected);
}

#[test]
fn godel_distinguishes_sentences() {
    assert_ne!(godel(&phi(0)), godel(&phi(1)));
}

#[test]
fn ungodel_of_zero_is_none() {
    assert_eq!(ungodel(&nat(0)), None);
    assert_eq!(ungodel(&nat(0)), None);
}

#[test]
fn phi_code_matches_godel_of_phi() {
    for n in 0..=5u64 {
        assert_eq!(phi_code(&nat(n)), godel(&phi(n)));
    }
}

#[test]
fn phi_code_param_round_trip_without_materializing() {
    let huge = nat(u64::MAX) * nat(12345);
    let code = phi_code(&huge);
    assert_eq!(phi_code_param(&code), Some(huge));
    // Codes of huge parameters refuse to materialize.
    assert_eq!(ungodel(&code), None);
}

#[test]
fn neg_phi_code_recognized() {
    let code = godel(&not(phi(3)));
    assert_eq!(neg_phi_code_param(&code), Some(nat(3)));
    assert_eq!(phi_code_param(&code), None);
}

#[test]
fn phi_rank_is_parameter_plus_two() {
    assert_eq!(phi(0).quantifier_rank(), 2);
    for n in 0..6u64 {
        assert_eq!(phi(n).quantifier_rank(), n + 2);
    }
}

#[test]
fn phi_shape_recognizes_only_phi() {
    for n in 0..6u64 {
        assert_eq!(phi_shape(&phi(n)), Some(n));
    }
    assert_eq!(phi_shape(&exists("c0", rel("E", vec![var("c0"), var("c0")]))), None);
    assert_eq!(phi_shape(&not(phi(2))), None);
}

#[test]
fn q_axioms_have_the_stated_shapes() {
    let q = axioms_q();
    assert_eq!(q.len(), 7);
    // Q2 is ∀x(Sx ≠ 0).
    assert_eq!(
        q[1],
        forall(
            "x",
            not(eq(app("succ", vec![var("x")]), app("zero", vec![])))
        )
    );
    let sig = sig_q();
    for axiom in &q {
        sig.check_formula(axiom).unwrap();
        assert!(axiom.is_sentence());
    }
}

#[test]
fn r_axioms_contain_numeral_addition_instance() {
    let instances = axioms_r(2);
    let two_plus_two = eq(
        app("add", vec![numeral(2), numeral(2)]),
        numeral(4),
    );
    assert!(instances.contains(&two_plus_two));
    let sig = sig_r();
    for axiom in &instances {
        sig.check_formula(axiom).unwrap();
        assert!(axiom.is_sentence());
    }
}

#[test]
fn vaught_axioms_are_sentences() {
    let sig = sig_vs();
    for n in 0..5u64 {
        let axiom = axioms_vs(n);
        sig.check_formula(&axiom).unwrap();
        assert!(axiom.is_sentence(), "V_{n} has free variables");
    }
}

#[test]
fn janiczak_axioms_are_sentences_over_e() {
    let sig = sig_e();
    for axiom in axioms_j(4) {
        sig.check_formula(&axiom).unwrap();
        assert!(axiom.is_sentence());
    }
    assert_eq!(axioms_j(0).len(), 3);
    assert_eq!(axioms_j(3).len(), 9);
}

#[test]
fn translate_relation_atom_guards_free_variables() {
    let src = Signature::new().with_relation("R", 2);
    let mut translation = identity_translation(&sig_e());
    translation.source = src;
    translation.relation_map.insert(
        "R".to_string(),
        rel("E", vec![var(&param_var(0)), var(&param_var(1))]),
    );
    let result = translate(&rel("R", vec![var("a"), var("b")]), &translation).unwrap();
    // Free variables a, b each guarded by the domain, then the mapped atom.
    let guard = |v: &str| eq(var(v), var(v));
    assert_eq!(
        result,
        and(
            guard("a"),
            and(guard("b"), rel("E", vec![var("a"), var("b")]))
        )
    );
}

#[test]
fn translate_flattens_function_atoms() {
    let sig = test_sig();
    let translation = identity_translation(&sig);
    // f(x) = y flattens to ∃w(δ(w) ∧ f(x) = w ∧ w = y), then free guards.
    let f = eq(app("f", vec![var("x")]), var("y"));
    let result = translate(&f, &translation).unwrap();
    let text = result.to_string();
    assert!(text.contains("(exists w"), "{text}");
    assert!(text.contains("(= (f x) w)"), "{text}");
}

#[test]
fn identity_translation_preserves_meaning_on_finite_structures() {
    let sig = sig_e();
    let translation = identity_translation(&sig);
    let sentences = vec![
        parse_formula("(forall x (E x x))", &sig).unwrap(),
        parse_formula("(exists x (exists y (and (E x y) (not (= x y)))))", &sig).unwrap(),
        parse_formula("(forall x (exists y (-> (E x y) (E y x))))", &sig).unwrap(),
    ];
    for sentence in sentences {
        let translated = translate(&sentence, &translation).unwrap();
        for structure in model::FiniteStructure::enumerate_relational(&sig, 2) {
            assert_eq!(
                structure.eval_sentence(&sentence).unwrap(),
                structure.eval_sentence(&translated).unwrap(),
                "sentence {sentence}"
            );
        }
    }
}

#[test]
fn obligations_for_relational_signature_have_no_totality() {
    let sig = sig_e();
    let translation = identity_translation(&sig);
    let obligations = interpretation_obligations(&[], &translation).unwrap();
    // Nonemptiness + equality axioms (refl, sym, trans, E-congruence);
    // no totality or functionality formulas.
    assert_eq!(obligations.len(), 1 + 4);
    assert!(matches!(obligations[0], Formula::Exists(..)));
}

#[test]
fn obligations_for_one_unary_function_have_one_totality_sentence() {
    let src = Signature::new().with_function("f", 1);
    let mut translation = identity_translation(&src);
    translation.target = src.clone();
    let obligations = interpretation_obligations(&[], &translation).unwrap();
    // nonemptiness, totality, functionality, refl, sym, trans, f-congruence.
    assert_eq!(obligations.len(), 7);
    let totality = &obligations[1];
    // ∀x0(δ(x0) → ∃y(δ(y) ∧ f_I(x0, y))): the paper's displayed shape.
    match totality {
        Formula::Forall(v, body) => {
            assert_eq!(v, "x0");
            assert!(matches!(**body, Formula::Implies(..)));
        }
        other => panic!("unexpected totality shape {other}"),
    }
}

#[test]
fn obligations_for_q_identity_line_up_with_q() {
    let sig = sig_q();
    let translation = identity_translation(&sig);
    let axioms = axioms_q();
    let obligations = interpretation_obligations(&axioms, &translation).unwrap();
    // 1 nonemptiness + 2 per function (4 functions) + equality axioms
    // (3 + congruence per function with arity ≥ 1, i.e. succ/add/mul) + 7.
    assert_eq!(obligations.len(), 1 + 8 + 6 + 7);
    // The translated axioms come last and stay logically faithful: each is
    // a sentence over Q's signature.
    for obligation in &obligations {
        sig.check_formula(obligation).unwrap();
        assert!(obligation.is_sentence());
    }
}

// ---------------------------------------------------------------------------
// Randomized properties
// ---------------------------------------------------------------------------

fn arb_term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        prop_oneof![Just("x"), Just("y"), Just("z"), Just("w")].prop_map(|v| var(v)),
        Just(app("c", vec![])),
    ];
    leaf.prop_recursive(depth, 8, 2, |inner| {
        inner.prop_map(|t| app("f", vec![t])).boxed()
    })
    .boxed()
}

fn arb_formula(depth: u32) -> BoxedStrategy<Formula> {
    let atom = prop_oneof![
        (arb_term(1), arb_term(1)).prop_map(|(a, b)| eq(a, b)),
        (arb_term(1), arb_term(1)).prop_map(|(a, b)| rel("E", vec![a, b])),
        arb_term(1).prop_map(|a| rel("P", vec![a])),
    ];
    atom.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner.clone())
                .prop_map(|(v, f)| forall(v, f)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner).prop_map(|(v, f)| exists(v, f)),
        ]
        .boxed()
    })
    .boxed()
}

/// Rename every binder in `f` apart using a global counter, so that naive
/// substitution cannot capture. Test oracle only.
fn rename_all_binders(f: &Formula, counter: &mut u64) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Rel(..) => f.clone(),
        Formula::Not(inner) => not(rename_all_binders(inner, counter)),
        Formula::And(a, b) => and(rename_all_binders(a, counter), rename_all_binders(b, counter)),
        Formula::Or(a, b) => or(rename_all_binders(a, counter), rename_all_binders(b, counter)),
        Formula::Implies(a, b) => implies(
            rename_all_binders(a, counter),
            rename_all_binders(b, counter),
        ),
        Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
            let fresh = format!("r{}", *counter);
            *counter += 1;
            let renamed = substitute(inner, v, &var(&fresh));
            let body = rename_all_binders(&renamed, counter);
            match f {
                Formula::Forall(..) => forall(&fresh, body),
                _ => exists(&fresh, body),
            }
        }
    }
}

fn naive_substitute(f: &Formula, variable: &str, term: &Term) -> Formula {
    // Only sound after rename_all_binders.
    let mut map = BTreeMap::new();
    map.insert(variable.to_string(), term.clone());
    substitute_many(f, &map)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(f in arb_formula(3)) {
        let sig = test_sig();
        let printed = f.to_string();
        prop_assert_eq!(parse_formula(&printed, &sig).unwrap(), f);
    }

    #[test]
    fn godel_round_trip(f in arb_formula(3)) {
        prop_assert_eq!(ungodel(&godel(&f)), Some(f));
    }

    #[test]
    fn substitution_never_captures(f in arb_formula(3), t in arb_term(2)) {
        // Free variables of the result are (FV(f) − {x}) ∪ FV(t) when x was
        // free, and FV(f) otherwise.
        let before = free_vars(&f);
        let result = substitute(&f, "x", &t);
        let after = free_vars(&result);
        let mut term_fv = std::collections::BTreeSet::new();
        super::subst::term_vars(&t, &mut term_fv);
        if before.contains("x") {
            let mut expected = before.clone();
            expected.remove("x");
            expected.extend(term_fv);
            prop_assert_eq!(after, expected);
        } else {
            prop_assert_eq!(after, before);
        }
    }

    #[test]
    fn substitution_matches_fresh_renaming_oracle(f in arb_formula(3), t in arb_term(2)) {
        let ours = substitute(&f, "x", &t);
        let mut counter = 0;
        let oracle = naive_substitute(&rename_all_binders(&f, &mut counter), "x", &t);
        prop_assert!(alpha_eq(&ours, &oracle), "{} vs {}", ours, oracle);
    }

    #[test]
    fn relativize_preserves_shape(f in arb_formula(3)) {
        // Structural oracle: same connective skeleton, rank grows by one per
        // quantifier (guards are quantifier-free here), atoms unchanged.
        let guard = rel("P", vec![var("x")]);
        let result = relativize(&f, &guard);
        prop_assert_eq!(result.quantifier_rank(), f.quantifier_rank());
        fn count_quantifiers(f: &Formula) -> u64 {
            match f {
                Formula::Eq(..) | Formula::Rel(..) => 0,
                Formula::Not(a) => count_quantifiers(a),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    count_quantifiers(a) + count_quantifiers(b)
                }
                Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + count_quantifiers(a),
            }
        }
        prop_assert_eq!(count_quantifiers(&result), count_quantifiers(&f));
    }

    #[test]
    fn translate_rank_overhead_is_bounded(f in arb_formula(3)) {
        // Quantifier rank grows by at most one guard level per quantifier
        // plus the flattening overhead: one extra level per function symbol
        // occurrence. With the identity translation components being
        // quantifier-free, rank ≤ original + function occurrences.
        let sig = test_sig();
        if sig.check_formula(&f).is_err() {
            return Ok(());
        }
        let translation = identity_translation(&sig);
        let translated = translate(&f, &translation).unwrap();
        fn function_occurrences(f: &Formula) -> u64 {
            fn in_term(t: &Term) -> u64 {
                match t {
                    Term::Var(_) => 0,
                    Term::App(_, args) => 1 + args.iter().map(in_term).sum::<u64>(),
                }
            }
            match f {
                Formula::Eq(a, b) => in_term(a) + in_term(b),
                Formula::Rel(_, args) => args.iter().map(in_term).sum(),
                Formula::Not(a) => function_occurrences(a),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    function_occurrences(a) + function_occurrences(b)
                }
                Formula::Forall(_, a) | Formula::Exists(_, a) => function_occurrences(a),
            }
        }
        prop_assert!(
            translated.quantifier_rank() <= f.quantifier_rank() + function_occurrences(&f)
        );
    }
}
