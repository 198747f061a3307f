use super::*;
use crate::machine::{encode, pair_u64, t1, w_member, Instruction, WMember};

fn halt_all() -> ReIndex {
    ReIndex::new(encode(&[Instruction::Halt]))
}

fn never() -> ReIndex {
    ReIndex::new(encode(&[Instruction::DecJz(1, 0)]))
}

/// Halts exactly on even inputs.
pub fn evens() -> ReIndex {
    ReIndex::new(encode(&[
        Instruction::DecJz(0, 4),
        Instruction::DecJz(0, 3),
        Instruction::DecJz(1, 0),
        Instruction::DecJz(1, 3),
    ]))
}

#[test]
fn enumeration_of_total_program_is_initial_segment() {
    let prefix = enumerate_without_reps(&halt_all(), Fuel::new(50));
    let expected: Vec<Nat> = (0..=50u64).map(nat).collect();
    assert_eq!(prefix.elements, expected);
}

#[test]
fn enumeration_of_divergent_program_is_empty() {
    let prefix = enumerate_without_reps(&never(), Fuel::new(200));
    assert!(prefix.elements.is_empty());
}

#[test]
fn enumeration_is_monotone_in_fuel() {
    for e in [halt_all(), evens(), ReIndex::new(nat(777))] {
        let small = enumerate_without_reps(&e, Fuel::new(100));
        let large = enumerate_without_reps(&e, Fuel::new(1000));
        assert!(large.elements.starts_with(&small.elements), "e = {:?}", e.e);
    }
}

#[test]
fn enumeration_has_no_repetitions() {
    let prefix = enumerate_without_reps(&evens(), Fuel::new(500));
    let mut seen = std::collections::HashSet::new();
    for x in &prefix.elements {
        assert!(seen.insert(x.clone()));
        // Every element carries a halting witness within fuel.
        assert!(matches!(
            w_member(&evens().e, x, Fuel::new(500)),
            WMember::Yes(_)
        ));
    }
    assert!(!prefix.elements.is_empty());
}

#[test]
fn family_value_needs_certified_first_component() {
    // The first component never enters the set, so membership is unknown
    // at every fuel.
    let x = pair(&nat(1), &nat(0));
    assert_eq!(family_g(&evens(), &x, Fuel::new(300)), GValue::Unknown);
    assert_eq!(family_g(&evens(), &x, Fuel::new(600)), GValue::Unknown);
}

#[test]
fn family_value_for_constant_program() {
    // 0 is enumerated first (position 0) and 2 second (position 1) for the
    // evens program; the constant program halts in one step, so the pair
    // with first component at position s gets a value exactly when s ≥ 2.
    let e = evens();
    let e0 = const_index(&nat(9));
    let at_position_2 = pair(&nat(4), &e0);
    assert_eq!(
        family_g(&e, &at_position_2, Fuel::new(400)),
        GValue::Value(nat(9))
    );
    let at_position_0 = pair(&nat(0), &e0);
    assert_eq!(family_g(&e, &at_position_0, Fuel::new(400)), GValue::Undefined);
}

#[test]
fn family_values_are_fuel_stable() {
    let e = evens();
    let x = pair(&nat(4), &const_index(&nat(9)));
    let small = family_g(&e, &x, Fuel::new(400));
    let large = family_g(&e, &x, Fuel::new(4000));
    assert_eq!(small, large);
    assert!(matches!(small, GValue::Value(_)));
}

#[test]
fn bn_members_are_functionally_disjoint() {
    let e = evens();
    let fuel = Fuel::new(300);
    for x in 0..200u64 {
        let x = nat(x);
        let mut members = 0;
        for n in 0..4u64 {
            if bn_member(&e, &nat(n), &x, fuel) == BnAnswer::Yes {
                members += 1;
            }
        }
        assert!(members <= 1, "level sets of a function are disjoint");
    }
}

#[test]
fn bn_never_yes_without_enumerated_component() {
    let e = evens();
    let fuel = Fuel::new(300);
    let prefix = enumerate_without_reps(&e, fuel);
    for x in 0..200u64 {
        let x = nat(x);
        if bn_member(&e, &nat(0), &x, fuel) == BnAnswer::Yes {
            assert!(prefix.contains(&unpair(&x).0));
        }
    }
}

#[test]
fn bn_reduction_rejects_on_oracle_no() {
    let e = evens();
    let oracle_a = OracleHandle::new("evens", |x| {
        use num_integer::Integer;
        x.is_even()
    });
    // First component odd: oracle rejects, so the answer is an immediate no.
    let x = pair(&nat(3), &nat(0));
    assert_eq!(
        bn_reduce_to_a(&e, &nat(0), &x, &oracle_a, Fuel::new(100)),
        Some(false)
    );
}

#[test]
fn bn_reduction_agrees_with_direct_semi_decision() {
    let e = evens();
    let fuel = Fuel::new(400);
    let oracle = OracleHandle::new("evens", |x| {
        use num_integer::Integer;
        x.is_even()
    });
    for x in 0..=200u64 {
        let x = nat(x);
        for n in 0..3u64 {
            let n = nat(n);
            let direct = bn_member(&e, &n, &x, fuel);
            let reduced = bn_reduce_to_a(&e, &n, &x, &oracle, fuel);
            match (direct, reduced) {
                (BnAnswer::Yes, Some(answer)) => assert!(answer),
                (BnAnswer::No, Some(answer)) => assert!(!answer),
                _ => {}
            }
        }
    }
}

#[test]
fn a_reduction_accepts_on_oracle_yes() {
    let e = evens();
    let always = OracleHandle::new("always", |_| true);
    assert_eq!(
        a_reduce_to_bn(&e, &nat(0), &nat(3), &always, Fuel::new(100)),
        Some(true)
    );
}

#[test]
fn a_reduction_agrees_with_direct_membership() {
    let e = evens();
    let fuel = Fuel::new(2000);
    // Truthful oracle for B_n built from the direct decision procedure.
    for n in 0..2u64 {
        let n_val = nat(n);
        let e_for_oracle = e.clone();
        let n_for_oracle = n_val.clone();
        let oracle = OracleHandle::new("bn", move |x| {
            bn_member(&e_for_oracle, &n_for_oracle, x, Fuel::new(2000)) == BnAnswer::Yes
        });
        for x in 0..=200u64 {
            let x = nat(x);
            if let Some(answer) = a_reduce_to_bn(&e, &n_val, &x, &oracle, fuel) {
                let direct = matches!(w_member(&e.e, &x, fuel), WMember::Yes(_));
                assert_eq!(answer, direct, "x = {x}, n = {n}");
            }
        }
    }
}

#[test]
fn shoenfield_prefixes_are_disjoint() {
    let pair = shoenfield_pair(&evens());
    let fuel = Fuel::new(2000);
    let b = enumerate_without_reps(&pair.i_b, fuel);
    let c = enumerate_without_reps(&pair.i_c, fuel);
    assert!(!b.elements.is_empty());
    for x in &b.elements {
        assert!(!c.elements.contains(x), "prefixes intersect at {x}");
    }
}

#[test]
fn shoenfield_membership_needs_source_membership() {
    let pair = shoenfield_pair(&evens());
    let fuel = Fuel::new(1500);
    let b = enumerate_without_reps(&pair.i_b, fuel);
    let c = enumerate_without_reps(&pair.i_c, fuel);
    use num_integer::Integer;
    for x in b.elements.iter().chain(&c.elements) {
        assert!(unpair(x).0.is_even(), "first component must be in the source");
    }
}

#[test]
fn shoenfield_decides_certified_pairs_one_way() {
    // For x with certified first component, exactly one side eventually
    // accepts: exhaust both clauses at the certified witness.
    let sp = shoenfield_pair(&evens());
    let fuel = Fuel::new(3000);
    for x0 in [0u64, 2, 4] {
        for p in 0..40u64 {
            let x = pair(&nat(x0), &nat(p));
            // Independent oracle: evaluate the two defining clauses directly
            // with the step predicate.
            let witness = (1..=200u64)
                .find(|&y| t1(&sp.source.e, &nat(x0), y))
                .expect("even inputs are certified");
            let inner_halts = (1..=witness).any(|z| t1(&nat(p), &x, z));
            let in_b = matches!(w_member(&sp.i_b.e, &x, fuel), WMember::Yes(_));
            let in_c = matches!(w_member(&sp.i_c.e, &x, fuel), WMember::Yes(_));
            assert_eq!(in_b, !inner_halts, "x = {x}");
            assert_eq!(in_c, inner_halts, "x = {x}");
        }
    }
}

#[test]
fn separator_reduction_with_b_as_separator_recovers_source() {
    let e = evens();
    let sp = shoenfield_pair(&e);
    let oracle_fuel = Fuel::new(5000);
    let d = OracleHandle::from_w_member("B", sp.i_b.e.clone(), oracle_fuel);
    let fuel = Fuel::new(5000);
    let mut decided = 0;
    for x in 0..=100u64 {
        let x = nat(x);
        if let Some(answer) = separator_reduction(&e, &sp.i_b, &d, &x, fuel) {
            let direct = matches!(w_member(&e.e, &x, oracle_fuel), WMember::Yes(_));
            assert_eq!(answer, direct, "x = {x}");
            decided += 1;
        }
    }
    assert!(decided > 50, "most small inputs should be decided");
}

#[test]
fn separator_reduction_short_circuits_on_rejection() {
    let e = evens();
    let sp = shoenfield_pair(&e);
    let reject = OracleHandle::new("empty", |_| false);
    assert_eq!(
        separator_reduction(&e, &sp.i_b, &reject, &nat(4), Fuel::new(10)),
        Some(false)
    );
}

#[test]
fn constant_true_candidate_fails_on_nonempty_second_prefix() {
    let sp = shoenfield_pair(&evens());
    let fuel = Fuel::new(2000);
    let c = enumerate_without_reps(&sp.i_c, fuel);
    assert!(!c.elements.is_empty());
    let candidate = OracleHandle::new("true", |_| true);
    assert!(matches!(
        test_separator(&sp.i_b, &sp.i_c, &candidate, 1_000_000, fuel),
        SeparatorVerdict::Counterexample(_)
    ));
}

#[test]
fn exact_prefix_decider_passes() {
    let sp = shoenfield_pair(&evens());
    let fuel = Fuel::new(2000);
    let b = enumerate_without_reps(&sp.i_b, fuel).elements;
    let candidate = OracleHandle::from_set("B-prefix", b);
    assert_eq!(
        test_separator(&sp.i_b, &sp.i_c, &candidate, 1_000_000, fuel),
        SeparatorVerdict::Pass
    );
}

#[test]
fn small_decider_catalog_fails_to_separate() {
    use num_integer::Integer;
    let sp = shoenfield_pair(&evens());
    let fuel = Fuel::new(2500);
    let mut catalog: Vec<OracleHandle> = vec![
        OracleHandle::new("true", |_| true),
        OracleHandle::new("false", |_| false),
        OracleHandle::new("even", |x| x.is_even()),
        OracleHandle::new("odd", |x| x.is_odd()),
    ];
    for m in 2..25u64 {
        for r in 0..2u64 {
            let (m_, r_) = (nat(m), nat(r));
            catalog.push(OracleHandle::new(&format!("mod{m}={r}"), move |x| {
                x % &m_ == r_
            }));
        }
    }
    assert!(catalog.len() >= 50);
    for candidate in &catalog {
        assert!(
            matches!(
                test_separator(&sp.i_b, &sp.i_c, candidate, 500, fuel),
                SeparatorVerdict::Counterexample(_)
            ),
            "candidate {} unexpectedly separates",
            candidate.label()
        );
    }
}
