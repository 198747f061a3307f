use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn halt() -> Nat {
    encode(&[Instruction::Halt])
}

/// `DECJZ 1 0` with register 1 permanently zero: jumps to itself forever.
fn looper() -> Nat {
    encode(&[Instruction::DecJz(1, 0)])
}

#[test]
fn halt_program_preserves_input() {
    assert_eq!(
        run(&halt(), &nat(5), Fuel::new(10)),
        RunOutcome::Halted {
            steps: 0,
            output: nat(5)
        }
    );
}

#[test]
fn single_increment_takes_one_step() {
    let e = encode(&[Instruction::Inc(0), Instruction::Halt]);
    assert_eq!(
        run(&e, &nat(4), Fuel::new(10)),
        RunOutcome::Halted {
            steps: 1,
            output: nat(5)
        }
    );
}

#[test]
fn const_program_ignores_input() {
    let e = const_index(&nat(3));
    assert_eq!(run(&e, &nat(99), Fuel::new(10)).output(), Some(&nat(3)));
    assert_eq!(run(&e, &nat(0), Fuel::new(10)).output(), Some(&nat(3)));
}

#[test]
fn const_step_count_independent_of_input() {
    let e = const_index(&nat(5));
    let a = run(&e, &nat(0), Fuel::new(100)).steps().unwrap();
    let b = run(&e, &nat(1000), Fuel::new(100)).steps().unwrap();
    assert_eq!(a, b);
}

#[test]
fn const_indices_distinct() {
    for n in 0..=10u64 {
        for m in 0..n {
            assert_ne!(const_index(&nat(n)), const_index(&nat(m)));
        }
    }
}

#[test]
fn t1_immediate_halt_has_witness_one() {
    assert!(t1(&halt(), &nat(0), 1));
    assert!(!t1(&halt(), &nat(0), 0));
    assert!(!t1(&halt(), &nat(0), 2));
}

#[test]
fn t1_counts_steps_exactly() {
    let e = encode(&[Instruction::Inc(0), Instruction::Halt]);
    assert!(t1(&e, &nat(0), 2));
    assert!(!t1(&e, &nat(0), 1));
}

#[test]
fn w_member_halt_is_yes_one() {
    assert_eq!(w_member(&halt(), &nat(7), Fuel::new(5)), WMember::Yes(1));
}

#[test]
fn w_member_divergence_never_certified() {
    assert_eq!(
        w_member(&looper(), &nat(0), Fuel::new(1000)),
        WMember::Unknown
    );
}

#[test]
fn w_member_witnesses_satisfy_t1() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut checked = 0;
    while checked < 100 {
        let e = nat(rng.gen_range(0..5000u64));
        let x = nat(rng.gen_range(0..100u64));
        if let WMember::Yes(y) = w_member(&e, &x, Fuel::new(200)) {
            assert!(t1(&e, &x, y), "witness must satisfy t1");
            checked += 1;
        }
    }
}

#[test]
fn pairing_closed_form() {
    assert_eq!(pair(&nat(0), &nat(0)), nat(0));
    // Direct evaluation: (1 + 2)(1 + 2 + 1)/2 + 2 = 8.
    assert_eq!(pair(&nat(1), &nat(2)), nat(8));
    assert_eq!(unpair0(&nat(8)), nat(1));
    assert_eq!(unpair1(&nat(8)), nat(2));
}

#[test]
fn unpair_matches_diagonal_search() {
    // Independent oracle: walk the diagonal enumeration until z is reached.
    let mut z = 0u64;
    'outer: for d in 0..60u64 {
        for y in 0..=d {
            let x = d - y;
            assert_eq!(unpair(&nat(z)), (nat(x), nat(y)));
            z += 1;
            if z > 1000 {
                break 'outer;
            }
        }
    }
}

#[test]
fn smn_contract_on_samples() {
    // Outer program adds one to its (paired) input.
    let e = encode(&[Instruction::Inc(0), Instruction::Halt]);
    let a = nat(9);
    let curried = smn(&e, &a);
    for x in (0..500u64).step_by(10) {
        let direct = run(&e, &pair(&a, &nat(x)), Fuel::new(100_000));
        let via_smn = run(&curried, &nat(x), Fuel::new(100_000));
        assert_eq!(direct.output(), via_smn.output(), "x = {x}");
    }
}

#[test]
fn smn_injective_in_parameter() {
    let e = nat(77);
    let mut seen = std::collections::HashSet::new();
    for a in 0..=20u64 {
        assert!(seen.insert(smn(&e, &nat(a))));
    }
}

#[test]
fn smn_instance_at_zero() {
    let e = encode(&[Instruction::Halt]);
    let direct = run(&e, &pair(&nat(0), &nat(0)), Fuel::new(100));
    let via_smn = run(&smn(&e, &nat(0)), &nat(0), Fuel::new(100));
    assert_eq!(direct.output(), via_smn.output());
}

#[test]
fn fixed_point_of_identity_is_consistent() {
    // The identity transformer maps every index to itself; any behaviour
    // satisfies the fixed-point equation, and ours diverges.
    let identity = halt();
    let n = kleene_fixed_point(&identity);
    assert_eq!(run(&n, &nat(3), Fuel::new(500)), RunOutcome::OutOfFuel);
}

#[test]
fn fixed_point_of_constant_transformer() {
    // Transformer maps every index to const_index(7).
    let transformer = const_index(&const_index(&nat(7)));
    let n = kleene_fixed_point(&transformer);
    for x in 0..20u64 {
        assert_eq!(run(&n, &nat(x), Fuel::new(1000)).output(), Some(&nat(7)));
    }
}

#[test]
fn fixed_point_reproducible() {
    let t = const_index(&const_index(&nat(7)));
    assert_eq!(kleene_fixed_point(&t), kleene_fixed_point(&t));
}

#[test]
fn program_text_round_trip() {
    let text = "INC 0\nDECJZ 0 3\nHALT\n";
    let parsed = parse_program(text).unwrap();
    assert_eq!(
        parsed,
        vec![
            Instruction::Inc(0),
            Instruction::DecJz(0, 3),
            Instruction::Halt
        ]
    );
    assert_eq!(print_program(&parsed), text);
}

#[test]
fn program_parse_reports_position() {
    let err = parse_program("INC 0\nBOOP 1\n").unwrap_err();
    assert_eq!(err.line, 2);
}

#[test]
fn determinism_across_threads() {
    let e = nat(123_456);
    let x = nat(17);
    let expected = run(&e, &x, Fuel::new(2000));
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let (e, x) = (e.clone(), x.clone());
            std::thread::spawn(move || run(&e, &x, Fuel::new(2000)))
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), expected);
    }
}

proptest! {
    #[test]
    fn decode_encode_round_trip(ops in proptest::collection::vec(0u8..3, 0..12), args in proptest::collection::vec((0u64..50, 0u64..50), 12)) {
        let instructions: Vec<Instruction> = ops
            .iter()
            .zip(&args)
            .map(|(op, (a, b))| match op {
                0 => Instruction::Inc(*a),
                1 => Instruction::DecJz(*a, *b),
                _ => Instruction::Halt,
            })
            .collect();
        let index = encode(&instructions);
        prop_assert_eq!(decode(&index), Program::Concrete(instructions));
    }

    #[test]
    fn pair_bijective_on_samples(x in 0u64..10_000, y in 0u64..10_000) {
        let z = pair(&nat(x), &nat(y));
        prop_assert_eq!(unpair(&z), (nat(x), nat(y)));
    }

    #[test]
    fn every_nat_decodes(n in 0u64..200_000) {
        // Surjective decoding: decoding never panics and re-running the
        // decoded program is consistent.
        let _ = decode(&nat(n));
    }

    #[test]
    fn t1_witness_unique_for_halting_runs(e in 0u64..3_000, x in 0u64..50) {
        let (e, x) = (nat(e), nat(x));
        if let RunOutcome::Halted { steps, .. } = run(&e, &x, Fuel::new(300)) {
            let witnesses: Vec<u64> = (0..=300
                ).filter(|&y| t1(&e, &x, y)).collect();
            prop_assert_eq!(witnesses, vec![steps + 1]);
        }
    }
}
