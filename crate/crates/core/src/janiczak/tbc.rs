//! The theory assembled from a disjoint pair of r.e. literal index sets:
//! its oracle decision procedure, its fuel-bounded theorem enumeration, and
//! the index transformer that hands out a machine index for the theorem
//! set.

use super::qe::{qe, qe_cost_estimate};
use super::TriState;
use crate::folog::{
    self, code_byte_len, godel, neg_phi_code_param, phi, phi_code_param, sig_e, ungodel, Formula,
};
use crate::machine::{run, Fuel, RunOutcome, VirtualProgram};
use crate::resets::OracleHandle;
use crate::{nat, Nat};

/// Decide a sentence over the theory with positive literals from `B` and
/// negated ones from `C`: pin each supporting atom by the oracles, then
/// quantify over the free completions.
pub fn tbc_decide(
    sentence: &Formula,
    oracle_b: &OracleHandle,
    oracle_c: &OracleHandle,
) -> TriState {
    let combo = qe(sentence);
    let support = combo.support().to_vec();
    let pins: Vec<Option<bool>> = support
        .iter()
        .map(|atom| {
            let n = nat(*atom);
            if oracle_b.decide(&n) {
                Some(true)
            } else if oracle_c.decide(&n) {
                Some(false)
            } else {
                None
            }
        })
        .collect();
    decide_under_pins(&combo, &support, &pins)
}

fn decide_under_pins(
    combo: &super::BoolCombo,
    support: &[u64],
    pins: &[Option<bool>],
) -> TriState {
    let free: Vec<usize> = (0..support.len()).filter(|i| pins[*i].is_none()).collect();
    let mut any_true = false;
    let mut any_false = false;
    for completion in 0u64..(1 << free.len()) {
        let value_of = |atom: u64| {
            let i = support.iter().position(|a| *a == atom).unwrap();
            match pins[i] {
                Some(v) => v,
                None => {
                    let k = free.iter().position(|j| *j == i).unwrap();
                    completion >> k & 1 == 1
                }
            }
        };
        if combo.satisfied_by(value_of) {
            any_true = true;
        } else {
            any_false = true;
        }
        if any_true && any_false {
            return TriState::Independent;
        }
    }
    match (any_true, any_false) {
        (_, false) => TriState::Provable,
        (false, true) => TriState::Refutable,
        (true, true) => unreachable!(),
    }
}

/// The halting stage of the theory program on a sentence code, below `cap`:
/// the first stage at which the certified literals force the sentence's
/// boolean combination true. Class-size codes take the direct route, so
/// their admission cost does not depend on the parameter; everything else
/// is gated by code size and estimated elimination cost before any work is
/// done on it.
pub(crate) fn tbc_code_stage(pos: &Nat, neg: &Nat, code: &Nat, cap: u64) -> Option<u64> {
    if cap == 0 {
        return None;
    }
    let inner = Fuel::new(cap - 1);
    if let Some(n) = phi_code_param(code) {
        // Φ_n is provable exactly when n enters the positive set.
        return match run(pos, &n, inner) {
            RunOutcome::Halted { steps, .. } => Some(steps + 1),
            RunOutcome::OutOfFuel => None,
        };
    }
    if let Some(n) = neg_phi_code_param(code) {
        return match run(neg, &n, inner) {
            RunOutcome::Halted { steps, .. } => Some(steps + 1),
            RunOutcome::OutOfFuel => None,
        };
    }
    let gate = code_byte_len(code);
    if gate >= cap {
        return None;
    }
    let sentence = ungodel(code)?;
    if sig_e().check_formula(&sentence).is_err() || !sentence.is_sentence() {
        return None;
    }
    let cost = qe_cost_estimate(&sentence);
    if cost >= cap {
        return None;
    }
    let base = gate.max(cost).max(1);
    let combo = qe(&sentence);
    if combo.is_tautology() {
        return Some(base);
    }
    let support = combo.support().to_vec();
    // Certification stage of each literal on each side, when within reach.
    let cert = |index: &Nat, atom: u64| -> Option<u64> {
        match run(index, &nat(atom), inner) {
            RunOutcome::Halted { steps, .. } => Some(steps + 1),
            RunOutcome::OutOfFuel => None,
        }
    };
    let pos_stage: Vec<Option<u64>> = support.iter().map(|a| cert(pos, *a)).collect();
    let neg_stage: Vec<Option<u64>> = support.iter().map(|a| cert(neg, *a)).collect();
    // Forcing is monotone in the stage, so the first candidate stage that
    // works is the halting stage. Candidates: the base plus every literal
    // arrival at or after it.
    let mut candidates: Vec<u64> = vec![base];
    for stage in pos_stage.iter().chain(neg_stage.iter()).flatten() {
        candidates.push((*stage).max(base));
    }
    candidates.sort_unstable();
    candidates.dedup();
    for k in candidates {
        if k >= cap {
            return None;
        }
        let pins: Vec<Option<bool>> = (0..support.len())
            .map(|i| {
                // Positive certification takes precedence; the sets are
                // disjoint for every honest caller.
                if pos_stage[i].is_some_and(|s| s <= k) {
                    Some(true)
                } else if neg_stage[i].is_some_and(|s| s <= k) {
                    Some(false)
                } else {
                    None
                }
            })
            .collect();
        if decide_under_pins(&combo, &support, &pins) == TriState::Provable {
            return Some(k);
        }
    }
    None
}

/// Fuel-bounded theorem enumeration: a deterministic candidate pool of
/// class-size sentences, their negations, small boolean combinations and a
/// battery of low-rank sentences, filtered by the same forcing test the
/// theory program runs. Monotone in fuel.
pub fn tbc_enumerate(pos: &Nat, neg: &Nat, fuel: Fuel) -> Vec<Formula> {
    let cap = fuel.max_steps;
    let mut out = Vec::new();
    for candidate in candidate_pool(cap) {
        if tbc_code_stage(pos, neg, &godel(&candidate), cap).is_some() {
            out.push(candidate);
        }
    }
    out
}

fn candidate_pool(cap: u64) -> Vec<Formula> {
    use folog::{and, eq, exists, forall, implies, not, or, rel, var};
    let e = |a: &str, b: &str| rel("E", vec![var(a), var(b)]);
    let mut pool = Vec::new();
    let n_max = cap.min(60);
    for n in 0..n_max {
        pool.push(phi(n));
        pool.push(not(phi(n)));
    }
    let k_max = cap.min(6);
    for a in 0..k_max {
        pool.push(or(phi(a), not(phi(a))));
        for b in 0..k_max {
            pool.push(or(phi(a), phi(b)));
            pool.push(and(phi(a), phi(b)));
            pool.push(implies(phi(a), phi(b)));
        }
    }
    if cap > 0 {
        // Low-rank battery: validities and refutables of the base theory
        // among them.
        pool.push(exists("x", eq(var("x"), var("x"))));
        pool.push(forall("x", e("x", "x")));
        pool.push(forall("x", forall("y", implies(e("x", "y"), e("y", "x")))));
        pool.push(exists("x", exists("y", not(e("x", "y")))));
        pool.push(exists("x", exists("y", and(e("x", "y"), not(eq(var("x"), var("y")))))));
        pool.push(forall("x", exists("y", e("x", "y"))));
        pool.push(not(exists("x", eq(var("x"), var("x")))));
        pool.push(forall("x", not(e("x", "x"))));
        pool.push(exists("x", forall("y", implies(e("x", "y"), eq(var("y"), var("x"))))));
    }
    pool.dedup();
    pool
}

/// A machine index whose semi-decided set is the theorem codes of the
/// theory built on the literal index pair. Pure index computation.
pub fn theory_index(pos: &Nat, neg: &Nat) -> Nat {
    VirtualProgram::TbcTheory {
        pos: pos.clone(),
        neg: neg.clone(),
    }
    .index()
}
