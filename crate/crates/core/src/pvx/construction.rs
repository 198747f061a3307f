//! The recursive-set construction itself: scan the theorem enumeration of
//! the base theory against each translation-and-conjunction pair, extract
//! the class-size ceiling of the first non-provable translated theorem,
//! fold into the strictly increasing bounding function, and push the
//! canonical inseparable pair through its range.

use super::enum_translation;
use super::hilbert::enum_theorem_sentences;
use crate::folog::{j_axiom, not, phi, translate, Formula, PHI_MATERIALIZE_CAP};
use crate::janiczak::{decide_combo_with_constraint, qe_auto_budgeted, JConstraint, SignedConjunction, TriState};
use crate::machine::{run, Fuel, RunOutcome};
use crate::theoryalg::{infimum, TheoryPresentation};
use crate::nat;
use serde::Serialize;

/// One resolved step of the construction: the conjunction `(n, j)`, the
/// translation index `i`, the position `m` of the first theorem whose
/// translation is not provable over the constrained theory, and the ceiling
/// extracted from its boolean combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TStep {
    pub n: u32,
    pub i: u64,
    pub j: u64,
    pub m: u64,
    pub combo_support: Vec<u64>,
    pub t: u64,
}

/// Machine-checkable record of a bounding-function computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XCertificate {
    /// The computed values `F(0), …`.
    pub values: Vec<u64>,
    /// Every step record backing the values.
    pub steps: Vec<TStep>,
    /// Set when the budget ran out before the requested value.
    pub exhausted: bool,
}

/// Scan budgets grow geometrically up to the fuel, so cheap answers stay
/// cheap and the full budget is only spent when needed.
fn budget_ladder(fuel: Fuel) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 64u64.min(fuel.max_steps);
    loop {
        out.push(k);
        if k >= fuel.max_steps {
            return out;
        }
        k = (k * 4).min(fuel.max_steps);
    }
}

/// The ceiling for one `(n, i, j)` triple: scan the theorem enumeration for
/// the least position whose translation is not provable over the theory
/// constrained by the signed conjunction, and return the supremum of `s+1`
/// over the class-size sentences its combination genuinely mentions.
pub fn t_value(
    n: u32,
    i: u64,
    j: u64,
    theory: &TheoryPresentation,
    fuel: Fuel,
) -> Option<(u64, TStep)> {
    let constraint: JConstraint = SignedConjunction::new(n, j).into();
    let translation = enum_translation(&theory.signature, &nat(i));
    for rounds in budget_ladder(fuel) {
        let theorems = enum_theorem_sentences(theory, Fuel::new(rounds));
        let mut work = fuel.max_steps;
        let mut exhausted = false;
        for (m, theorem) in theorems.iter().enumerate() {
            let translated = translate(theorem, &translation)
                .expect("theorems are over the theory signature");
            let Some(combo) = qe_auto_budgeted(&translated, &mut work) else {
                exhausted = true;
                break;
            };
            if decide_combo_with_constraint(&combo, &constraint) != TriState::Provable {
                let t = combo.sup_plus();
                let step = TStep {
                    n,
                    i,
                    j,
                    m: m as u64,
                    combo_support: combo.support().to_vec(),
                    t,
                };
                return Some((t, step));
            }
        }
        if exhausted {
            return None;
        }
    }
    None
}

/// `max(n + 1, t(n, i, j) for j < 2^n)`.
pub fn f_value(
    n: u32,
    i: u64,
    theory: &TheoryPresentation,
    fuel: Fuel,
) -> Option<(u64, Vec<TStep>)> {
    let mut value = u64::from(n) + 1;
    let mut steps = Vec::new();
    for j in 0..(1u64 << n) {
        let (t, step) = t_value(n, i, j, theory, fuel)?;
        value = value.max(t);
        steps.push(step);
    }
    Some((value, steps))
}

/// The bounding function: `F(0) = 0`, `F(k+1) = f(F(k)+1, k)`. Strictly
/// increasing with gaps of at least two.
pub fn big_f(upto: u64, theory: &TheoryPresentation, fuel: Fuel) -> Option<u64> {
    let certificate = big_f_certificate(upto, theory, fuel);
    certificate.values.get(upto as usize).copied()
}

/// As [`big_f`], returning the values computed so far and every step record
/// even when the budget runs out.
pub fn big_f_certificate(upto: u64, theory: &TheoryPresentation, fuel: Fuel) -> XCertificate {
    let mut values = vec![0u64];
    let mut steps = Vec::new();
    for k in 0..upto {
        let previous = values[k as usize];
        let n = match u32::try_from(previous + 1) {
            Ok(n) if n < 48 => n,
            _ => {
                return XCertificate {
                    values,
                    steps,
                    exhausted: true,
                }
            }
        };
        match f_value(n, k, theory, fuel) {
            Some((value, mut records)) => {
                values.push(value);
                steps.append(&mut records);
            }
            None => {
                return XCertificate {
                    values,
                    steps,
                    exhausted: true,
                }
            }
        }
    }
    XCertificate {
        values,
        steps,
        exhausted: false,
    }
}

/// Decide membership in the range of the bounding function by computing it
/// until it passes the query.
pub fn x_member(s: u64, theory: &TheoryPresentation, fuel: Fuel) -> Option<bool> {
    let mut current = 0u64;
    for k in 0u64.. {
        let value = big_f(k, theory, fuel)?;
        if k > 0 && value <= current {
            // Strict growth is certified elsewhere; bail out rather than
            // loop if it ever failed.
            return None;
        }
        current = value;
        if value == s {
            return Some(true);
        }
        if value > s {
            return Some(false);
        }
    }
    unreachable!()
}

/// The canonical inseparable pair pushed through the bounding function:
/// programs whose self-application outputs 0 land in the first stream,
/// output 1 in the second, each emitted as its image under the function
/// when that image is computable within the fuel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EiPair {
    /// Indices certified in the two halves of the canonical pair.
    pub k0: Vec<u64>,
    pub k1: Vec<u64>,
    /// Their images: the certified prefix of the first component set.
    pub y: Vec<u64>,
    pub z: Vec<u64>,
}

pub fn ei_pair_in_x(theory: &TheoryPresentation, fuel: Fuel, probe_bound: u64) -> EiPair {
    let mut pair = EiPair {
        k0: Vec::new(),
        k1: Vec::new(),
        y: Vec::new(),
        z: Vec::new(),
    };
    for e in 0..=probe_bound {
        let index = nat(e);
        if let RunOutcome::Halted { output, .. } = run(&index, &index, fuel) {
            let side = if output == nat(0) {
                Some(true)
            } else if output == nat(1) {
                Some(false)
            } else {
                None
            };
            let Some(positive) = side else { continue };
            if positive {
                pair.k0.push(e);
            } else {
                pair.k1.push(e);
            }
            if let Some(image) = big_f(e, theory, fuel) {
                if positive {
                    pair.y.push(image);
                } else {
                    pair.z.push(image);
                }
            }
        }
    }
    pair
}

/// The literal theory over the pushed pair: the base axioms interleaved
/// with the class-size sentences for the first stream and their negations
/// for the second.
pub fn build_v(y: &[u64], z: &[u64]) -> TheoryPresentation {
    let y: Vec<u64> = y.iter().copied().filter(|v| *v <= PHI_MATERIALIZE_CAP).collect();
    let z: Vec<u64> = z.iter().copied().filter(|v| *v <= PHI_MATERIALIZE_CAP).collect();
    TheoryPresentation::new("V", crate::folog::sig_e(), move |index| {
        // Walk rows of [base axiom, positive literal?, negative literal?].
        let mut emitted = 0u64;
        for k in 0u64.. {
            let mut row: Vec<Formula> = vec![j_axiom(k)];
            if let Some(v) = y.get(k as usize) {
                row.push(phi(*v));
            }
            if let Some(v) = z.get(k as usize) {
                row.push(not(phi(*v)));
            }
            for f in row {
                if emitted == index {
                    return Some(f);
                }
                emitted += 1;
            }
        }
        unreachable!()
    })
}

/// The effectively weaker companion: the interpretability infimum of the
/// base theory with the literal theory over its own recursive set.
pub fn build_weaker(theory: &TheoryPresentation, fuel: Fuel) -> TheoryPresentation {
    let pair = ei_pair_in_x(theory, fuel, 64.min(fuel.max_steps));
    let v = build_v(&pair.y, &pair.z);
    infimum(theory, &v)
}
