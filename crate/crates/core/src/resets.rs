//! The calculus of recursively enumerable sets: dovetailed enumeration
//! without repetition, the output-indexed family of disjoint sets over a
//! common source, the Shoenfield pair, and every reduction claim spelled
//! out as an explicit oracle procedure.

use crate::machine::{
    const_index, pair, run, unpair, Fuel, RunOutcome, VirtualProgram, WMember,
};
use crate::{nat, Nat};
use num_traits::ToPrimitive;
use std::fmt;
use std::sync::Arc;

/// An index `e` standing for the semi-decided set `W_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReIndex {
    pub e: Nat,
}

impl ReIndex {
    pub fn new(e: Nat) -> Self {
        ReIndex { e }
    }
}

impl From<Nat> for ReIndex {
    fn from(e: Nat) -> Self {
        ReIndex { e }
    }
}

/// A certified initial segment of an enumeration: injective, every element
/// backed by a halting witness within the fuel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumPrefix {
    pub elements: Vec<Nat>,
    pub fuel_used: Fuel,
}

impl EnumPrefix {
    pub fn contains(&self, x: &Nat) -> bool {
        self.elements.contains(x)
    }

    pub fn position(&self, x: &Nat) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }
}

/// A total decision callback with a label. Total and deterministic for the
/// duration of a run; callers must not mutate its behaviour mid-run.
#[derive(Clone)]
pub struct OracleHandle {
    label: String,
    decide: Arc<dyn Fn(&Nat) -> bool + Send + Sync>,
}

impl OracleHandle {
    pub fn new(label: &str, decide: impl Fn(&Nat) -> bool + Send + Sync + 'static) -> Self {
        OracleHandle {
            label: label.to_string(),
            decide: Arc::new(decide),
        }
    }

    /// Membership in a fixed finite set.
    pub fn from_set(label: &str, elements: Vec<Nat>) -> Self {
        OracleHandle::new(label, move |x| elements.contains(x))
    }

    /// Semi-decision of `W_e` truncated at a fuel: a truthful oracle on
    /// every input it certifies, and silent (false) beyond.
    pub fn from_w_member(label: &str, e: Nat, fuel: Fuel) -> Self {
        OracleHandle::new(label, move |x| {
            matches!(crate::machine::w_member(&e, x, fuel), WMember::Yes(_))
        })
    }

    pub fn decide(&self, x: &Nat) -> bool {
        (self.decide)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for OracleHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleHandle")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

/// The pair of disjoint r.e. sets built from a source set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShoenfieldPair {
    pub source: ReIndex,
    pub i_b: ReIndex,
    pub i_c: ReIndex,
}

/// Value of the output-indexed partial function on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GValue {
    Value(Nat),
    Undefined,
    Unknown,
}

/// Fuel-bounded three-valued membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnAnswer {
    Yes,
    No,
    Unknown,
}

/// Result of probing a candidate separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorVerdict {
    Pass,
    Counterexample(Nat),
}

/// Dovetailed enumeration of `W_e` without repetitions, restricted to
/// witnesses within the fuel: stage `k` admits inputs up to `k` simulated
/// for `k` steps, and elements appear at their first certification, inputs
/// ascending within a stage. Monotone in fuel.
pub fn enumerate_without_reps(e: &ReIndex, fuel: Fuel) -> EnumPrefix {
    let cap = fuel.max_steps;
    // An element x with witness y = steps + 1 first appears at stage
    // max(x, y); sorting by (stage, x) reproduces the scan order, and new
    // fuel can only append (a fresh element has x or y above the old cap).
    let mut discovered: Vec<(u64, u64, Nat)> = Vec::new();
    for x in 0..=cap {
        let input = nat(x);
        if let RunOutcome::Halted { steps, .. } = run(&e.e, &input, fuel) {
            let stage = x.max(steps + 1);
            discovered.push((stage, x, input));
        }
    }
    discovered.sort();
    EnumPrefix {
        elements: discovered.into_iter().map(|(_, _, x)| x).collect(),
        fuel_used: fuel,
    }
}

/// The partial function whose level sets form the disjoint family: on
/// `⟨x₀, p⟩`, its value is `n` when `x₀` is enumerated at position `s` and
/// program `p` on the whole pair outputs `n` within fewer than `s` steps.
pub fn family_g(e: &ReIndex, x: &Nat, fuel: Fuel) -> GValue {
    let prefix = enumerate_without_reps(e, fuel);
    let (x0, p) = unpair(x);
    let Some(position) = prefix.position(&x0) else {
        return GValue::Unknown;
    };
    match run(&p, x, Fuel::new(position as u64)) {
        RunOutcome::Halted { output, .. } => GValue::Value(output),
        // The run provably needs at least `position` steps, so no witness
        // below the enumeration position exists.
        RunOutcome::OutOfFuel => GValue::Undefined,
    }
}

/// Membership in the n-th member of the family.
pub fn bn_member(e: &ReIndex, n: &Nat, x: &Nat, fuel: Fuel) -> BnAnswer {
    match family_g(e, x, fuel) {
        GValue::Value(m) if m == *n => BnAnswer::Yes,
        GValue::Value(_) | GValue::Undefined => BnAnswer::No,
        GValue::Unknown => BnAnswer::Unknown,
    }
}

/// Decide membership in the n-th family member with an oracle for the
/// source set: reject when the first component is outside it, otherwise
/// locate the enumeration position and bound the program run by it.
pub fn bn_reduce_to_a(
    e: &ReIndex,
    n: &Nat,
    x: &Nat,
    oracle_a: &OracleHandle,
    fuel: Fuel,
) -> Option<bool> {
    let (x0, p) = unpair(x);
    if !oracle_a.decide(&x0) {
        return Some(false);
    }
    let prefix = enumerate_without_reps(e, fuel);
    let position = prefix.position(&x0)?;
    match run(&p, x, Fuel::new(position as u64)) {
        RunOutcome::Halted { output, .. } => Some(output == *n),
        RunOutcome::OutOfFuel => Some(false),
    }
}

/// Decide membership in the source set with an oracle for the n-th family
/// member: query the pair with the constant-n program, and fall back to the
/// enumeration prefix up to that program's step count.
pub fn a_reduce_to_bn(
    e: &ReIndex,
    n: &Nat,
    x: &Nat,
    oracle_bn: &OracleHandle,
    fuel: Fuel,
) -> Option<bool> {
    let e0 = const_index(n);
    let z = pair(x, &e0);
    if oracle_bn.decide(&z) {
        return Some(true);
    }
    let w = match run(&e0, &z, Fuel::new(8)) {
        RunOutcome::Halted { steps, .. } => steps as usize,
        RunOutcome::OutOfFuel => unreachable!("constant programs halt"),
    };
    let prefix = enumerate_without_reps(e, fuel);
    let head = &prefix.elements[..prefix.elements.len().min(w + 1)];
    if head.contains(x) {
        return Some(true);
    }
    if prefix.elements.len() >= w + 1 {
        Some(false)
    } else {
        // The prefix could not be certified to length w + 1 within fuel.
        None
    }
}

/// Build the disjoint pair over `W_e` as a pure index computation.
pub fn shoenfield_pair(e: &ReIndex) -> ShoenfieldPair {
    let i_b = VirtualProgram::ShoenfieldB {
        source: e.e.clone(),
    }
    .index();
    let i_c = VirtualProgram::ShoenfieldC {
        source: e.e.clone(),
    }
    .index();
    ShoenfieldPair {
        source: e.clone(),
        i_b: ReIndex::new(i_b),
        i_c: ReIndex::new(i_c),
    }
}

/// Decide `x ∈ W_e` with an oracle for a separator `D = W_n` of the pair:
/// reject when `⟨x, n⟩` is outside `D`; otherwise locate the unique witness
/// `z` for `⟨x, n⟩ ∈ W_n` and answer whether the source has a witness
/// strictly below it.
pub fn separator_reduction(
    e: &ReIndex,
    n: &ReIndex,
    oracle_d: &OracleHandle,
    x: &Nat,
    fuel: Fuel,
) -> Option<bool> {
    let z0 = pair(x, &n.e);
    if !oracle_d.decide(&z0) {
        return Some(false);
    }
    let witness = match run(&n.e, &z0, fuel) {
        RunOutcome::Halted { steps, .. } => steps + 1,
        RunOutcome::OutOfFuel => return None,
    };
    match run(&e.e, x, Fuel::new(witness - 1)) {
        RunOutcome::Halted { .. } => Some(true),
        RunOutcome::OutOfFuel => Some(false),
    }
}

/// Probe a candidate separator against the certified prefixes: it must
/// accept everything certified in the first set and reject everything
/// certified in the second. Passing is evidence, never proof.
pub fn test_separator(
    i_b: &ReIndex,
    i_c: &ReIndex,
    candidate: &OracleHandle,
    bound: u64,
    fuel: Fuel,
) -> SeparatorVerdict {
    let in_bound = |x: &Nat| x.to_u64().is_some_and(|v| v <= bound);
    for x in &enumerate_without_reps(i_b, fuel).elements {
        if in_bound(x) && !candidate.decide(x) {
            return SeparatorVerdict::Counterexample(x.clone());
        }
    }
    for x in &enumerate_without_reps(i_c, fuel).elements {
        if in_bound(x) && candidate.decide(x) {
            return SeparatorVerdict::Counterexample(x.clone());
        }
    }
    SeparatorVerdict::Pass
}

#[cfg(test)]
mod tests;
