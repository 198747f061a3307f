//! Literal theories in propositional logic over countably many variables:
//! truth-table decision relative to oracles for the positive and negative
//! literal index sets, bounded incompleteness probes, and the persistence
//! reduction back to the source set.

use crate::janiczak::TriState;
use crate::machine::Fuel;
use crate::resets::{enumerate_without_reps, separator_reduction, shoenfield_pair, OracleHandle, ReIndex};
use crate::{nat, Nat};
use num_traits::ToPrimitive;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A propositional formula over the variables `p0, p1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Atom(u64),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
}

pub fn patom(n: u64) -> PropFormula {
    PropFormula::Atom(n)
}

pub fn pnot(f: PropFormula) -> PropFormula {
    PropFormula::Not(Box::new(f))
}

pub fn pand(a: PropFormula, b: PropFormula) -> PropFormula {
    PropFormula::And(Box::new(a), Box::new(b))
}

pub fn por(a: PropFormula, b: PropFormula) -> PropFormula {
    PropFormula::Or(Box::new(a), Box::new(b))
}

pub fn pimplies(a: PropFormula, b: PropFormula) -> PropFormula {
    PropFormula::Implies(Box::new(a), Box::new(b))
}

impl PropFormula {
    /// The variable indices occurring in the formula.
    pub fn support(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        fn go(f: &PropFormula, out: &mut BTreeSet<u64>) {
            match f {
                PropFormula::Atom(n) => {
                    out.insert(*n);
                }
                PropFormula::Not(a) => go(a, out),
                PropFormula::And(a, b)
                | PropFormula::Or(a, b)
                | PropFormula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    /// Truth-table evaluation.
    pub fn eval(&self, valuation: &dyn Fn(u64) -> bool) -> bool {
        match self {
            PropFormula::Atom(n) => valuation(*n),
            PropFormula::Not(a) => !a.eval(valuation),
            PropFormula::And(a, b) => a.eval(valuation) && b.eval(valuation),
            PropFormula::Or(a, b) => a.eval(valuation) || b.eval(valuation),
            PropFormula::Implies(a, b) => !a.eval(valuation) || b.eval(valuation),
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Atom(n) => write!(f, "p{n}"),
            PropFormula::Not(a) => write!(f, "(not {a})"),
            PropFormula::And(a, b) => write!(f, "(and {a} {b})"),
            PropFormula::Or(a, b) => write!(f, "(or {a} {b})"),
            PropFormula::Implies(a, b) => write!(f, "(-> {a} {b})"),
        }
    }
}

/// Parse the s-expression surface syntax with `pN` atoms.
pub fn parse_prop(text: &str) -> Result<PropFormula, String> {
    fn tokens(text: &str) -> Vec<String> {
        text.replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect()
    }
    fn parse(toks: &[String], at: usize) -> Result<(PropFormula, usize), String> {
        match toks.get(at) {
            None => Err("unexpected end of input".into()),
            Some(t) if t == "(" => {
                let head = toks
                    .get(at + 1)
                    .ok_or_else(|| "missing operator".to_string())?;
                match head.as_str() {
                    "not" => {
                        let (a, next) = parse(toks, at + 2)?;
                        expect_close(toks, next)?;
                        Ok((pnot(a), next + 1))
                    }
                    "and" | "or" | "->" => {
                        let (a, next) = parse(toks, at + 2)?;
                        let (b, next) = parse(toks, next)?;
                        expect_close(toks, next)?;
                        let f = match head.as_str() {
                            "and" => pand(a, b),
                            "or" => por(a, b),
                            _ => pimplies(a, b),
                        };
                        Ok((f, next + 1))
                    }
                    other => Err(format!("unknown operator {other}")),
                }
            }
            Some(t) if t == ")" => Err("unexpected )".into()),
            Some(atom) => {
                let n = atom
                    .strip_prefix('p')
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| format!("expected pN atom, got {atom}"))?;
                Ok((patom(n), at + 1))
            }
        }
    }
    fn expect_close(toks: &[String], at: usize) -> Result<(), String> {
        if toks.get(at).map(String::as_str) == Some(")") {
            Ok(())
        } else {
            Err("expected )".into())
        }
    }
    let toks = tokens(text);
    let (f, next) = parse(&toks, 0)?;
    if next != toks.len() {
        return Err("trailing input".into());
    }
    Ok(f)
}

/// The literal theory over a disjoint index pair: `p_n` for `n` in the
/// first set, `¬p_n` for `n` in the second.
#[derive(Debug, Clone)]
pub struct LiteralTheory {
    pub i_b: ReIndex,
    pub i_c: ReIndex,
}

impl LiteralTheory {
    /// The literal theory over the disjoint pair built from a source set.
    pub fn from_source(e: &ReIndex) -> Self {
        let pair = shoenfield_pair(e);
        LiteralTheory {
            i_b: pair.i_b,
            i_c: pair.i_c,
        }
    }

    /// The certified literals at a fuel, positive then negative.
    pub fn literals(&self, fuel: Fuel) -> Vec<PropFormula> {
        let mut out = Vec::new();
        for x in enumerate_without_reps(&self.i_b, fuel).elements {
            if let Some(n) = x.to_u64() {
                out.push(patom(n));
            }
        }
        for x in enumerate_without_reps(&self.i_c, fuel).elements {
            if let Some(n) = x.to_u64() {
                out.push(pnot(patom(n)));
            }
        }
        out
    }

    /// Oracles for the two literal index sets, truthful up to the fuel.
    pub fn oracles(&self, fuel: Fuel) -> (OracleHandle, OracleHandle) {
        (
            OracleHandle::from_w_member("B", self.i_b.e.clone(), fuel),
            OracleHandle::from_w_member("C", self.i_c.e.clone(), fuel),
        )
    }

    /// The theory's own theorem enumerator: just its literals.
    pub fn enumerator(&self) -> TheoremEnumerator {
        let theory = self.clone();
        TheoremEnumerator::new("U_d", move |fuel| theory.literals(fuel))
    }
}

/// A fuel-indexed theorem stream for an extension of a literal theory.
#[derive(Clone)]
pub struct TheoremEnumerator {
    label: String,
    enumerate: Arc<dyn Fn(Fuel) -> Vec<PropFormula> + Send + Sync>,
}

impl TheoremEnumerator {
    pub fn new(
        label: &str,
        enumerate: impl Fn(Fuel) -> Vec<PropFormula> + Send + Sync + 'static,
    ) -> Self {
        TheoremEnumerator {
            label: label.to_string(),
            enumerate: Arc::new(enumerate),
        }
    }

    pub fn theorems(&self, fuel: Fuel) -> Vec<PropFormula> {
        (self.enumerate)(fuel)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for TheoremEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremEnumerator")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

/// Decide a formula over the literal theory: pin each supporting variable
/// by the oracles, quantify over the free completions. Truth tables replace
/// the disjunctive-normal-form argument; the decision is the same.
pub fn u_decide(
    formula: &PropFormula,
    oracle_b: &OracleHandle,
    oracle_c: &OracleHandle,
) -> TriState {
    let support: Vec<u64> = formula.support().into_iter().collect();
    let pins: Vec<Option<bool>> = support
        .iter()
        .map(|n| {
            let n = nat(*n);
            if oracle_b.decide(&n) {
                Some(true)
            } else if oracle_c.decide(&n) {
                Some(false)
            } else {
                None
            }
        })
        .collect();
    let free: Vec<usize> = (0..support.len()).filter(|i| pins[*i].is_none()).collect();
    let mut any_true = false;
    let mut any_false = false;
    for completion in 0u64..(1 << free.len()) {
        let valuation = |n: u64| {
            let i = support.iter().position(|m| *m == n).unwrap();
            match pins[i] {
                Some(v) => v,
                None => {
                    let k = free.iter().position(|j| *j == i).unwrap();
                    completion >> k & 1 == 1
                }
            }
        };
        if formula.eval(&valuation) {
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

/// Outcome of the bounded incompleteness probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The least index at or below the bound with neither literal in the
    /// enumerated theorems: "not decided within fuel", not independence.
    Undecided(u64),
    AllDecided,
}

/// Scan an extension's enumerated theorems for an undecided variable.
pub fn incompleteness_probe(
    extension: &TheoremEnumerator,
    bound: u64,
    fuel: Fuel,
) -> ProbeOutcome {
    let theorems = extension.theorems(fuel);
    for n in 0..=bound {
        let positive = patom(n);
        let negative = pnot(patom(n));
        if !theorems.contains(&positive) && !theorems.contains(&negative) {
            return ProbeOutcome::Undecided(n);
        }
    }
    ProbeOutcome::AllDecided
}

/// Decide `x ∈ W_e` from a decider for the positive literals of a
/// consistent extension of the literal theory over `e`: the set
/// `{n : S ⊢ p_n}` separates the underlying pair, so the separator
/// reduction applies with the pair's own positive index.
pub fn persistence_reduction(
    e: &ReIndex,
    s_decider: &OracleHandle,
    x: &Nat,
    fuel: Fuel,
) -> Option<bool> {
    let pair = shoenfield_pair(e);
    separator_reduction(e, &pair.i_b, s_decider, x, fuel)
}

#[cfg(test)]
mod tests;
