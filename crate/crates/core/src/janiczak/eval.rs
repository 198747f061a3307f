//! Model checking over realized descriptors.
//!
//! [`eval_naive`] is the literal brute-force evaluator: elements are
//! materialized and quantifiers loop over the whole domain. [`eval`]
//! computes the same value by exploiting the automorphism group of an
//! equivalence structure: a quantifier only needs one representative for
//! each already-assigned element plus one fresh element per class. The two
//! are checked against each other in the test suite; the fast form is what
//! the quantifier-elimination loop runs on.

use super::{ClassDescriptor, JaniczakError};
use crate::folog::{sig_e, Formula, Term};
use std::collections::BTreeMap;

/// A realized finite equivalence structure, described by its class sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub class_sizes: Vec<u64>,
}

impl Realization {
    pub fn total_size(&self) -> u64 {
        self.class_sizes.iter().sum()
    }
}

/// Realize a descriptor as a finite structure adequate for quantifier rank
/// `q`: one class per exact size, plus `large_classes` classes of pairwise
/// distinct sizes, each strictly above `max(threshold, q, max exact size)`.
pub fn realize(descriptor: &ClassDescriptor, q: u64) -> Result<Realization, JaniczakError> {
    if descriptor.threshold < q || descriptor.large_classes < q {
        return Err(JaniczakError::Precondition { rank: q });
    }
    let mut class_sizes: Vec<u64> = descriptor.exact_sizes.iter().copied().collect();
    let max_exact = class_sizes.iter().copied().max().unwrap_or(0);
    let floor = descriptor.threshold.max(q).max(max_exact);
    for k in 1..=descriptor.large_classes {
        class_sizes.push(floor + k);
    }
    Ok(Realization { class_sizes })
}

/// An element of a realization: class index and member index within it.
type Element = (usize, u64);

fn check_sentence(formula: &Formula) -> Result<(), JaniczakError> {
    sig_e().check_formula(formula)?;
    if !formula.is_sentence() {
        return Err(JaniczakError::OpenFormula);
    }
    Ok(())
}

fn atom_value(
    formula: &Formula,
    env: &BTreeMap<String, Element>,
) -> bool {
    let lookup = |t: &Term| -> Element {
        match t {
            Term::Var(v) => env[v],
            Term::App(..) => unreachable!("no functions in the language"),
        }
    };
    match formula {
        Formula::Eq(a, b) => lookup(a) == lookup(b),
        Formula::Rel(_, args) => lookup(&args[0]).0 == lookup(&args[1]).0,
        _ => unreachable!("atom_value on non-atom"),
    }
}

fn sat(
    formula: &Formula,
    real: &Realization,
    env: &mut BTreeMap<String, Element>,
) -> bool {
    match formula {
        Formula::Eq(..) | Formula::Rel(..) => atom_value(formula, env),
        Formula::Not(f) => !sat(f, real, env),
        Formula::And(a, b) => sat(a, real, env) && sat(b, real, env),
        Formula::Or(a, b) => sat(a, real, env) || sat(b, real, env),
        Formula::Implies(a, b) => !sat(a, real, env) || sat(b, real, env),
        Formula::Forall(v, f) => {
            for candidate in candidates(real, env) {
                let saved = env.insert(v.clone(), candidate);
                let holds = sat(f, real, env);
                restore(env, v, saved);
                if !holds {
                    return false;
                }
            }
            true
        }
        Formula::Exists(v, f) => {
            for candidate in candidates(real, env) {
                let saved = env.insert(v.clone(), candidate);
                let holds = sat(f, real, env);
                restore(env, v, saved);
                if holds {
                    return true;
                }
            }
            false
        }
    }
}

/// Representatives sufficient for one quantifier: every distinct assigned
/// element, plus one unused element from each class that still has room.
/// Any other element is carried to one of these by an automorphism fixing
/// the assignment pointwise.
fn candidates(real: &Realization, env: &BTreeMap<String, Element>) -> Vec<Element> {
    let mut out: Vec<Element> = env.values().copied().collect();
    out.sort_unstable();
    out.dedup();
    let assigned = out.clone();
    for (class, size) in real.class_sizes.iter().enumerate() {
        let used: Vec<u64> = assigned
            .iter()
            .filter(|(c, _)| *c == class)
            .map(|(_, m)| *m)
            .collect();
        if (used.len() as u64) < *size {
            let mut fresh = 0u64;
            while used.contains(&fresh) {
                fresh += 1;
            }
            out.push((class, fresh));
        }
    }
    out
}

fn restore(env: &mut BTreeMap<String, Element>, v: &str, saved: Option<Element>) {
    match saved {
        Some(e) => {
            env.insert(v.to_string(), e);
        }
        None => {
            env.remove(v);
        }
    }
}

/// Evaluate a sentence in the realization of the descriptor at the
/// sentence's own rank. Symmetry-reduced; agrees with [`eval_naive`].
pub fn eval(descriptor: &ClassDescriptor, formula: &Formula) -> Result<bool, JaniczakError> {
    check_sentence(formula)?;
    let real = realize(descriptor, formula.quantifier_rank())?;
    Ok(sat(formula, &real, &mut BTreeMap::new()))
}

/// Evaluate in an explicit realization, decrementing the budget once per connective and per
/// quantifier candidate; `None` when it runs out.
pub(crate) fn eval_budgeted(
    real: &Realization,
    formula: &Formula,
    budget: &mut u64,
) -> Option<bool> {
    fn go(
        formula: &Formula,
        real: &Realization,
        env: &mut BTreeMap<String, Element>,
        budget: &mut u64,
    ) -> Option<bool> {
        *budget = budget.checked_sub(1)?;
        match formula {
            Formula::Eq(..) | Formula::Rel(..) => Some(atom_value(formula, env)),
            Formula::Not(f) => Some(!go(f, real, env, budget)?),
            Formula::And(a, b) => {
                Some(go(a, real, env, budget)? && go(b, real, env, budget)?)
            }
            Formula::Or(a, b) => {
                Some(go(a, real, env, budget)? || go(b, real, env, budget)?)
            }
            Formula::Implies(a, b) => {
                Some(!go(a, real, env, budget)? || go(b, real, env, budget)?)
            }
            Formula::Forall(v, f) => {
                for candidate in candidates(real, env) {
                    let saved = env.insert(v.clone(), candidate);
                    let holds = go(f, real, env, budget);
                    restore(env, v, saved);
                    if !holds? {
                        return Some(false);
                    }
                }
                Some(true)
            }
            Formula::Exists(v, f) => {
                for candidate in candidates(real, env) {
                    let saved = env.insert(v.clone(), candidate);
                    let holds = go(f, real, env, budget);
                    restore(env, v, saved);
                    if holds? {
                        return Some(true);
                    }
                }
                Some(false)
            }
        }
    }
    go(formula, real, &mut BTreeMap::new(), budget)
}

/// The literal nested-loop evaluator. Ground truth for [`eval`]; only
/// sensible on small realizations.
pub fn eval_naive(descriptor: &ClassDescriptor, formula: &Formula) -> Result<bool, JaniczakError> {
    check_sentence(formula)?;
    let real = realize(descriptor, formula.quantifier_rank())?;
    let mut domain = Vec::new();
    for (class, size) in real.class_sizes.iter().enumerate() {
        for member in 0..*size {
            domain.push((class, member));
        }
    }
    fn go(
        formula: &Formula,
        domain: &[Element],
        env: &mut BTreeMap<String, Element>,
    ) -> bool {
        match formula {
            Formula::Eq(..) | Formula::Rel(..) => atom_value(formula, env),
            Formula::Not(f) => !go(f, domain, env),
            Formula::And(a, b) => go(a, domain, env) && go(b, domain, env),
            Formula::Or(a, b) => go(a, domain, env) || go(b, domain, env),
            Formula::Implies(a, b) => !go(a, domain, env) || go(b, domain, env),
            Formula::Forall(v, f) => {
                for element in domain {
                    let saved = env.insert(v.clone(), *element);
                    let holds = go(f, domain, env);
                    restore(env, v, saved);
                    if !holds {
                        return false;
                    }
                }
                true
            }
            Formula::Exists(v, f) => {
                for element in domain {
                    let saved = env.insert(v.clone(), *element);
                    let holds = go(f, domain, env);
                    restore(env, v, saved);
                    if holds {
                        return true;
                    }
                }
                false
            }
        }
    }
    Ok(go(formula, &domain, &mut BTreeMap::new()))
}
