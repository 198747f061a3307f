//! Quantifier elimination by profile enumeration.
//!
//! A sentence of rank `q` cannot distinguish descriptors that agree on the
//! class-size sentences below `q` once enough padding classes are present,
//! so its meaning over the theory is captured by evaluating it on one
//! descriptor per profile over the atoms `0..q`. The atom cut-off equals
//! the rank; its adequacy is validated by the rank-robustness property in
//! the test suite rather than assumed.

use super::eval::{eval_budgeted, realize};
use super::{BoolCombo, ClassDescriptor, SignedConjunction, TriState};
use crate::folog::{phi_shape, Formula};
use num_traits::ToPrimitive;

/// Hard cap on the atom bound: the profile table is exponential in it.
const MAX_ATOM_BOUND: u32 = 24;

/// The boolean combination of class-size sentences equivalent to the
/// sentence over the theory.
pub fn qe(sentence: &Formula) -> BoolCombo {
    // A class-size sentence is its own combination; recognizing it keeps
    // large parameters out of the exponential path. Validated against the
    // general path in tests.
    if let Some(n) = phi_shape(sentence) {
        return BoolCombo::atom(n);
    }
    if let Formula::Not(inner) = sentence {
        if let Some(n) = phi_shape(inner) {
            return BoolCombo::atom(n).negate();
        }
    }
    let q = sentence.quantifier_rank();
    qe_with_atom_bound(sentence, q)
}

/// The profile-enumeration route with an explicit atom bound; exposed so
/// the cut-off robustness check can rerun it with a larger bound.
pub fn qe_with_atom_bound(sentence: &Formula, bound: u64) -> BoolCombo {
    let mut budget = u64::MAX;
    qe_budgeted(sentence, bound, &mut budget).expect("unbounded budget")
}

/// As [`qe_with_atom_bound`], but counting evaluation work against a budget
/// and giving up (None) when it runs out. The caller's budget is always
/// decremented by the work actually done.
pub fn qe_budgeted(sentence: &Formula, bound: u64, budget: &mut u64) -> Option<BoolCombo> {
    let q = sentence.quantifier_rank();
    let bound = u32::try_from(bound).expect("atom bound out of range");
    assert!(
        bound <= MAX_ATOM_BOUND,
        "quantifier elimination at atom bound {bound} is out of desk range"
    );
    let padding = q + u64::from(bound) + 1;
    let mut satisfying = Vec::new();
    for profile in 0u64..(1 << bound) {
        let exact_sizes = (0..u64::from(bound)).filter(|n| profile >> n & 1 == 1).map(|n| n + 1);
        let descriptor = ClassDescriptor::new(exact_sizes, padding, padding);
        let real = realize(&descriptor, q).expect("padding covers the rank");
        if eval_budgeted(&real, sentence, budget)? {
            satisfying.push(profile);
        }
    }
    Some(BoolCombo::from_table(bound, satisfying))
}

/// Budgeted form of [`qe`]: the class-size fast paths are free, everything
/// else counts evaluation work against the budget.
pub fn qe_auto_budgeted(sentence: &Formula, budget: &mut u64) -> Option<BoolCombo> {
    if let Some(n) = phi_shape(sentence) {
        return Some(BoolCombo::atom(n));
    }
    if let Formula::Not(inner) = sentence {
        if let Some(n) = phi_shape(inner) {
            return Some(BoolCombo::atom(n).negate());
        }
    }
    qe_budgeted(sentence, sentence.quantifier_rank(), budget)
}

/// Constraints a decision can be taken against: a signed conjunction of
/// class-size literals, or any boolean combination.
#[derive(Debug, Clone)]
pub enum JConstraint {
    Signed(SignedConjunction),
    Combo(BoolCombo),
}

impl JConstraint {
    fn combo(&self) -> BoolCombo {
        match self {
            JConstraint::Signed(sc) => {
                BoolCombo {
                    support: (0..u64::from(sc.n)).collect(),
                    rows: std::iter::once(sc.j).collect(),
                }
            }
            JConstraint::Combo(c) => c.clone(),
        }
    }
}

impl From<SignedConjunction> for JConstraint {
    fn from(sc: SignedConjunction) -> Self {
        JConstraint::Signed(sc)
    }
}

impl From<BoolCombo> for JConstraint {
    fn from(c: BoolCombo) -> Self {
        JConstraint::Combo(c)
    }
}

/// Decide a sentence over the bare theory.
pub fn decide_j(sentence: &Formula) -> TriState {
    let combo = qe(sentence);
    if combo.is_tautology() {
        TriState::Provable
    } else if combo.is_contradiction() {
        TriState::Refutable
    } else {
        TriState::Independent
    }
}

/// Decide a sentence over the theory extended by a constraint on the
/// class-size sentences. Every signed conjunction is consistent with the
/// theory, so quantification over the constraint's satisfying profiles is
/// decisive.
pub fn decide_j_plus(sentence: &Formula, constraint: &JConstraint) -> TriState {
    decide_combo_with_constraint(&qe(sentence), constraint)
}

/// The same decision taken on an already-eliminated combination.
pub fn decide_combo_with_constraint(combo: &BoolCombo, constraint: &JConstraint) -> TriState {
    let cons = constraint.combo();
    // Union support; assignments outside it cannot matter for either side.
    let mut atoms: Vec<u64> = combo
        .support()
        .iter()
        .chain(cons.support().iter())
        .copied()
        .collect();
    atoms.sort_unstable();
    atoms.dedup();
    let width = atoms.len();
    assert!(width <= MAX_ATOM_BOUND as usize + 8, "constraint support out of desk range");
    let mut any_true = false;
    let mut any_false = false;
    for assignment in 0u64..(1 << width) {
        let value_of = |atom: u64| {
            let pos = atoms.binary_search(&atom).expect("atom in union support");
            assignment >> pos & 1 == 1
        };
        if !cons.satisfied_by(value_of) {
            continue;
        }
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
        (true, true) => unreachable!("early return above"),
    }
}

/// A cheap deterministic over-estimate of the quantifier-elimination work
/// for a sentence; staged searches use it as an admission gate so garbage
/// inputs never trigger exponential work.
pub(crate) fn qe_cost_estimate(sentence: &Formula) -> u64 {
    if let Some(n) = phi_shape(sentence) {
        return n + 2;
    }
    if let Formula::Not(inner) = sentence {
        if let Some(n) = phi_shape(inner) {
            return n + 3;
        }
    }
    let q = sentence.quantifier_rank();
    if q >= 16 {
        return u64::MAX;
    }
    let branch = 3 * q + 4;
    let per_eval = branch
        .checked_pow(q.to_u32().unwrap_or(u32::MAX))
        .unwrap_or(u64::MAX)
        .saturating_mul(sentence.size());
    per_eval.saturating_mul(1u64 << q)
}
