//! The theory of an equivalence relation with at most one class of each
//! finite size and arbitrarily many arbitrarily large classes: descriptor
//! semantics, brute-force model checking, quantifier elimination to boolean
//! combinations of the class-size sentences, and the decision procedures
//! built on it.

mod eval;
mod qe;
mod tbc;

#[cfg(test)]
mod tests;

pub use eval::{eval, eval_naive, realize, Realization};
pub use qe::{
    decide_combo_with_constraint, decide_j, decide_j_plus, qe, qe_auto_budgeted,
    qe_with_atom_bound, JConstraint,
};
pub use tbc::{tbc_decide, tbc_enumerate, theory_index};
pub(crate) use tbc::tbc_code_stage;

use crate::folog::Formula;
use serde::Serialize;
use std::collections::BTreeSet;

/// A finite presentation of a model of the theory: one class of size `s`
/// for each exact size, plus a number of pseudo-infinite classes realized
/// with pairwise-distinct sizes above the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDescriptor {
    pub exact_sizes: BTreeSet<u64>,
    pub large_classes: u64,
    pub threshold: u64,
}

impl ClassDescriptor {
    pub fn new(
        exact_sizes: impl IntoIterator<Item = u64>,
        large_classes: u64,
        threshold: u64,
    ) -> Self {
        let exact_sizes: BTreeSet<u64> = exact_sizes.into_iter().collect();
        assert!(
            !exact_sizes.contains(&0),
            "class sizes are positive naturals"
        );
        ClassDescriptor {
            exact_sizes,
            large_classes,
            threshold,
        }
    }

    /// The truth value of the n-th class-size sentence in this descriptor,
    /// for parameters below the threshold (larger classes never realize an
    /// exact size that small).
    pub fn profile_bit(&self, atom: u64) -> bool {
        self.exact_sizes.contains(&(atom + 1))
    }
}

/// Outcome of a decision procedure over a theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriState {
    Provable,
    Refutable,
    Independent,
}

impl std::fmt::Display for TriState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TriState::Provable => write!(f, "provable"),
            TriState::Refutable => write!(f, "refutable"),
            TriState::Independent => write!(f, "independent"),
        }
    }
}

/// The conjunction of signed class-size sentences `±Φ_i` for `i < n`, the
/// sign of `Φ_i` being bit `i` of `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedConjunction {
    pub n: u32,
    pub j: u64,
}

impl SignedConjunction {
    pub fn new(n: u32, j: u64) -> Self {
        assert!(n < 63, "conjunction length out of range");
        assert!(j < 1u64 << n, "sign vector must have fewer than 2^n bits");
        SignedConjunction { n, j }
    }

    pub fn sign(&self, i: u32) -> bool {
        self.j >> i & 1 == 1
    }
}

/// A boolean combination of class-size sentences in canonical form: the set
/// of satisfying profiles over its genuine support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoolCombo {
    /// Sorted atom indices the combination genuinely depends on.
    support: Vec<u64>,
    /// Satisfying assignments; bit `i` of a row is the value of
    /// `support[i]`.
    rows: BTreeSet<u64>,
}

impl BoolCombo {
    pub fn constant(value: bool) -> Self {
        BoolCombo {
            support: Vec::new(),
            rows: if value {
                std::iter::once(0).collect()
            } else {
                BTreeSet::new()
            },
        }
    }

    pub fn atom(n: u64) -> Self {
        BoolCombo {
            support: vec![n],
            rows: std::iter::once(1).collect(),
        }
    }

    /// Build from an explicit table over the atoms `0..bound` and prune to
    /// the genuine support.
    pub fn from_table(bound: u32, satisfying: impl IntoIterator<Item = u64>) -> Self {
        let combo = BoolCombo {
            support: (0..u64::from(bound)).collect(),
            rows: satisfying.into_iter().collect(),
        };
        combo.canonicalize()
    }

    fn canonicalize(mut self) -> Self {
        loop {
            let width = self.support.len();
            let mut dropped = None;
            for pos in 0..width {
                let bit = 1u64 << pos;
                // The atom is inert when flipping it never changes
                // membership in the satisfying set.
                let inert = (0..(1u64 << width))
                    .all(|row| self.rows.contains(&row) == self.rows.contains(&(row ^ bit)));
                if inert {
                    dropped = Some(pos);
                    break;
                }
            }
            let Some(pos) = dropped else {
                return self;
            };
            let bit = 1u64 << pos;
            let low_mask = bit - 1;
            let mut rows = BTreeSet::new();
            for row in &self.rows {
                if row & bit != 0 {
                    continue;
                }
                rows.insert((row & low_mask) | ((row & !low_mask & !bit) >> 1));
            }
            self.support.remove(pos);
            self.rows = rows;
        }
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    /// `max{s + 1 : Φ_s occurs}`; zero for constant combinations.
    pub fn sup_plus(&self) -> u64 {
        self.support.iter().max().map_or(0, |s| s + 1)
    }

    pub fn is_tautology(&self) -> bool {
        self.support.is_empty() && !self.rows.is_empty()
    }

    pub fn is_contradiction(&self) -> bool {
        self.support.is_empty() && self.rows.is_empty()
    }

    /// Evaluate under an assignment of the atoms.
    pub fn satisfied_by(&self, assignment: impl Fn(u64) -> bool) -> bool {
        let mut row = 0u64;
        for (pos, atom) in self.support.iter().enumerate() {
            if assignment(*atom) {
                row |= 1 << pos;
            }
        }
        self.rows.contains(&row)
    }

    pub fn negate(&self) -> Self {
        let width = self.support.len();
        let rows = (0..(1u64 << width))
            .filter(|row| !self.rows.contains(row))
            .collect();
        BoolCombo {
            support: self.support.clone(),
            rows,
        }
        .canonicalize()
    }

    /// Profile-set equality over the union support. Canonical form makes
    /// this structural.
    pub fn semantic_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// The satisfying rows as (atom, value) vectors, sorted; the external
    /// representation used by the command line.
    pub fn profiles(&self) -> Vec<Vec<(u64, bool)>> {
        self.rows
            .iter()
            .map(|row| {
                self.support
                    .iter()
                    .enumerate()
                    .map(|(pos, atom)| (*atom, row >> pos & 1 == 1))
                    .collect()
            })
            .collect()
    }
}

/// Standard quantifier nesting depth.
pub fn quantifier_rank(formula: &Formula) -> u64 {
    formula.quantifier_rank()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JaniczakError {
    #[error("descriptor cannot support rank {rank}: needs threshold and large-class count at least that")]
    Precondition { rank: u64 },
    #[error("formula is not over the one-relation language: {0}")]
    Language(#[from] crate::folog::SignatureError),
    #[error("formula must be a sentence")]
    OpenFormula,
}
