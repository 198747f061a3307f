//! A desk-scale workbench for recursion theory and the logic of essentially
//! undecidable theories.
//!
//! The crate is organised around a small number of interlocking subsystems:
//!
//! - [`machine`]: a deterministic register machine with Gödel-numbered
//!   programs, the step-counting predicate `t1`, Cantor pairing, s-m-n and
//!   the recursion theorem. Every natural number is a program index.
//! - [`resets`]: the calculus of recursively enumerable sets — dovetailed
//!   enumeration without repetition, the `B_n` family, the Shoenfield pair
//!   and its separator reduction, all as explicit oracle procedures.
//! - [`folog`]: first-order syntax with signatures, parsing, Gödel
//!   numbering, capture-avoiding substitution, relativization, translations
//!   between languages and interpretation obligations, plus the sample
//!   theories (Robinson arithmetic, the R schemes, Vaught set theory, the
//!   Janiczak axioms).
//! - [`janiczak`]: finitely presented models of the Janiczak theory,
//!   quantifier elimination to boolean combinations of the class-size
//!   sentences, and decision procedures for the base theory and its
//!   literal extensions.
//! - [`theoryalg`]: theory presentations and the interpretability infimum
//!   and supremum, with the associated sentence-set transformers.
//! - [`proptheory`]: literal theories in propositional logic and their
//!   oracle decision procedure.
//! - [`pvx`]: the recursive-set construction that produces, from a given
//!   theory, an effectively weaker essentially undecidable companion, with
//!   machine-checkable certificates for every step.
//!
//! All semi-decidable searches take an explicit [`machine::Fuel`] budget and
//! answer `Unknown` instead of diverging. Everything is deterministic: the
//! same inputs and fuel produce the same answers, across runs and threads.

pub mod codec;
pub mod folog;
pub mod janiczak;
pub mod machine;
pub mod proptheory;
pub mod pvx;
pub mod resets;
pub mod theoryalg;

/// Natural numbers as used throughout the workbench: program indices,
/// register contents and Gödel codes are all unbounded.
pub type Nat = num_bigint::BigUint;

/// Shorthand for building a [`Nat`] from a machine word.
pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

pub use janiczak::TriState;
pub use machine::{Fuel, RunOutcome, WMember};
