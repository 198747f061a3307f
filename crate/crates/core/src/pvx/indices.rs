//! Index-level maps: the inseparability witness for literal theories and
//! the end-to-end theory transformer.

use crate::folog::phi_code;
use crate::janiczak::theory_index;
use crate::machine::VirtualProgram;
use crate::resets::{shoenfield_pair, ReIndex};
use crate::Nat;

/// Index of the program semi-deciding `{n : ⌜Φ_n⌝ ∈ W_target}`: the s-m-n
/// companion of the sentence-coding map.
pub fn phi_preimage_index(target: &Nat) -> Nat {
    VirtualProgram::PhiPreimage {
        target: target.clone(),
    }
    .index()
}

/// The inseparability witness applied to a pair of candidate supersets of
/// the literal theory's nuclei: pull both back along the sentence-coding
/// map, let the self-watching program defect against the pulled-back pair,
/// and return the code of its class-size sentence. If the candidates are
/// disjoint and cover the nuclei, the returned code lies outside both.
pub fn h_ei(i: &Nat, j: &Nat) -> Nat {
    let left = phi_preimage_index(i);
    let right = phi_preimage_index(j);
    let defect = VirtualProgram::Defect { left, right }.index();
    phi_code(&defect)
}

/// The end-to-end index transformer: from a source set to the machine index
/// of the theory built on its disjoint pair. The semi-decided set of the
/// result is the theorem-code set of that theory.
pub fn s_index(e: &Nat) -> Nat {
    let pair = shoenfield_pair(&ReIndex::new(e.clone()));
    theory_index(&pair.i_b.e, &pair.i_c.e)
}
