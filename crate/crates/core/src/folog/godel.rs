//! Gödel numbering of formulas.
//!
//! Formulas serialize to a byte stream (prefix form, LEB128 operands) which
//! becomes a natural via base-256. Class-size sentences are serialized under
//! a dedicated compact tag carrying just the parameter, so `⌜Φ_n⌝` has size
//! `O(log n)` — large parameters stay representable as codes even when the
//! formula tree itself would be unreasonably big.

use super::theories::{phi, phi_shape, PHI_MATERIALIZE_CAP};
use super::{Formula, Term};
use crate::codec::{self, Reader};
use crate::Nat;
use num_traits::ToPrimitive;

const TAG_EQ: u8 = 1;
const TAG_REL: u8 = 2;
const TAG_NOT: u8 = 3;
const TAG_AND: u8 = 4;
const TAG_OR: u8 = 5;
const TAG_IMPLIES: u8 = 6;
const TAG_FORALL: u8 = 7;
const TAG_EXISTS: u8 = 8;
const TAG_PHI: u8 = 9;
const TAG_VAR: u8 = 10;
const TAG_APP: u8 = 11;

fn write_name(out: &mut Vec<u8>, name: &str) {
    codec::write_leb128(out, name.len() as u64);
    out.extend_from_slice(name.as_bytes());
}

fn write_term(out: &mut Vec<u8>, term: &Term) {
    match term {
        Term::Var(v) => {
            out.push(TAG_VAR);
            write_name(out, v);
        }
        Term::App(name, args) => {
            out.push(TAG_APP);
            write_name(out, name);
            codec::write_leb128(out, args.len() as u64);
            args.iter().for_each(|t| write_term(out, t));
        }
    }
}

fn write_formula(out: &mut Vec<u8>, formula: &Formula) {
    if let Some(n) = phi_shape(formula) {
        out.push(TAG_PHI);
        codec::write_nat(out, &Nat::from(n));
        return;
    }
    match formula {
        Formula::Eq(a, b) => {
            out.push(TAG_EQ);
            write_term(out, a);
            write_term(out, b);
        }
        Formula::Rel(name, args) => {
            out.push(TAG_REL);
            write_name(out, name);
            codec::write_leb128(out, args.len() as u64);
            args.iter().for_each(|t| write_term(out, t));
        }
        Formula::Not(f) => {
            out.push(TAG_NOT);
            write_formula(out, f);
        }
        Formula::And(a, b) => {
            out.push(TAG_AND);
            write_formula(out, a);
            write_formula(out, b);
        }
        Formula::Or(a, b) => {
            out.push(TAG_OR);
            write_formula(out, a);
            write_formula(out, b);
        }
        Formula::Implies(a, b) => {
            out.push(TAG_IMPLIES);
            write_formula(out, a);
            write_formula(out, b);
        }
        Formula::Forall(v, f) => {
            out.push(TAG_FORALL);
            write_name(out, v);
            write_formula(out, f);
        }
        Formula::Exists(v, f) => {
            out.push(TAG_EXISTS);
            write_name(out, v);
            write_formula(out, f);
        }
    }
}

fn read_name(reader: &mut Reader) -> Option<String> {
    let len = reader.read_leb128()? as usize;
    if len > 10_000 {
        return None;
    }
    let mut bytes = Vec::with_capacity(len);
    for _ in 0..len {
        bytes.push(reader.next_byte()?);
    }
    String::from_utf8(bytes).ok()
}

fn read_term(reader: &mut Reader) -> Option<Term> {
    match reader.next_byte()? {
        TAG_VAR => Some(Term::Var(read_name(reader)?)),
        TAG_APP => {
            let name = read_name(reader)?;
            let argc = reader.read_leb128()? as usize;
            if argc > 1000 {
                return None;
            }
            let mut args = Vec::with_capacity(argc);
            for _ in 0..argc {
                args.push(read_term(reader)?);
            }
            Some(Term::App(name, args))
        }
        _ => None,
    }
}

fn read_formula(reader: &mut Reader) -> Option<Formula> {
    match reader.next_byte()? {
        TAG_EQ => Some(Formula::Eq(read_term(reader)?, read_term(reader)?)),
        TAG_REL => {
            let name = read_name(reader)?;
            let argc = reader.read_leb128()? as usize;
            if argc > 1000 {
                return None;
            }
            let mut args = Vec::with_capacity(argc);
            for _ in 0..argc {
                args.push(read_term(reader)?);
            }
            Some(Formula::Rel(name, args))
        }
        TAG_NOT => Some(Formula::Not(Box::new(read_formula(reader)?))),
        TAG_AND => Some(Formula::And(
            Box::new(read_formula(reader)?),
            Box::new(read_formula(reader)?),
        )),
        TAG_OR => Some(Formula::Or(
            Box::new(read_formula(reader)?),
            Box::new(read_formula(reader)?),
        )),
        TAG_IMPLIES => Some(Formula::Implies(
            Box::new(read_formula(reader)?),
            Box::new(read_formula(reader)?),
        )),
        TAG_FORALL => Some(Formula::Forall(
            read_name(reader)?,
            Box::new(read_formula(reader)?),
        )),
        TAG_EXISTS => Some(Formula::Exists(
            read_name(reader)?,
            Box::new(read_formula(reader)?),
        )),
        TAG_PHI => {
            let n = reader.read_nat()?;
            let n = n.to_u64().filter(|&n| n <= PHI_MATERIALIZE_CAP)?;
            Some(phi(n))
        }
        _ => None,
    }
}

/// The Gödel number of a formula. Injective.
pub fn godel(formula: &Formula) -> Nat {
    let mut bytes = Vec::new();
    write_formula(&mut bytes, formula);
    codec::bytes_to_nat(&bytes)
}

/// Partial inverse of [`godel`]: `None` on numbers that code nothing, and on
/// class-size codes whose parameter exceeds the materialization cap.
pub fn ungodel(code: &Nat) -> Option<Formula> {
    let bytes = codec::nat_to_bytes(code)?;
    let mut reader = Reader::new(&bytes);
    let formula = read_formula(&mut reader)?;
    reader.is_empty().then_some(formula)
}

/// `⌜Φ_n⌝` for an arbitrary parameter, without building the formula.
pub fn phi_code(n: &Nat) -> Nat {
    let mut bytes = vec![TAG_PHI];
    codec::write_nat(&mut bytes, n);
    codec::bytes_to_nat(&bytes)
}

/// Recognize `⌜Φ_n⌝` and extract the parameter.
pub fn phi_code_param(code: &Nat) -> Option<Nat> {
    let bytes = codec::nat_to_bytes(code)?;
    let mut reader = Reader::new(&bytes);
    if reader.next_byte()? != TAG_PHI {
        return None;
    }
    let n = reader.read_nat()?;
    reader.is_empty().then_some(n)
}

/// Recognize `⌜¬Φ_n⌝` and extract the parameter.
pub fn neg_phi_code_param(code: &Nat) -> Option<Nat> {
    let bytes = codec::nat_to_bytes(code)?;
    let mut reader = Reader::new(&bytes);
    if reader.next_byte()? != TAG_NOT {
        return None;
    }
    if reader.next_byte()? != TAG_PHI {
        return None;
    }
    let n = reader.read_nat()?;
    reader.is_empty().then_some(n)
}

/// Byte length of a code: the work gate used by staged searches before they
/// agree to decode an input.
pub fn code_byte_len(code: &Nat) -> u64 {
    codec::nat_to_bytes_lenient(code).len() as u64
}
