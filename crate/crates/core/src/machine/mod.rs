//! A deterministic universal register machine with Gödel-numbered programs.
//!
//! The index space is two-sorted. Even indices decode to *concrete* programs
//! over a two-instruction register machine (`Inc`, `DecJz`, plus `Halt`);
//! odd indices decode to *procedural* programs: a fixed countable family of
//! named staged searches (constant functions, s-m-n currying, the Shoenfield
//! pair, the theory enumerator, and the self-referential programs delivered
//! by the recursion theorem). Both sorts have deterministic step semantics,
//! so the Kleene predicate [`t1`] and the sets `W_e` are well defined over
//! the whole index space, and every natural number is a program index.
//!
//! Procedural programs are what lets the workbench hand out honest indices
//! for its own search procedures at desk-scale fuel budgets; a compiled
//! two-instruction equivalent exists in principle but would blow every
//! budget on unary arithmetic alone.

mod sim;
mod virt;

pub use sim::{step, Config};
pub use virt::VirtualProgram;

use crate::codec::{self, Reader};
use crate::{nat, Nat};
use num_traits::One;
use serde::Serialize;
use std::fmt;

/// Explicit step budget for every semi-decidable search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fuel {
    pub max_steps: u64,
}

impl Fuel {
    pub fn new(max_steps: u64) -> Self {
        Fuel { max_steps }
    }
}

impl From<u64> for Fuel {
    fn from(max_steps: u64) -> Self {
        Fuel { max_steps }
    }
}

/// One register machine instruction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// Increment a register.
    Inc(u64),
    /// If the register is zero jump to the target, else decrement it and
    /// fall through. A target beyond the program length halts.
    DecJz(u64, u64),
    Halt,
}

/// A concrete program together with its Gödel number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineProgram {
    pub instructions: Vec<Instruction>,
    pub index: Nat,
}

/// A decoded program: either concrete instructions or a named procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Concrete(Vec<Instruction>),
    Virtual(VirtualProgram),
}

/// Result of a fuel-bounded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// The program halted after exactly `steps` transitions, `steps` being
    /// strictly below the fuel budget, with `output` in register 0.
    Halted { steps: u64, output: Nat },
    /// Not halted within the budget. Never asserts divergence.
    OutOfFuel,
}

impl RunOutcome {
    pub fn halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn output(&self) -> Option<&Nat> {
        match self {
            RunOutcome::Halted { output, .. } => Some(output),
            RunOutcome::OutOfFuel => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } => Some(*steps),
            RunOutcome::OutOfFuel => None,
        }
    }
}

/// Fuel-bounded membership answer for `W_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WMember {
    /// A witness `y` with `t1(e, x, y)`.
    Yes(u64),
    /// No witness at or below the budget.
    Unknown,
}

// ---------------------------------------------------------------------------
// Cantor pairing
// ---------------------------------------------------------------------------

/// Cantor pairing `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    (&s * (&s + Nat::one())) / nat(2) + y
}

/// First projection of the Cantor pairing.
pub fn unpair0(z: &Nat) -> Nat {
    let (x, _) = unpair(z);
    x
}

/// Second projection of the Cantor pairing.
pub fn unpair1(z: &Nat) -> Nat {
    let (_, y) = unpair(z);
    y
}

/// Both projections at once.
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = ⌊(√(8z + 1) − 1)/2⌋ is the diagonal index.
    let disc = (z * nat(8) + Nat::one()).sqrt();
    let w = (&disc - Nat::one()) / nat(2);
    let t = (&w * (&w + Nat::one())) / nat(2);
    let y = z - &t;
    let x = &w - &y;
    (x, y)
}

pub fn pair_u64(x: u64, y: u64) -> Nat {
    pair(&nat(x), &nat(y))
}

// ---------------------------------------------------------------------------
// Gödel numbering of programs
// ---------------------------------------------------------------------------

const OP_INC: u8 = 0;
const OP_DECJZ: u8 = 1;
const OP_HALT: u8 = 2;

fn instructions_to_bytes(instructions: &[Instruction]) -> Vec<u8> {
    let mut out = Vec::new();
    for instr in instructions {
        match instr {
            Instruction::Inc(r) => {
                out.push(OP_INC);
                codec::write_leb128(&mut out, *r);
            }
            Instruction::DecJz(r, target) => {
                out.push(OP_DECJZ);
                codec::write_leb128(&mut out, *r);
                codec::write_leb128(&mut out, *target);
            }
            Instruction::Halt => out.push(OP_HALT),
        }
    }
    out
}

/// Total decoder: every byte soup is a program. Unknown opcodes reduce mod 3
/// and truncated operands read as zero, so decoding never fails.
fn instructions_from_bytes(bytes: &[u8]) -> Vec<Instruction> {
    let mut reader = Reader::new(bytes);
    let mut instructions = Vec::new();
    while let Some(op) = reader.next_byte() {
        match op % 3 {
            OP_INC => instructions.push(Instruction::Inc(reader.read_leb128_lenient())),
            OP_DECJZ => {
                let r = reader.read_leb128_lenient();
                let target = reader.read_leb128_lenient();
                instructions.push(Instruction::DecJz(r, target));
            }
            _ => instructions.push(Instruction::Halt),
        }
    }
    instructions
}

/// Gödel number of a concrete instruction sequence.
pub fn encode(instructions: &[Instruction]) -> Nat {
    codec::bytes_to_nat(&instructions_to_bytes(instructions)) * nat(2)
}

/// Gödel number of a full (two-sorted) program.
pub fn encode_program(program: &Program) -> Nat {
    match program {
        Program::Concrete(instructions) => encode(instructions),
        Program::Virtual(v) => v.encode() * nat(2) + Nat::one(),
    }
}

/// Total decoding: even indices are concrete, odd are procedural.
pub fn decode(index: &Nat) -> Program {
    let (half, odd) = {
        let two = nat(2);
        let rem = index % &two;
        (index / &two, rem.is_one())
    };
    if odd {
        Program::Virtual(VirtualProgram::decode(&half))
    } else {
        Program::Concrete(instructions_from_bytes(&codec::nat_to_bytes_lenient(&half)))
    }
}

/// Decode to a [`MachineProgram`] when the index is concrete.
pub fn decode_concrete(index: &Nat) -> Option<MachineProgram> {
    match decode(index) {
        Program::Concrete(instructions) => Some(MachineProgram {
            instructions,
            index: index.clone(),
        }),
        Program::Virtual(_) => None,
    }
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

/// Run program `e` on input `x` (placed in register 0) under a fuel budget.
///
/// Deterministic in `(e, x)`: the halting step count and output do not
/// depend on the budget, only whether they are reached does.
pub fn run(e: &Nat, x: &Nat, fuel: Fuel) -> RunOutcome {
    match decode(e) {
        Program::Concrete(instructions) => sim::run_concrete(&instructions, x, fuel),
        Program::Virtual(v) => virt::run_virtual(&v, x, fuel),
    }
}

/// The step-counting Kleene predicate: true iff program `e` on input `x`
/// halts after exactly `y − 1` steps. Total; `y = 0` is always false.
pub fn t1(e: &Nat, x: &Nat, y: u64) -> bool {
    if y == 0 {
        return false;
    }
    match run(e, x, Fuel::new(y)) {
        RunOutcome::Halted { steps, .. } => steps == y - 1,
        RunOutcome::OutOfFuel => false,
    }
}

/// Fuel-bounded membership in `W_e = {x : ∃y T1(e, x, y)}`.
pub fn w_member(e: &Nat, x: &Nat, fuel: Fuel) -> WMember {
    match run(e, x, fuel) {
        RunOutcome::Halted { steps, .. } => WMember::Yes(steps + 1),
        RunOutcome::OutOfFuel => WMember::Unknown,
    }
}

/// Index of the program with constant output `n`; the step count is
/// independent of the input.
pub fn const_index(n: &Nat) -> Nat {
    encode_program(&Program::Virtual(VirtualProgram::Const { value: n.clone() }))
}

/// The s-m-n transformation: an index `e′` with `φ_{e′}(x) = φ_e(⟨a, x⟩)`,
/// computed without running `e`.
pub fn smn(e: &Nat, a: &Nat) -> Nat {
    encode_program(&Program::Virtual(VirtualProgram::Curry {
        outer: e.clone(),
        fixed: a.clone(),
    }))
}

/// Kleene's recursion theorem: an index `n` whose behaviour equals that of
/// `φ_{φ_t(n)}`, for a total index transformer `t`.
pub fn kleene_fixed_point(transformer: &Nat) -> Nat {
    encode_program(&Program::Virtual(VirtualProgram::Fixpoint {
        transformer: transformer.clone(),
    }))
}

// ---------------------------------------------------------------------------
// Program text format
// ---------------------------------------------------------------------------

/// Parse the line-oriented program text format: `INC r`, `DECJZ r L`,
/// `HALT`; line numbers are the jump targets, starting at 0.
pub fn parse_program(text: &str) -> Result<Vec<Instruction>, ProgramParseError> {
    let mut instructions = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let op = parts.next().unwrap().to_ascii_uppercase();
        let mut arg = |what: &str| -> Result<u64, ProgramParseError> {
            parts
                .next()
                .ok_or_else(|| ProgramParseError {
                    line: line_no + 1,
                    message: format!("missing {what}"),
                })?
                .parse()
                .map_err(|_| ProgramParseError {
                    line: line_no + 1,
                    message: format!("bad {what}"),
                })
        };
        let instr = match op.as_str() {
            "INC" => Instruction::Inc(arg("register")?),
            "DECJZ" => Instruction::DecJz(arg("register")?, arg("jump target")?),
            "HALT" => Instruction::Halt,
            other => {
                return Err(ProgramParseError {
                    line: line_no + 1,
                    message: format!("unknown opcode {other}"),
                })
            }
        };
        if parts.next().is_some() {
            return Err(ProgramParseError {
                line: line_no + 1,
                message: "trailing tokens".into(),
            });
        }
        instructions.push(instr);
    }
    Ok(instructions)
}

/// Render instructions in the program text format.
pub fn print_program(instructions: &[Instruction]) -> String {
    let mut out = String::new();
    for instr in instructions {
        match instr {
            Instruction::Inc(r) => out.push_str(&format!("INC {r}\n")),
            Instruction::DecJz(r, t) => out.push_str(&format!("DECJZ {r} {t}\n")),
            Instruction::Halt => out.push_str("HALT\n"),
        }
    }
    out
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ProgramParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Inc(r) => write!(f, "INC {r}"),
            Instruction::DecJz(r, t) => write!(f, "DECJZ {r} {t}"),
            Instruction::Halt => write!(f, "HALT"),
        }
    }
}

#[cfg(test)]
mod tests;
