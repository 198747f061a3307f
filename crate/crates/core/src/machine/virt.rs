//! Procedural programs: the odd half of the index space.
//!
//! Each family is a staged search with deterministic step semantics. The
//! halting step count of a procedural program on a given input is an
//! absolute property of the pair `(index, input)`: budgets only decide
//! whether it is reached. Every inner `run` uses a strictly smaller budget,
//! which makes the mutual recursion well founded whatever the parameters
//! decode to.

use super::{encode_program, pair, run, unpair, Fuel, Program, RunOutcome};
use crate::{nat, Nat};

/// A named procedure with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VirtualProgram {
    /// Halts after exactly one step with the fixed output, on every input.
    Const { value: Nat },
    /// s-m-n currying: behaves as `outer` on `⟨fixed, input⟩`.
    Curry { outer: Nat, fixed: Nat },
    /// Semi-decides the first component of the Shoenfield pair built from
    /// `W_source`: accepts `x` when the witness for `(x)₀ ∈ W_source`
    /// arrives strictly before program `(x)₁` halts on `x` itself.
    ShoenfieldB { source: Nat },
    /// The second component: `(x)₁` halts on `x` within the witness.
    ShoenfieldC { source: Nat },
    /// Semi-decides the theorem codes of the theory built from the literal
    /// index sets `W_pos` (positive) and `W_neg` (negated).
    TbcTheory { pos: Nat, neg: Nat },
    /// Semi-decides `{n : code of the n-th class-size sentence ∈ W_target}`.
    PhiPreimage { target: Nat },
    /// The inseparability witness: watches its own index against `W_left`
    /// and `W_right` and outputs the defecting value for whichever side
    /// claims it first.
    Defect { left: Nat, right: Nat },
    /// Recursion-theorem fixed point of a total index transformer.
    Fixpoint { transformer: Nat },
}

const TAG_CONST: u64 = 0;
const TAG_CURRY: u64 = 1;
const TAG_SH_B: u64 = 2;
const TAG_SH_C: u64 = 3;
const TAG_TBC: u64 = 4;
const TAG_PHI_PRE: u64 = 5;
const TAG_DEFECT: u64 = 6;
const TAG_FIXPOINT: u64 = 7;
const TAG_COUNT: u64 = 8;

impl VirtualProgram {
    /// Payload-level Gödel number (the odd/even split happens above).
    pub fn encode(&self) -> Nat {
        let (tag, payload) = match self {
            VirtualProgram::Const { value } => (TAG_CONST, value.clone()),
            VirtualProgram::Curry { outer, fixed } => (TAG_CURRY, pair(outer, fixed)),
            VirtualProgram::ShoenfieldB { source } => (TAG_SH_B, source.clone()),
            VirtualProgram::ShoenfieldC { source } => (TAG_SH_C, source.clone()),
            VirtualProgram::TbcTheory { pos, neg } => (TAG_TBC, pair(pos, neg)),
            VirtualProgram::PhiPreimage { target } => (TAG_PHI_PRE, target.clone()),
            VirtualProgram::Defect { left, right } => (TAG_DEFECT, pair(left, right)),
            VirtualProgram::Fixpoint { transformer } => (TAG_FIXPOINT, transformer.clone()),
        };
        pair(&nat(tag), &payload)
    }

    /// Total decoding of a payload-level number.
    pub fn decode(m: &Nat) -> VirtualProgram {
        let (tag, payload) = unpair(m);
        let tag = (&tag % nat(TAG_COUNT))
            .try_into()
            .unwrap_or(0u64);
        match tag {
            TAG_CONST => VirtualProgram::Const { value: payload },
            TAG_CURRY => {
                let (outer, fixed) = unpair(&payload);
                VirtualProgram::Curry { outer, fixed }
            }
            TAG_SH_B => VirtualProgram::ShoenfieldB { source: payload },
            TAG_SH_C => VirtualProgram::ShoenfieldC { source: payload },
            TAG_TBC => {
                let (pos, neg) = unpair(&payload);
                VirtualProgram::TbcTheory { pos, neg }
            }
            TAG_PHI_PRE => VirtualProgram::PhiPreimage { target: payload },
            TAG_DEFECT => {
                let (left, right) = unpair(&payload);
                VirtualProgram::Defect { left, right }
            }
            TAG_FIXPOINT => VirtualProgram::Fixpoint { transformer: payload },
            _ => unreachable!("tag reduced mod {TAG_COUNT}"),
        }
    }

    /// The full program index of this procedure.
    pub fn index(&self) -> Nat {
        encode_program(&Program::Virtual(self.clone()))
    }
}

pub(super) fn run_virtual(v: &VirtualProgram, x: &Nat, fuel: Fuel) -> RunOutcome {
    let cap = fuel.max_steps;
    if cap == 0 {
        return RunOutcome::OutOfFuel;
    }
    let inner = Fuel::new(cap - 1);
    match v {
        VirtualProgram::Const { value } => {
            // One step regardless of input; cap ≥ 1 was checked above, and
            // steps must be strictly below the budget.
            if cap > 1 {
                RunOutcome::Halted {
                    steps: 1,
                    output: value.clone(),
                }
            } else {
                RunOutcome::OutOfFuel
            }
        }
        VirtualProgram::Curry { outer, fixed } => match run(outer, &pair(fixed, x), inner) {
            RunOutcome::Halted { steps, output } => RunOutcome::Halted {
                steps: steps + 1,
                output,
            },
            RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
        },
        VirtualProgram::ShoenfieldB { source } => {
            let (x0, p1) = unpair(x);
            match run(source, &x0, inner) {
                RunOutcome::Halted { steps: s0, .. } => {
                    // Unique witness y* = s0 + 1; accept when (x)₁ has not
                    // halted on x within y* steps.
                    match run(&p1, x, Fuel::new(s0 + 1)) {
                        RunOutcome::OutOfFuel => RunOutcome::Halted {
                            steps: s0 + 1,
                            output: nat(0),
                        },
                        RunOutcome::Halted { .. } => RunOutcome::OutOfFuel,
                    }
                }
                RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
            }
        }
        VirtualProgram::ShoenfieldC { source } => {
            let (x0, p1) = unpair(x);
            match run(source, &x0, inner) {
                RunOutcome::Halted { steps: s0, .. } => match run(&p1, x, Fuel::new(s0 + 1)) {
                    RunOutcome::Halted { .. } => RunOutcome::Halted {
                        steps: s0 + 1,
                        output: nat(0),
                    },
                    RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
                },
                RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
            }
        }
        VirtualProgram::TbcTheory { pos, neg } => {
            match crate::janiczak::tbc_code_stage(pos, neg, x, cap) {
                Some(stage) => RunOutcome::Halted {
                    steps: stage,
                    output: nat(0),
                },
                None => RunOutcome::OutOfFuel,
            }
        }
        VirtualProgram::PhiPreimage { target } => {
            let code = crate::folog::phi_code(x);
            match run(target, &code, inner) {
                RunOutcome::Halted { steps, .. } => RunOutcome::Halted {
                    steps: steps + 1,
                    output: nat(0),
                },
                RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
            }
        }
        VirtualProgram::Defect { left, right } => {
            let own = v.index();
            let ra = run(left, &own, inner);
            let rb = run(right, &own, inner);
            match (ra, rb) {
                (RunOutcome::Halted { steps: sa, .. }, RunOutcome::Halted { steps: sb, .. }) => {
                    if sa <= sb {
                        RunOutcome::Halted {
                            steps: sa + 1,
                            output: nat(1),
                        }
                    } else {
                        RunOutcome::Halted {
                            steps: sb + 1,
                            output: nat(0),
                        }
                    }
                }
                // The other side cannot halt earlier than the budget we
                // already exhausted, so the winner is stable under refuel.
                (RunOutcome::Halted { steps: sa, .. }, RunOutcome::OutOfFuel) => {
                    RunOutcome::Halted {
                        steps: sa + 1,
                        output: nat(1),
                    }
                }
                (RunOutcome::OutOfFuel, RunOutcome::Halted { steps: sb, .. }) => {
                    RunOutcome::Halted {
                        steps: sb + 1,
                        output: nat(0),
                    }
                }
                (RunOutcome::OutOfFuel, RunOutcome::OutOfFuel) => RunOutcome::OutOfFuel,
            }
        }
        VirtualProgram::Fixpoint { transformer } => {
            let own = v.index();
            match run(transformer, &own, inner) {
                RunOutcome::Halted { steps: s1, output: target } => {
                    let Some(remaining) = cap.checked_sub(s1 + 2) else {
                        return RunOutcome::OutOfFuel;
                    };
                    match run(&target, x, Fuel::new(remaining)) {
                        RunOutcome::Halted { steps: s2, output } => RunOutcome::Halted {
                            steps: s1 + s2 + 2,
                            output,
                        },
                        RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
                    }
                }
                RunOutcome::OutOfFuel => RunOutcome::OutOfFuel,
            }
        }
    }
}
