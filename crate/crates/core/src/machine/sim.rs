//! The concrete register machine simulator.

use super::{Fuel, Instruction, RunOutcome};
use crate::Nat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Machine state. Registers absent from the map hold zero; `steps`
/// increases by exactly one per transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub pc: u64,
    pub registers: BTreeMap<u64, Nat>,
    pub steps: u64,
}

impl Config {
    /// Initial configuration with the input in register 0.
    pub fn initial(input: &Nat) -> Self {
        let mut registers = BTreeMap::new();
        if !input.is_zero() {
            registers.insert(0, input.clone());
        }
        Config {
            pc: 0,
            registers,
            steps: 0,
        }
    }

    pub fn register(&self, r: u64) -> Nat {
        self.registers.get(&r).cloned().unwrap_or_else(Nat::zero)
    }

    /// The machine halts when the program counter points at `Halt` or past
    /// the end of the program.
    pub fn halted(&self, program: &[Instruction]) -> bool {
        match program.get(self.pc as usize) {
            None => true,
            Some(Instruction::Halt) => true,
            Some(_) => false,
        }
    }

    pub fn output(&self) -> Nat {
        self.register(0)
    }
}

/// One deterministic transition. Returns `false` when already halted.
pub fn step(program: &[Instruction], config: &mut Config) -> bool {
    let instr = match program.get(config.pc as usize) {
        None | Some(Instruction::Halt) => return false,
        Some(instr) => instr.clone(),
    };
    match instr {
        Instruction::Inc(r) => {
            let entry = config.registers.entry(r).or_insert_with(Nat::zero);
            *entry += Nat::one();
            config.pc += 1;
        }
        Instruction::DecJz(r, target) => {
            let value = config.registers.entry(r).or_insert_with(Nat::zero);
            if value.is_zero() {
                config.pc = target;
            } else {
                *value -= Nat::one();
                config.pc += 1;
            }
        }
        Instruction::Halt => unreachable!(),
    }
    config.steps += 1;
    true
}

pub(super) fn run_concrete(program: &[Instruction], input: &Nat, fuel: Fuel) -> RunOutcome {
    let mut config = Config::initial(input);
    loop {
        if config.halted(program) {
            // Halting is only certified strictly inside the budget.
            if config.steps < fuel.max_steps {
                return RunOutcome::Halted {
                    steps: config.steps,
                    output: config.output(),
                };
            }
            return RunOutcome::OutOfFuel;
        }
        if config.steps >= fuel.max_steps {
            return RunOutcome::OutOfFuel;
        }
        step(program, &mut config);
    }
}
