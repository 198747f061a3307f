//! Brute-force evaluation of formulas in finite structures. Used as a
//! ground-truth oracle where a translation or relativization is checked
//! against plain model-theoretic semantics.

use super::{Formula, Signature, Term};
use std::collections::BTreeMap;

/// A finite structure: domain `{0, …, size−1}`, relation tables, total
/// function tables.
#[derive(Debug, Clone)]
pub struct FiniteStructure {
    pub size: usize,
    pub relations: BTreeMap<String, Vec<Vec<usize>>>,
    pub functions: BTreeMap<String, BTreeMap<Vec<usize>, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("empty domain")]
    EmptyDomain,
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("no interpretation for {0}")]
    Missing(String),
}

impl FiniteStructure {
    pub fn new(size: usize) -> Self {
        FiniteStructure {
            size,
            relations: BTreeMap::new(),
            functions: BTreeMap::new(),
        }
    }

    pub fn with_relation(mut self, name: &str, tuples: Vec<Vec<usize>>) -> Self {
        self.relations.insert(name.to_string(), tuples);
        self
    }

    pub fn with_function(mut self, name: &str, table: BTreeMap<Vec<usize>, usize>) -> Self {
        self.functions.insert(name.to_string(), table);
        self
    }

    fn term(
        &self,
        term: &Term,
        env: &BTreeMap<String, usize>,
    ) -> Result<usize, ModelError> {
        match term {
            Term::Var(v) => env
                .get(v)
                .copied()
                .ok_or_else(|| ModelError::UnboundVariable(v.clone())),
            Term::App(name, args) => {
                let table = self
                    .functions
                    .get(name)
                    .ok_or_else(|| ModelError::Missing(name.clone()))?;
                let values = args
                    .iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<Vec<_>, _>>()?;
                table
                    .get(&values)
                    .copied()
                    .ok_or_else(|| ModelError::Missing(format!("{name} at {values:?}")))
            }
        }
    }

    fn eval_env(
        &self,
        formula: &Formula,
        env: &mut BTreeMap<String, usize>,
    ) -> Result<bool, ModelError> {
        match formula {
            Formula::Eq(a, b) => Ok(self.term(a, env)? == self.term(b, env)?),
            Formula::Rel(name, args) => {
                let tuples = self
                    .relations
                    .get(name)
                    .ok_or_else(|| ModelError::Missing(name.clone()))?;
                let values = args
                    .iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(tuples.contains(&values))
            }
            Formula::Not(f) => Ok(!self.eval_env(f, env)?),
            Formula::And(a, b) => Ok(self.eval_env(a, env)? && self.eval_env(b, env)?),
            Formula::Or(a, b) => Ok(self.eval_env(a, env)? || self.eval_env(b, env)?),
            Formula::Implies(a, b) => Ok(!self.eval_env(a, env)? || self.eval_env(b, env)?),
            Formula::Forall(v, f) => {
                let saved = env.get(v).copied();
                for d in 0..self.size {
                    env.insert(v.clone(), d);
                    let holds = self.eval_env(f, env)?;
                    restore(env, v, saved);
                    if !holds {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Exists(v, f) => {
                let saved = env.get(v).copied();
                for d in 0..self.size {
                    env.insert(v.clone(), d);
                    let holds = self.eval_env(f, env)?;
                    restore(env, v, saved);
                    if holds {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Evaluate a formula under an assignment of its free variables.
    pub fn eval(
        &self,
        formula: &Formula,
        assignment: &BTreeMap<String, usize>,
    ) -> Result<bool, ModelError> {
        if self.size == 0 {
            return Err(ModelError::EmptyDomain);
        }
        self.eval_env(formula, &mut assignment.clone())
    }

    /// Evaluate a sentence.
    pub fn eval_sentence(&self, formula: &Formula) -> Result<bool, ModelError> {
        self.eval(formula, &BTreeMap::new())
    }

    /// Exhaustively enumerate all structures of the given size over a
    /// signature (relations only); used to spot-check logical equivalences.
    pub fn enumerate_relational(sig: &Signature, size: usize) -> Vec<FiniteStructure> {
        let mut tuple_space: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
        for (name, arity) in sig.relations() {
            let mut tuples = vec![vec![]];
            for _ in 0..arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        (0..size).map(move |d| {
                            let mut t = t.clone();
                            t.push(d);
                            t
                        })
                    })
                    .collect();
            }
            tuple_space.push((name.to_string(), tuples));
        }
        let total_tuples: usize = tuple_space.iter().map(|(_, t)| t.len()).sum();
        assert!(total_tuples <= 20, "enumeration space too large");
        let combinations = 1usize << total_tuples;
        let mut out = Vec::with_capacity(combinations);
        for mask in 0..combinations {
            let mut structure = FiniteStructure::new(size);
            let mut bit = 0;
            for (name, tuples) in &tuple_space {
                let chosen: Vec<Vec<usize>> = tuples
                    .iter()
                    .filter(|_| {
                        let keep = mask >> bit & 1 == 1;
                        bit += 1;
                        keep
                    })
                    .cloned()
                    .collect();
                structure = structure.with_relation(name, chosen);
            }
            out.push(structure);
        }
        out
    }
}

fn restore(env: &mut BTreeMap<String, usize>, v: &str, saved: Option<usize>) {
    match saved {
        Some(d) => {
            env.insert(v.to_string(), d);
        }
        None => {
            env.remove(v);
        }
    }
}
