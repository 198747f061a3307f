//! A complete Hilbert-style calculus with fair, fuel-bounded theorem
//! enumeration. Every emitted theorem carries its derivation, and the
//! derivation checker is independent of the search.

use crate::folog::{
    and, eq, exists, forall, free_vars, implies, not, or, substitute, var, Formula, Term,
};
use crate::machine::{unpair, Fuel};
use crate::theoryalg::TheoryPresentation;
use crate::{nat, Nat};
use num_traits::ToPrimitive;
use std::collections::{HashMap, VecDeque};

/// An instantiated axiom scheme; the checker rebuilds the formula from the
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeInstance {
    /// `a → (b → a)`
    K { a: Formula, b: Formula },
    /// `(a → (b → c)) → ((a → b) → (a → c))`
    S { a: Formula, b: Formula, c: Formula },
    /// `(¬a → ¬b) → (b → a)`
    Contraposition { a: Formula, b: Formula },
    /// `a ∧ b → a`
    AndLeft { a: Formula, b: Formula },
    /// `a ∧ b → b`
    AndRight { a: Formula, b: Formula },
    /// `a → (b → a ∧ b)`
    AndIntro { a: Formula, b: Formula },
    /// `a → a ∨ b`
    OrLeft { a: Formula, b: Formula },
    /// `b → a ∨ b`
    OrRight { a: Formula, b: Formula },
    /// `(a → c) → ((b → c) → (a ∨ b → c))`
    OrElim { a: Formula, b: Formula, c: Formula },
    /// `∀v a → a[v := t]`
    ForallInst { v: String, a: Formula, t: Term },
    /// `∀v (a → b) → (a → ∀v b)`, `v` not free in `a`
    ForallDist { v: String, a: Formula, b: Formula },
    /// `a → ∀v a`, `v` not free in `a`
    Vacuous { v: String, a: Formula },
    /// `a[v := t] → ∃v a`
    ExistsIntro { v: String, a: Formula, t: Term },
    /// `∀v (a → b) → (∃v a → b)`, `v` not free in `b`
    ExistsElim { v: String, a: Formula, b: Formula },
    /// `t = t`
    EqRefl { t: Term },
    /// `l = r → (a[v := l] → a[v := r])`
    EqSubst { v: String, a: Formula, l: Term, r: Term },
}

impl SchemeInstance {
    /// The axiom this instance denotes; `None` when a side condition fails.
    pub fn formula(&self) -> Option<Formula> {
        Some(match self {
            SchemeInstance::K { a, b } => implies(a.clone(), implies(b.clone(), a.clone())),
            SchemeInstance::S { a, b, c } => implies(
                implies(a.clone(), implies(b.clone(), c.clone())),
                implies(
                    implies(a.clone(), b.clone()),
                    implies(a.clone(), c.clone()),
                ),
            ),
            SchemeInstance::Contraposition { a, b } => implies(
                implies(not(a.clone()), not(b.clone())),
                implies(b.clone(), a.clone()),
            ),
            SchemeInstance::AndLeft { a, b } => implies(and(a.clone(), b.clone()), a.clone()),
            SchemeInstance::AndRight { a, b } => implies(and(a.clone(), b.clone()), b.clone()),
            SchemeInstance::AndIntro { a, b } => implies(
                a.clone(),
                implies(b.clone(), and(a.clone(), b.clone())),
            ),
            SchemeInstance::OrLeft { a, b } => implies(a.clone(), or(a.clone(), b.clone())),
            SchemeInstance::OrRight { a, b } => implies(b.clone(), or(a.clone(), b.clone())),
            SchemeInstance::OrElim { a, b, c } => implies(
                implies(a.clone(), c.clone()),
                implies(
                    implies(b.clone(), c.clone()),
                    implies(or(a.clone(), b.clone()), c.clone()),
                ),
            ),
            SchemeInstance::ForallInst { v, a, t } => {
                implies(forall(v, a.clone()), substitute(a, v, t))
            }
            SchemeInstance::ForallDist { v, a, b } => {
                if free_vars(a).contains(v) {
                    return None;
                }
                implies(
                    forall(v, implies(a.clone(), b.clone())),
                    implies(a.clone(), forall(v, b.clone())),
                )
            }
            SchemeInstance::Vacuous { v, a } => {
                if free_vars(a).contains(v) {
                    return None;
                }
                implies(a.clone(), forall(v, a.clone()))
            }
            SchemeInstance::ExistsIntro { v, a, t } => {
                implies(substitute(a, v, t), exists(v, a.clone()))
            }
            SchemeInstance::ExistsElim { v, a, b } => {
                if free_vars(b).contains(v) {
                    return None;
                }
                implies(
                    forall(v, implies(a.clone(), b.clone())),
                    implies(exists(v, a.clone()), b.clone()),
                )
            }
            SchemeInstance::EqRefl { t } => eq(t.clone(), t.clone()),
            SchemeInstance::EqSubst { v, a, l, r } => implies(
                eq(l.clone(), r.clone()),
                implies(substitute(a, v, l), substitute(a, v, r)),
            ),
        })
    }
}

/// One derivation line; premise references are line indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    TheoryAxiom(u64),
    Scheme(SchemeInstance),
    ModusPonens(usize, usize),
    Generalization(usize, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub formula: Formula,
    pub justification: Justification,
}

/// A theorem with its derivation; the conclusion is the last line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem {
    pub conclusion: Formula,
    pub derivation: Vec<DerivationStep>,
}

/// Validate a derivation line by line against the theory.
pub fn check_derivation(theory: &TheoryPresentation, theorem: &Theorem) -> bool {
    let steps = &theorem.derivation;
    if steps.last().map(|s| &s.formula) != Some(&theorem.conclusion) {
        return false;
    }
    for (k, step) in steps.iter().enumerate() {
        let ok = match &step.justification {
            Justification::TheoryAxiom(i) => theory.axiom(*i).as_ref() == Some(&step.formula),
            Justification::Scheme(instance) => instance.formula().as_ref() == Some(&step.formula),
            Justification::ModusPonens(i, j) => {
                *i < k && *j < k
                    && steps[*i].formula
                        == implies(steps[*j].formula.clone(), step.formula.clone())
            }
            Justification::Generalization(i, v) => {
                *i < k && step.formula == forall(v, steps[*i].formula.clone())
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Saturation pool
// ---------------------------------------------------------------------------

/// How a pool entry was obtained; premise references are pool indices, so
/// shared sub-derivations are stored once.
enum PoolJust {
    TheoryAxiom(u64),
    Scheme(SchemeInstance),
    Mp { implication: usize, antecedent: usize },
    Gen { premise: usize, variable: String },
}

struct PoolEntry {
    conclusion: Formula,
    justification: PoolJust,
}

enum Pending {
    Mp { implication: usize, antecedent: usize },
    Gen { index: usize, variable: String },
}

struct Saturation {
    pool: Vec<PoolEntry>,
    by_conclusion: HashMap<Formula, usize>,
    /// Implication entries keyed by their antecedent.
    wanting: HashMap<Formula, Vec<usize>>,
    worklist: VecDeque<Pending>,
    size_cap: u64,
}

impl Saturation {
    fn new() -> Self {
        Saturation {
            pool: Vec::new(),
            by_conclusion: HashMap::new(),
            wanting: HashMap::new(),
            worklist: VecDeque::new(),
            size_cap: 160,
        }
    }

    fn add(&mut self, conclusion: Formula, justification: PoolJust) {
        if self.by_conclusion.contains_key(&conclusion) {
            return;
        }
        if conclusion.size() > self.size_cap {
            return;
        }
        let index = self.pool.len();
        self.pool.push(PoolEntry {
            conclusion: conclusion.clone(),
            justification,
        });
        self.by_conclusion.insert(conclusion.clone(), index);

        if let Formula::Implies(antecedent, _) = &conclusion {
            self.wanting
                .entry((**antecedent).clone())
                .or_default()
                .push(index);
            if let Some(&ant) = self.by_conclusion.get(antecedent.as_ref()) {
                self.worklist.push_back(Pending::Mp {
                    implication: index,
                    antecedent: ant,
                });
            }
        }
        if let Some(wanting) = self.wanting.get(&conclusion) {
            for &implication in wanting.clone().iter() {
                self.worklist.push_back(Pending::Mp {
                    implication,
                    antecedent: index,
                });
            }
        }
        for v in free_vars(&conclusion) {
            self.worklist.push_back(Pending::Gen { index, variable: v });
        }
    }

    fn drain(&mut self, budget: usize) {
        for _ in 0..budget {
            let Some(item) = self.worklist.pop_front() else {
                return;
            };
            match item {
                Pending::Mp {
                    implication,
                    antecedent,
                } => {
                    let Formula::Implies(a, b) = self.pool[implication].conclusion.clone() else {
                        continue;
                    };
                    if self.pool[antecedent].conclusion == *a {
                        self.add(
                            *b,
                            PoolJust::Mp {
                                implication,
                                antecedent,
                            },
                        );
                    }
                }
                Pending::Gen { index, variable } => {
                    let generalized = forall(&variable, self.pool[index].conclusion.clone());
                    self.add(
                        generalized,
                        PoolJust::Gen {
                            premise: index,
                            variable,
                        },
                    );
                }
            }
        }
    }

    /// Linearize the dependency cone of one entry into a derivation, each
    /// pool entry appearing once.
    fn materialize(&self, root: usize) -> Theorem {
        // Collect the cone in topological (pool index) order.
        let mut needed = vec![false; self.pool.len()];
        let mut stack = vec![root];
        while let Some(k) = stack.pop() {
            if needed[k] {
                continue;
            }
            needed[k] = true;
            match &self.pool[k].justification {
                PoolJust::Mp {
                    implication,
                    antecedent,
                } => {
                    stack.push(*implication);
                    stack.push(*antecedent);
                }
                PoolJust::Gen { premise, .. } => stack.push(*premise),
                _ => {}
            }
        }
        let mut line_of = vec![usize::MAX; self.pool.len()];
        let mut derivation = Vec::new();
        for k in 0..self.pool.len() {
            if !needed[k] {
                continue;
            }
            let justification = match &self.pool[k].justification {
                PoolJust::TheoryAxiom(i) => Justification::TheoryAxiom(*i),
                PoolJust::Scheme(instance) => Justification::Scheme(instance.clone()),
                PoolJust::Mp {
                    implication,
                    antecedent,
                } => Justification::ModusPonens(line_of[*implication], line_of[*antecedent]),
                PoolJust::Gen { premise, variable } => {
                    Justification::Generalization(line_of[*premise], variable.clone())
                }
            };
            line_of[k] = derivation.len();
            derivation.push(DerivationStep {
                formula: self.pool[k].conclusion.clone(),
                justification,
            });
        }
        Theorem {
            conclusion: self.pool[root].conclusion.clone(),
            derivation,
        }
    }
}

/// Terms available for scheme instantiation over a signature: variables,
/// constants, and unary applications over them.
fn term_pool(theory: &TheoryPresentation) -> Vec<Term> {
    let mut out: Vec<Term> = ["v0", "v1", "x", "y"].iter().map(|v| var(v)).collect();
    let constants: Vec<Term> = theory
        .signature
        .functions()
        .filter(|(_, arity)| *arity == 0)
        .map(|(name, _)| Term::App(name.to_string(), vec![]))
        .collect();
    out.extend(constants.clone());
    for (name, arity) in theory.signature.functions() {
        if arity == 1 {
            for base in ["v0", "x"] {
                out.push(Term::App(name.to_string(), vec![var(base)]));
            }
            for c in &constants {
                out.push(Term::App(name.to_string(), vec![c.clone()]));
            }
        }
    }
    out
}

fn pick<'a, T>(items: &'a [T], index: &Nat) -> Option<&'a T> {
    if items.is_empty() {
        return None;
    }
    let k = (index % nat(items.len() as u64)).to_u64().unwrap() as usize;
    items.get(k)
}

const VARS: [&str; 3] = ["v0", "x", "y"];

/// Build the scheme instance at a cursor id over the current pool.
/// Component indices reduce modulo the pool size; since the pool is
/// append-only, every combination of absolute indices recurs unboundedly
/// often, which is what makes the enumeration fair.
fn scheme_instance(id: u64, pool: &[PoolEntry], terms: &[Term]) -> Option<SchemeInstance> {
    const KINDS: u64 = 16;
    let kind = id % KINDS;
    let rest = nat(id / KINDS);
    let (p0, p1) = unpair(&rest);
    let (p1a, p1b) = unpair(&p1);
    let f = |ix: &Nat| -> Option<Formula> {
        pick(pool, ix).map(|entry| entry.conclusion.clone())
    };
    let t = |ix: &Nat| -> Option<Term> { pick(terms, ix).cloned() };
    let v = |ix: &Nat| -> String {
        VARS[(ix % nat(VARS.len() as u64)).to_u64().unwrap() as usize].to_string()
    };
    Some(match kind {
        0 => SchemeInstance::K {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        1 => SchemeInstance::S {
            a: f(&p0)?,
            b: f(&p1a)?,
            c: f(&p1b)?,
        },
        2 => SchemeInstance::Contraposition {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        3 => SchemeInstance::AndLeft {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        4 => SchemeInstance::AndRight {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        5 => SchemeInstance::AndIntro {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        6 => SchemeInstance::OrLeft {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        7 => SchemeInstance::OrRight {
            a: f(&p0)?,
            b: f(&p1)?,
        },
        8 => SchemeInstance::OrElim {
            a: f(&p0)?,
            b: f(&p1a)?,
            c: f(&p1b)?,
        },
        9 => SchemeInstance::ForallInst {
            v: v(&p0),
            a: f(&p1a)?,
            t: t(&p1b)?,
        },
        10 => SchemeInstance::ForallDist {
            v: v(&p0),
            a: f(&p1a)?,
            b: f(&p1b)?,
        },
        11 => SchemeInstance::Vacuous {
            v: v(&p0),
            a: f(&p1)?,
        },
        12 => SchemeInstance::ExistsIntro {
            v: v(&p0),
            a: f(&p1a)?,
            t: t(&p1b)?,
        },
        13 => SchemeInstance::ExistsElim {
            v: v(&p0),
            a: f(&p1a)?,
            b: f(&p1b)?,
        },
        14 => SchemeInstance::EqRefl { t: t(&p0)? },
        15 => {
            let (l, r) = unpair(&p1b);
            SchemeInstance::EqSubst {
                v: v(&p0),
                a: f(&p1a)?,
                l: t(&l)?,
                r: t(&r)?,
            }
        }
        _ => unreachable!(),
    })
}

fn saturate(theory: &TheoryPresentation, fuel: Fuel) -> Saturation {
    const SCHEME_ATTEMPTS: u64 = 4;
    const DRAIN_BUDGET: usize = 12;
    let terms = term_pool(theory);
    let mut sat = Saturation::new();
    let mut cursor = 0u64;
    for round in 0..fuel.max_steps {
        sat.size_cap = 160 + round / 8;
        if let Some(axiom) = theory.axiom(round) {
            sat.add(axiom, PoolJust::TheoryAxiom(round));
        }
        for _ in 0..SCHEME_ATTEMPTS {
            let id = cursor;
            cursor += 1;
            if let Some(instance) = scheme_instance(id, &sat.pool, &terms) {
                if let Some(formula) = instance.formula() {
                    sat.add(formula, PoolJust::Scheme(instance));
                }
            }
        }
        sat.drain(DRAIN_BUDGET);
    }
    sat
}

/// Fair fuel-bounded enumeration of theorems: one theory axiom per round,
/// a few scheme instances from a deterministic cursor, and bounded closure
/// under modus ponens and generalization. Monotone in fuel; every emitted
/// theorem carries a derivation the checker accepts.
pub fn enum_theorems(theory: &TheoryPresentation, fuel: Fuel) -> Vec<Theorem> {
    let sat = saturate(theory, fuel);
    (0..sat.pool.len())
        .filter(|&k| sat.pool[k].conclusion.is_sentence())
        .map(|k| sat.materialize(k))
        .collect()
}

/// The conclusions alone, in emission order; the cheap view used by the
/// construction scans.
pub fn enum_theorem_sentences(theory: &TheoryPresentation, fuel: Fuel) -> Vec<Formula> {
    saturate(theory, fuel)
        .pool
        .into_iter()
        .map(|entry| entry.conclusion)
        .filter(Formula::is_sentence)
        .collect()
}
