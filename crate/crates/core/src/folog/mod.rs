//! First-order syntax: signatures, terms, formulas, parsing, Gödel
//! numbering, capture-avoiding substitution, relativization, translations
//! between languages, and the built-in sample theories.

mod godel;
pub mod model;
mod parse;
mod subst;
mod theories;
mod translate;

#[cfg(test)]
mod tests;

pub use godel::{code_byte_len, godel, neg_phi_code_param, phi_code, phi_code_param, ungodel};
pub use parse::{parse_formula, parse_formulas, parse_signature_items, parse_term, ParseError};
pub use subst::{
    all_vars, alpha_eq, free_vars, fresh_var, rename_symbols, substitute, substitute_many,
};
pub use theories::{
    axioms_j, axioms_q, axioms_r, axioms_vs, j_axiom, numeral, phi, phi_shape, sig_e, sig_q,
    sig_r, sig_vs, PHI_MATERIALIZE_CAP,
};
pub use translate::{
    equality_axioms, identity_translation, interpretation_obligations, param_var, relativize,
    translate, TranslateError, Translation,
};

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A first-order term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

/// A first-order formula with equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Rel(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn app(name: &str, args: Vec<Term>) -> Term {
    Term::App(name.to_string(), args)
}

pub fn eq(left: Term, right: Term) -> Formula {
    Formula::Eq(left, right)
}

pub fn rel(name: &str, args: Vec<Term>) -> Formula {
    Formula::Rel(name.to_string(), args)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn forall(v: &str, f: Formula) -> Formula {
    Formula::Forall(v.to_string(), Box::new(f))
}

pub fn exists(v: &str, f: Formula) -> Formula {
    Formula::Exists(v.to_string(), Box::new(f))
}

/// Right-associated conjunction of a non-empty list.
pub fn conj_all(mut parts: Vec<Formula>) -> Formula {
    let last = parts.pop().expect("conj_all of empty list");
    parts.into_iter().rev().fold(last, |acc, f| and(f, acc))
}

/// Right-associated disjunction of a non-empty list.
pub fn disj_all(mut parts: Vec<Formula>) -> Formula {
    let last = parts.pop().expect("disj_all of empty list");
    parts.into_iter().rev().fold(last, |acc, f| or(f, acc))
}

impl Formula {
    /// Standard quantifier nesting depth.
    pub fn quantifier_rank(&self) -> u64 {
        match self {
            Formula::Eq(..) | Formula::Rel(..) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_rank(),
        }
    }

    pub fn is_sentence(&self) -> bool {
        free_vars(self).is_empty()
    }

    /// Number of AST nodes, counting terms.
    pub fn size(&self) -> u64 {
        fn term_size(t: &Term) -> u64 {
            match t {
                Term::Var(_) => 1,
                Term::App(_, args) => 1 + args.iter().map(term_size).sum::<u64>(),
            }
        }
        match self {
            Formula::Eq(a, b) => 1 + term_size(a) + term_size(b),
            Formula::Rel(_, args) => 1 + args.iter().map(term_size).sum::<u64>(),
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
        }
    }
}

/// Relation and function symbols with arities. Constants are 0-ary
/// functions. Names are unique across the two kinds; by convention relation
/// names start with an uppercase letter and function names do not, which is
/// what lets the text formats declare both kinds in one header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    relations: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
}

/// True when the name is a relation name under the header convention.
pub fn is_relation_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl Signature {
    pub fn new() -> Self {
        Signature {
            relations: BTreeMap::new(),
            functions: BTreeMap::new(),
        }
    }

    pub fn with_relation(mut self, name: &str, arity: usize) -> Self {
        assert!(
            !self.functions.contains_key(name),
            "name {name} already a function"
        );
        self.relations.insert(name.to_string(), arity);
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        assert!(
            !self.relations.contains_key(name),
            "name {name} already a relation"
        );
        self.functions.insert(name.to_string(), arity);
        self
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    /// The 0-ary relation names (propositional atoms).
    pub fn propositional0(&self) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|(_, a)| **a == 0)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn check_term(&self, term: &Term) -> Result<(), SignatureError> {
        match term {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let arity = self.function_arity(name).ok_or_else(|| {
                    SignatureError::UnknownFunction {
                        name: name.clone(),
                    }
                })?;
                if args.len() != arity {
                    return Err(SignatureError::FunctionArity {
                        name: name.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|t| self.check_term(t))
            }
        }
    }

    pub fn check_formula(&self, formula: &Formula) -> Result<(), SignatureError> {
        match formula {
            Formula::Eq(a, b) => {
                self.check_term(a)?;
                self.check_term(b)
            }
            Formula::Rel(name, args) => {
                let arity = self.relation_arity(name).ok_or_else(|| {
                    SignatureError::UnknownRelation {
                        name: name.clone(),
                    }
                })?;
                if args.len() != arity {
                    return Err(SignatureError::RelationArity {
                        name: name.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|t| self.check_term(t))
            }
            Formula::Not(f) => self.check_formula(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => self.check_formula(f),
        }
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("unknown relation {name}")]
    UnknownRelation { name: String },
    #[error("unknown function {name}")]
    UnknownFunction { name: String },
    #[error("relation {name} expects {expected} arguments, got {got}")]
    RelationArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("function {name} expects {expected} arguments, got {got}")]
    FunctionArity {
        name: String,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) => {
                write!(f, "({name}")?;
                for arg in args {
                    write!(f, " {arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Rel(name, args) => {
                write!(f, "({name}")?;
                for arg in args {
                    write!(f, " {arg}")?;
                }
                write!(f, ")")
            }
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(-> {a} {b})"),
            Formula::Forall(v, inner) => write!(f, "(forall {v} {inner})"),
            Formula::Exists(v, inner) => write!(f, "(exists {v} {inner})"),
        }
    }
}
