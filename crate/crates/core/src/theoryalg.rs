//! Theory presentations and the interpretability infimum and supremum,
//! together with the sentence-set transformers that push separating sets
//! through them.

use crate::folog::{
    self, implies, not, parse_formulas, parse_signature_items, rel, relativize, translate, var,
    Formula, ParseError, Signature, Term, TranslateError, Translation,
};
use crate::machine::Fuel;
use std::fmt;
use std::sync::Arc;

/// A theory given by a signature and a deterministic indexed axiom stream.
/// A `None` from the generator means the stream is exhausted there and at
/// every later index.
#[derive(Clone)]
pub struct TheoryPresentation {
    pub name: String,
    pub signature: Signature,
    axioms: Arc<dyn Fn(u64) -> Option<Formula> + Send + Sync>,
}

impl TheoryPresentation {
    pub fn new(
        name: &str,
        signature: Signature,
        axioms: impl Fn(u64) -> Option<Formula> + Send + Sync + 'static,
    ) -> Self {
        TheoryPresentation {
            name: name.to_string(),
            signature,
            axioms: Arc::new(axioms),
        }
    }

    pub fn finite(name: &str, signature: Signature, axioms: Vec<Formula>) -> Self {
        TheoryPresentation::new(name, signature, move |i| {
            axioms.get(i as usize).cloned()
        })
    }

    pub fn axiom(&self, index: u64) -> Option<Formula> {
        let formula = (self.axioms)(index)?;
        debug_assert!(
            self.signature.check_formula(&formula).is_ok() && formula.is_sentence(),
            "generator emitted a bad axiom for {}",
            self.name
        );
        Some(formula)
    }

    pub fn axioms_prefix(&self, count: u64) -> Vec<Formula> {
        (0..count).map_while(|i| self.axiom(i)).collect()
    }
}

impl fmt::Debug for TheoryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoryPresentation")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .finish_non_exhaustive()
    }
}

/// A total decision callback over sentences.
#[derive(Clone)]
pub struct SentenceSetOracle {
    label: String,
    decide: Arc<dyn Fn(&Formula) -> bool + Send + Sync>,
}

impl SentenceSetOracle {
    pub fn new(label: &str, decide: impl Fn(&Formula) -> bool + Send + Sync + 'static) -> Self {
        SentenceSetOracle {
            label: label.to_string(),
            decide: Arc::new(decide),
        }
    }

    pub fn decide(&self, formula: &Formula) -> bool {
        (self.decide)(formula)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for SentenceSetOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SentenceSetOracle")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

// ---------------------------------------------------------------------------
// Disjoint signature sums
// ---------------------------------------------------------------------------

fn tag_name(name: &str, left: bool) -> String {
    let relation = folog::is_relation_name(name);
    match (left, relation) {
        (true, true) => format!("L_{name}"),
        (true, false) => format!("l_{name}"),
        (false, true) => format!("R_{name}"),
        (false, false) => format!("r_{name}"),
    }
}

fn tag_signature(sig: &Signature, left: bool) -> Signature {
    let mut out = Signature::new();
    for (name, arity) in sig.relations() {
        out = out.with_relation(&tag_name(name, left), arity);
    }
    for (name, arity) in sig.functions() {
        out = out.with_function(&tag_name(name, left), arity);
    }
    out
}

/// Prefix every symbol of a formula into the left or right copy of the sum
/// signature. Purely name-directed, so it works without the signature.
pub fn tag_formula(formula: &Formula, left: bool) -> Formula {
    fn tag_term(term: &Term, left: bool) -> Term {
        match term {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App(name, args) => Term::App(
                tag_name(name, left),
                args.iter().map(|t| tag_term(t, left)).collect(),
            ),
        }
    }
    match formula {
        Formula::Eq(a, b) => Formula::Eq(tag_term(a, left), tag_term(b, left)),
        Formula::Rel(name, args) => Formula::Rel(
            tag_name(name, left),
            args.iter().map(|t| tag_term(t, left)).collect(),
        ),
        Formula::Not(f) => Formula::Not(Box::new(tag_formula(f, left))),
        Formula::And(a, b) => Formula::And(
            Box::new(tag_formula(a, left)),
            Box::new(tag_formula(b, left)),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(tag_formula(a, left)),
            Box::new(tag_formula(b, left)),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(tag_formula(a, left)),
            Box::new(tag_formula(b, left)),
        ),
        Formula::Forall(v, f) => Formula::Forall(v.clone(), Box::new(tag_formula(f, left))),
        Formula::Exists(v, f) => Formula::Exists(v.clone(), Box::new(tag_formula(f, left))),
    }
}

fn selector() -> Formula {
    rel("P", vec![])
}

/// Interleave two exhaustible streams, left first.
fn interleave(
    a: Arc<dyn Fn(u64) -> Option<Formula> + Send + Sync>,
    b: Arc<dyn Fn(u64) -> Option<Formula> + Send + Sync>,
) -> impl Fn(u64) -> Option<Formula> {
    move |index| {
        // Walk both streams in alternation, skipping exhausted sides, until
        // the requested position is reached.
        let mut emitted = 0u64;
        for i in 0.. {
            let mut row = Vec::new();
            if let Some(f) = a(i) {
                row.push(f);
            }
            if let Some(g) = b(i) {
                row.push(g);
            }
            if row.is_empty() {
                return None;
            }
            for f in row {
                if emitted == index {
                    return Some(f);
                }
                emitted += 1;
            }
        }
        unreachable!()
    }
}

/// The interpretability infimum: the disjoint signature sum plus a fresh
/// 0-ary selector, axiomatized by the left axioms under the selector and
/// the right axioms under its negation, interleaved.
pub fn infimum(a: &TheoryPresentation, b: &TheoryPresentation) -> TheoryPresentation {
    let signature = {
        let mut sig = tag_signature(&a.signature, true);
        for (name, arity) in tag_signature(&b.signature, false).relations() {
            sig = sig.with_relation(name, arity);
        }
        for (name, arity) in tag_signature(&b.signature, false).functions() {
            sig = sig.with_function(name, arity);
        }
        sig.with_relation("P", 0)
    };
    let left_axioms = a.axioms.clone();
    let right_axioms = b.axioms.clone();
    let left = move |i: u64| {
        left_axioms(i).map(|f| implies(selector(), tag_formula(&f, true)))
    };
    let right = move |i: u64| {
        right_axioms(i).map(|f| implies(not(selector()), tag_formula(&f, false)))
    };
    let stream = interleave(Arc::new(left), Arc::new(right));
    TheoryPresentation::new(
        &format!("({} oplus {})", a.name, b.name),
        signature,
        stream,
    )
}

/// The interpretability supremum: the disjoint signature sum plus unary
/// partition predicates; the partition axioms come first, then the two
/// axiom streams relativized to their own side, interleaved.
pub fn supremum(a: &TheoryPresentation, b: &TheoryPresentation) -> TheoryPresentation {
    let signature = {
        let mut sig = tag_signature(&a.signature, true);
        for (name, arity) in tag_signature(&b.signature, false).relations() {
            sig = sig.with_relation(name, arity);
        }
        for (name, arity) in tag_signature(&b.signature, false).functions() {
            sig = sig.with_function(name, arity);
        }
        sig.with_relation("P0", 1).with_relation("P1", 1)
    };
    let p0 = rel("P0", vec![var("x")]);
    let p1 = rel("P1", vec![var("x")]);
    let partition = vec![
        folog::forall("x", folog::or(p0.clone(), p1.clone())),
        folog::forall("x", not(folog::and(p0.clone(), p1.clone()))),
    ];
    let left_axioms = a.axioms.clone();
    let right_axioms = b.axioms.clone();
    let left = move |i: u64| {
        left_axioms(i).map(|f| relativize(&tag_formula(&f, true), &rel("P0", vec![var("x")])))
    };
    let right = move |i: u64| {
        right_axioms(i).map(|f| relativize(&tag_formula(&f, false), &rel("P1", vec![var("x")])))
    };
    let stream = interleave(Arc::new(left), Arc::new(right));
    TheoryPresentation::new(
        &format!("({} otimes {})", a.name, b.name),
        signature,
        move |i| {
            if i < 2 {
                partition.get(i as usize).cloned()
            } else {
                stream(i - 2)
            }
        },
    )
}

/// Split a sentence set over the infimum signature into its two component
/// sets: the sentences whose guarded forms it contains.
pub fn oplus_split(x: &SentenceSetOracle) -> (SentenceSetOracle, SentenceSetOracle) {
    let x0 = x.clone();
    let c0 = SentenceSetOracle::new(&format!("{}/left", x.label()), move |f| {
        x0.decide(&implies(selector(), tag_formula(f, true)))
    });
    let x1 = x.clone();
    let c1 = SentenceSetOracle::new(&format!("{}/right", x.label()), move |f| {
        x1.decide(&implies(not(selector()), tag_formula(f, false)))
    });
    (c0, c1)
}

/// Pull a sentence set back along a translation: the set of sentences whose
/// translations it contains. Sentences outside the source language are
/// never members.
pub fn pullback(
    x: &SentenceSetOracle,
    translation: &Translation,
) -> Result<SentenceSetOracle, TranslateError> {
    translation.validate()?;
    let x = x.clone();
    let translation = translation.clone();
    let label = format!("{}^I", x.label());
    Ok(SentenceSetOracle::new(&label, move |f| {
        match translate(f, &translation) {
            Ok(translated) => x.decide(&translated),
            Err(_) => false,
        }
    }))
}

/// Kinds of closure a probed set can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    Conjunction,
    Deduction,
}

/// Result of a bounded closure probe.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeResult {
    Pass,
    Violation {
        kind: ClosureKind,
        witnesses: Vec<Formula>,
    },
}

/// Check conjunction closure and fuel-bounded deduction closure on a finite
/// sample set. Passing is evidence, not proof.
pub fn closure_probe(
    x: &SentenceSetOracle,
    samples: &[Formula],
    fuel: Fuel,
) -> ProbeResult {
    for a in samples {
        if !x.decide(a) {
            continue;
        }
        for b in samples {
            if !x.decide(b) {
                continue;
            }
            let conjunction = folog::and(a.clone(), b.clone());
            if !x.decide(&conjunction) {
                return ProbeResult::Violation {
                    kind: ClosureKind::Conjunction,
                    witnesses: vec![a.clone(), b.clone(), conjunction],
                };
            }
        }
    }
    for a in samples {
        if !x.decide(a) {
            continue;
        }
        let signature = infer_signature(std::slice::from_ref(a)).unwrap_or_default();
        let premise =
            TheoryPresentation::finite("premise", signature, vec![a.clone()]);
        let derived = crate::pvx::enum_theorems(&premise, fuel);
        for b in samples {
            if derived.iter().any(|d| d.conclusion == *b) && !x.decide(b) {
                return ProbeResult::Violation {
                    kind: ClosureKind::Deduction,
                    witnesses: vec![a.clone(), b.clone()],
                };
            }
        }
    }
    ProbeResult::Pass
}

/// Reconstruct the minimal signature a set of formulas lives in; fails on
/// inconsistent arities.
pub fn infer_signature(formulas: &[Formula]) -> Option<Signature> {
    use std::collections::BTreeMap;
    let mut relations: BTreeMap<String, usize> = BTreeMap::new();
    let mut functions: BTreeMap<String, usize> = BTreeMap::new();
    fn walk_term(
        t: &Term,
        functions: &mut BTreeMap<String, usize>,
    ) -> Option<()> {
        if let Term::App(name, args) = t {
            if *functions.entry(name.clone()).or_insert(args.len()) != args.len() {
                return None;
            }
            for arg in args {
                walk_term(arg, functions)?;
            }
        }
        Some(())
    }
    fn walk(
        f: &Formula,
        relations: &mut BTreeMap<String, usize>,
        functions: &mut BTreeMap<String, usize>,
    ) -> Option<()> {
        match f {
            Formula::Eq(a, b) => {
                walk_term(a, functions)?;
                walk_term(b, functions)
            }
            Formula::Rel(name, args) => {
                if *relations.entry(name.clone()).or_insert(args.len()) != args.len() {
                    return None;
                }
                args.iter().try_for_each(|t| walk_term(t, functions))
            }
            Formula::Not(a) => walk(a, relations, functions),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                walk(a, relations, functions)?;
                walk(b, relations, functions)
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => walk(a, relations, functions),
        }
    }
    for f in formulas {
        walk(f, &mut relations, &mut functions)?;
    }
    let mut sig = Signature::new();
    for (name, arity) in relations {
        sig = sig.with_relation(&name, arity);
    }
    for (name, arity) in functions {
        sig = sig.with_function(&name, arity);
    }
    Some(sig)
}

// ---------------------------------------------------------------------------
// Theory files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThyError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: unknown scheme {name}")]
    UnknownScheme { line: usize, name: String },
    #[error("{0}")]
    Body(#[from] ParseError),
}

/// Built-in schemes nameable from a theory file.
fn builtin_theory(name: &str) -> Option<TheoryPresentation> {
    match name {
        "Q" => Some(TheoryPresentation::finite(
            "Q",
            folog::sig_q(),
            folog::axioms_q(),
        )),
        "R" => Some(TheoryPresentation::new("R", folog::sig_r(), r_stream)),
        "J" => Some(TheoryPresentation::new("J", folog::sig_e(), |i| {
            Some(folog::j_axiom(i))
        })),
        "VS" => Some(TheoryPresentation::new("VS", folog::sig_vs(), |i| {
            Some(folog::axioms_vs(i))
        })),
        _ => None,
    }
}

/// Stream the R scheme instances by diagonal blocks: block `d` emits every
/// instance whose largest numeral parameter is exactly `d`, scheme-major.
fn r_stream(index: u64) -> Option<Formula> {
    let mut emitted = 0u64;
    for d in 0u64.. {
        let block = axioms_r_block(d);
        for f in block {
            if emitted == index {
                return Some(f);
            }
            emitted += 1;
        }
    }
    unreachable!()
}

fn axioms_r_block(d: u64) -> Vec<Formula> {
    let all = folog::axioms_r(d);
    if d == 0 {
        return all;
    }
    let smaller = folog::axioms_r(d - 1);
    all.into_iter().filter(|f| !smaller.contains(f)).collect()
}

/// Convenience constructors for the built-in presentations.
pub fn theory_q() -> TheoryPresentation {
    builtin_theory("Q").unwrap()
}

pub fn theory_r() -> TheoryPresentation {
    builtin_theory("R").unwrap()
}

pub fn theory_j() -> TheoryPresentation {
    builtin_theory("J").unwrap()
}

pub fn theory_vs() -> TheoryPresentation {
    builtin_theory("VS").unwrap()
}

/// Parse a theory file: `sig` header lines, optional `scheme` lines naming
/// built-in generators, `name` line, and axiom s-expressions. Listed axioms
/// come before the scheme stream.
pub fn parse_thy(text: &str) -> Result<TheoryPresentation, ThyError> {
    let mut sig = Signature::new();
    let mut name = String::from("theory");
    let mut scheme: Option<TheoryPresentation> = None;
    let mut body = String::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("sig ") {
            parse_signature_items(rest, &mut sig).map_err(|source| ThyError::Parse {
                line: line_no + 1,
                source,
            })?;
        } else if let Some(rest) = line.strip_prefix("scheme ") {
            let scheme_name = rest.trim();
            scheme = Some(builtin_theory(scheme_name).ok_or_else(|| {
                ThyError::UnknownScheme {
                    line: line_no + 1,
                    name: scheme_name.to_string(),
                }
            })?);
        } else if let Some(rest) = line.strip_prefix("name ") {
            name = rest.trim().to_string();
        } else {
            body.push_str(raw);
            body.push('\n');
        }
    }
    let mut full_sig = sig.clone();
    if let Some(s) = &scheme {
        for (n, a) in s.signature.relations() {
            if full_sig.relation_arity(n).is_none() {
                full_sig = full_sig.with_relation(n, a);
            }
        }
        for (n, a) in s.signature.functions() {
            if full_sig.function_arity(n).is_none() {
                full_sig = full_sig.with_function(n, a);
            }
        }
        if name == "theory" {
            name = s.name.clone();
        }
    }
    let listed = parse_formulas(&body, &full_sig)?;
    let listed_len = listed.len() as u64;
    let generator = move |i: u64| {
        if i < listed_len {
            listed.get(i as usize).cloned()
        } else {
            scheme.as_ref().and_then(|s| s.axiom(i - listed_len))
        }
    };
    Ok(TheoryPresentation::new(&name, full_sig, generator))
}

#[cfg(test)]
mod tests;
