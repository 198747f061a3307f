//! Translations between first-order languages, relativization, and the
//! proof obligations that turn a translation into an interpretation.

use super::subst::{all_vars, fresh_var, free_vars, substitute_many};
use super::{
    and, conj_all, eq, exists, forall, implies, var, Formula, Signature, SignatureError, Term,
};
use std::collections::{BTreeMap, BTreeSet};

/// The canonical parameter variable of mapped formulas: a formula assigned
/// to a k-ary symbol has its free variables among `x0 … x(k−1)`.
pub fn param_var(i: usize) -> String {
    format!("x{i}")
}

/// A one-dimensional, parameter-free, one-piece translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub source: Signature,
    pub target: Signature,
    /// Domain formula with free variable `x0`.
    pub domain: Formula,
    /// Images of the source relations and of `=` (key `"="`), arity-many
    /// parameters each.
    pub relation_map: BTreeMap<String, Formula>,
    /// Images of the source functions, one extra parameter for the value.
    pub function_map: BTreeMap<String, Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("formula is not over the source signature: {0}")]
    Source(#[from] SignatureError),
    #[error("translation is missing an image for {symbol}")]
    MissingImage { symbol: String },
    #[error("image of {symbol} uses variables outside its parameters: {stray:?}")]
    StrayVariables { symbol: String, stray: Vec<String> },
    #[error("image of {symbol} is not over the target signature: {source}")]
    Target {
        symbol: String,
        #[source]
        source: SignatureError,
    },
    #[error("domain formula must have exactly the free variable x0")]
    BadDomain,
}

impl Translation {
    /// Check well-formedness: every image lives in the target signature with
    /// free variables inside its parameter list, and every source symbol
    /// (plus equality) has an image.
    pub fn validate(&self) -> Result<(), TranslateError> {
        let check_image = |symbol: &str, formula: &Formula, arity: usize| {
            self.target
                .check_formula(formula)
                .map_err(|source| TranslateError::Target {
                    symbol: symbol.to_string(),
                    source,
                })?;
            let params: BTreeSet<String> = (0..arity).map(param_var).collect();
            let stray: Vec<String> = free_vars(formula)
                .into_iter()
                .filter(|v| !params.contains(v))
                .collect();
            if !stray.is_empty() {
                return Err(TranslateError::StrayVariables {
                    symbol: symbol.to_string(),
                    stray,
                });
            }
            Ok(())
        };
        check_image("δ", &self.domain, 1).map_err(|e| match e {
            TranslateError::StrayVariables { .. } => TranslateError::BadDomain,
            other => other,
        })?;
        let eq_image = self
            .relation_map
            .get("=")
            .ok_or_else(|| TranslateError::MissingImage {
                symbol: "=".into(),
            })?;
        check_image("=", eq_image, 2)?;
        for (name, arity) in self.source.relations() {
            let image = self
                .relation_map
                .get(name)
                .ok_or_else(|| TranslateError::MissingImage {
                    symbol: name.to_string(),
                })?;
            check_image(name, image, arity)?;
        }
        for (name, arity) in self.source.functions() {
            let image = self
                .function_map
                .get(name)
                .ok_or_else(|| TranslateError::MissingImage {
                    symbol: name.to_string(),
                })?;
            check_image(name, image, arity + 1)?;
        }
        Ok(())
    }

    /// Instantiate an image formula at the given argument terms.
    fn apply(&self, image: &Formula, args: &[Term]) -> Formula {
        let map: BTreeMap<String, Term> = args
            .iter()
            .enumerate()
            .map(|(i, t)| (param_var(i), t.clone()))
            .collect();
        substitute_many(image, &map)
    }

    fn domain_at(&self, term: &Term) -> Formula {
        self.apply(&self.domain, std::slice::from_ref(term))
    }
}

/// The identity translation of a signature into itself: trivial domain,
/// every symbol mapped to itself.
pub fn identity_translation(sig: &Signature) -> Translation {
    let x0 = var(&param_var(0));
    let mut relation_map = BTreeMap::new();
    relation_map.insert("=".to_string(), eq(x0.clone(), var(&param_var(1))));
    for (name, arity) in sig.relations() {
        let args = (0..arity).map(|i| var(&param_var(i))).collect();
        relation_map.insert(name.to_string(), Formula::Rel(name.to_string(), args));
    }
    let mut function_map = BTreeMap::new();
    for (name, arity) in sig.functions() {
        let args = (0..arity).map(|i| var(&param_var(i))).collect();
        function_map.insert(
            name.to_string(),
            eq(Term::App(name.to_string(), args), var(&param_var(arity))),
        );
    }
    Translation {
        source: sig.clone(),
        target: sig.clone(),
        domain: eq(x0.clone(), x0),
        relation_map,
        function_map,
    }
}

/// Bound every quantifier by a unary guard: `∀x ψ ↦ ∀x(guard(x) → ψ′)` and
/// dually for `∃`. Atoms are untouched.
pub fn relativize(formula: &Formula, guard: &Formula) -> Formula {
    let guard_fv = free_vars(guard);
    assert_eq!(guard_fv.len(), 1, "guard must have exactly one free variable");
    let hole = guard_fv.into_iter().next().unwrap();
    let guard_at = |v: &str| {
        let mut map = BTreeMap::new();
        map.insert(hole.clone(), var(v));
        substitute_many(guard, &map)
    };
    fn go(f: &Formula, guard_at: &dyn Fn(&str) -> Formula) -> Formula {
        match f {
            Formula::Eq(..) | Formula::Rel(..) => f.clone(),
            Formula::Not(inner) => super::not(go(inner, guard_at)),
            Formula::And(a, b) => and(go(a, guard_at), go(b, guard_at)),
            Formula::Or(a, b) => super::or(go(a, guard_at), go(b, guard_at)),
            Formula::Implies(a, b) => implies(go(a, guard_at), go(b, guard_at)),
            Formula::Forall(v, inner) => {
                forall(v, implies(guard_at(v), go(inner, guard_at)))
            }
            Formula::Exists(v, inner) => exists(v, and(guard_at(v), go(inner, guard_at))),
        }
    }
    go(formula, &guard_at)
}

/// Flatten one atom so that function symbols only occur as definitions
/// `F(vars) = fresh`, then map it through the translation. Introduced
/// witnesses are guarded by the domain formula, innermost first.
fn translate_atom(
    formula: &Formula,
    translation: &Translation,
    used: &mut BTreeSet<String>,
) -> Formula {
    // Extract every function application bottom-up, replacing it by a fresh
    // variable with a recorded definition.
    fn extract(
        term: &Term,
        defs: &mut Vec<(String, String, Vec<Term>)>,
        used: &mut BTreeSet<String>,
    ) -> Term {
        match term {
            Term::Var(_) => term.clone(),
            Term::App(name, args) => {
                let flat_args: Vec<Term> =
                    args.iter().map(|t| extract(t, defs, used)).collect();
                let fresh = fresh_var("w", used);
                used.insert(fresh.clone());
                defs.push((fresh.clone(), name.clone(), flat_args));
                Term::Var(fresh)
            }
        }
    }

    let mut defs = Vec::new();
    let core = match formula {
        Formula::Eq(a, b) => {
            let a = extract(a, &mut defs, used);
            let b = extract(b, &mut defs, used);
            translation.apply(&translation.relation_map["="], &[a, b])
        }
        Formula::Rel(name, args) => {
            let flat: Vec<Term> = args.iter().map(|t| extract(t, &mut defs, used)).collect();
            translation.apply(&translation.relation_map[name], &flat)
        }
        _ => unreachable!("translate_atom on non-atom"),
    };
    // Wrap definitions outermost-last so each witness is in scope for the
    // atoms that mention it.
    defs.into_iter().rev().fold(core, |acc, (v, fname, args)| {
        let mut image_args = args;
        image_args.push(var(&v));
        let def = translation.apply(&translation.function_map[&fname], &image_args);
        exists(&v, and(translation.domain_at(&var(&v)), and(def, acc)))
    })
}

fn translate_core(
    formula: &Formula,
    translation: &Translation,
    used: &mut BTreeSet<String>,
) -> Formula {
    match formula {
        Formula::Eq(..) | Formula::Rel(..) => translate_atom(formula, translation, used),
        Formula::Not(inner) => super::not(translate_core(inner, translation, used)),
        Formula::And(a, b) => and(
            translate_core(a, translation, used),
            translate_core(b, translation, used),
        ),
        Formula::Or(a, b) => super::or(
            translate_core(a, translation, used),
            translate_core(b, translation, used),
        ),
        Formula::Implies(a, b) => implies(
            translate_core(a, translation, used),
            translate_core(b, translation, used),
        ),
        Formula::Forall(v, inner) => forall(
            v,
            implies(
                translation.domain_at(&var(v)),
                translate_core(inner, translation, used),
            ),
        ),
        Formula::Exists(v, inner) => exists(
            v,
            and(
                translation.domain_at(&var(v)),
                translate_core(inner, translation, used),
            ),
        ),
    }
}

/// The translation `φ ↦ φ^I`: function atoms are flattened and mapped,
/// relation atoms and equality mapped, quantifiers and free variables
/// relativized to the domain, bound variables renamed where needed.
pub fn translate(formula: &Formula, translation: &Translation) -> Result<Formula, TranslateError> {
    translation.source.check_formula(formula)?;
    let mut used: BTreeSet<String> = all_vars(formula);
    for image in translation
        .relation_map
        .values()
        .chain(translation.function_map.values())
        .chain(std::iter::once(&translation.domain))
    {
        used.extend(all_vars(image));
    }
    let core = translate_core(formula, translation, &mut used);
    let fv = free_vars(formula);
    if fv.is_empty() {
        return Ok(core);
    }
    let mut guards: Vec<Formula> = fv.iter().map(|v| translation.domain_at(&var(v))).collect();
    guards.push(core);
    Ok(conj_all(guards))
}

/// Equality axioms of a signature: reflexivity, symmetry, transitivity, and
/// one congruence sentence per symbol.
pub fn equality_axioms(sig: &Signature) -> Vec<Formula> {
    let mut out = vec![
        forall("v0", eq(var("v0"), var("v0"))),
        forall(
            "v0",
            forall(
                "v1",
                implies(eq(var("v0"), var("v1")), eq(var("v1"), var("v0"))),
            ),
        ),
        forall(
            "v0",
            forall(
                "v1",
                forall(
                    "v2",
                    implies(
                        and(eq(var("v0"), var("v1")), eq(var("v1"), var("v2"))),
                        eq(var("v0"), var("v2")),
                    ),
                ),
            ),
        ),
    ];
    let pairwise = |arity: usize| -> Option<Formula> {
        let parts: Vec<Formula> = (0..arity)
            .map(|i| eq(var(&format!("v{i}")), var(&format!("u{i}"))))
            .collect();
        (!parts.is_empty()).then(|| conj_all(parts))
    };
    let close = |mut f: Formula, arity: usize| -> Formula {
        for i in (0..arity).rev() {
            f = forall(&format!("u{i}"), f);
        }
        for i in (0..arity).rev() {
            f = forall(&format!("v{i}"), f);
        }
        f
    };
    for (name, arity) in sig.relations() {
        if arity == 0 {
            continue;
        }
        let vs: Vec<Term> = (0..arity).map(|i| var(&format!("v{i}"))).collect();
        let us: Vec<Term> = (0..arity).map(|i| var(&format!("u{i}"))).collect();
        let body = implies(
            and(
                pairwise(arity).unwrap(),
                Formula::Rel(name.to_string(), vs),
            ),
            Formula::Rel(name.to_string(), us),
        );
        out.push(close(body, arity));
    }
    for (name, arity) in sig.functions() {
        if arity == 0 {
            continue;
        }
        let vs: Vec<Term> = (0..arity).map(|i| var(&format!("v{i}"))).collect();
        let us: Vec<Term> = (0..arity).map(|i| var(&format!("u{i}"))).collect();
        let body = implies(
            pairwise(arity).unwrap(),
            eq(
                Term::App(name.to_string(), vs),
                Term::App(name.to_string(), us),
            ),
        );
        out.push(close(body, arity));
    }
    out
}

/// The proof obligations making `I` an interpretation of the axioms:
/// nonemptiness of the domain, totality and functionality of each function
/// image, translated equality axioms, then the translated axioms.
pub fn interpretation_obligations(
    axioms: &[Formula],
    translation: &Translation,
) -> Result<Vec<Formula>, TranslateError> {
    translation.validate()?;
    let mut out = Vec::new();
    let x0 = var(&param_var(0));
    out.push(exists(&param_var(0), translation.domain_at(&x0)));
    for (name, arity) in translation.source.functions() {
        let image = &translation.function_map[name];
        let args: Vec<Term> = (0..arity).map(|i| var(&param_var(i))).collect();
        let value = var("y");
        let mut app_args = args.clone();
        app_args.push(value.clone());
        let applied = translation.apply(image, &app_args);
        let guards: Vec<Formula> = args.iter().map(|a| translation.domain_at(a)).collect();
        let total_body = exists(
            "y",
            and(translation.domain_at(&value), applied.clone()),
        );
        let mut total = if guards.is_empty() {
            total_body
        } else {
            implies(conj_all(guards.clone()), total_body)
        };
        for i in (0..arity).rev() {
            total = forall(&param_var(i), total);
        }
        out.push(total);

        // Functionality modulo the equality image: needed for translated
        // function atoms to be coherent.
        let value2 = var("y2");
        let mut app_args2 = args.clone();
        app_args2.push(value2.clone());
        let applied2 = translation.apply(image, &app_args2);
        let eq_image = translation.apply(
            &translation.relation_map["="],
            &[value.clone(), value2.clone()],
        );
        let mut hyp = vec![
            translation.domain_at(&value),
            translation.domain_at(&value2),
            applied,
            applied2,
        ];
        let mut all_hyp = guards;
        all_hyp.append(&mut hyp);
        let mut functional = forall("y", forall("y2", implies(conj_all(all_hyp), eq_image)));
        for i in (0..arity).rev() {
            functional = forall(&param_var(i), functional);
        }
        out.push(functional);
    }
    for axiom in equality_axioms(&translation.source) {
        out.push(translate(&axiom, translation)?);
    }
    for axiom in axioms {
        out.push(translate(axiom, translation)?);
    }
    Ok(out)
}
