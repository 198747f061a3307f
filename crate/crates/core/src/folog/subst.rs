//! Free variables, fresh names, capture-avoiding substitution, and symbol
//! renaming.

use super::{Formula, Term};
use std::collections::{BTreeMap, BTreeSet};

pub fn term_vars(term: &Term, out: &mut BTreeSet<String>) {
    match term {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::App(_, args) => args.iter().for_each(|t| term_vars(t, out)),
    }
}

pub fn free_vars(formula: &Formula) -> BTreeSet<String> {
    fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match f {
            Formula::Eq(a, b) => {
                let mut vars = BTreeSet::new();
                term_vars(a, &mut vars);
                term_vars(b, &mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Rel(_, args) => {
                let mut vars = BTreeSet::new();
                args.iter().for_each(|t| term_vars(t, &mut vars));
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(inner) => go(inner, bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
                bound.push(v.clone());
                go(inner, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(formula, &mut Vec::new(), &mut out);
    out
}

/// All variable names occurring anywhere (free or bound).
pub fn all_vars(formula: &Formula) -> BTreeSet<String> {
    fn go(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Eq(a, b) => {
                term_vars(a, out);
                term_vars(b, out);
            }
            Formula::Rel(_, args) => args.iter().for_each(|t| term_vars(t, out)),
            Formula::Not(inner) => go(inner, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
                out.insert(v.clone());
                go(inner, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(formula, &mut out);
    out
}

/// A name based on `base` that avoids the given set.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for k in 0u64.. {
        let candidate = format!("{base}_{k}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

fn substitute_term(term: &Term, map: &BTreeMap<String, Term>) -> Term {
    match term {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| term.clone()),
        Term::App(name, args) => Term::App(
            name.clone(),
            args.iter().map(|t| substitute_term(t, map)).collect(),
        ),
    }
}

/// Simultaneous capture-avoiding substitution.
pub fn substitute_many(formula: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    // Drop bindings for variables not free in the formula: they cannot act
    // and would only force needless renamings.
    let fv = free_vars(formula);
    let live: BTreeMap<String, Term> = map
        .iter()
        .filter(|(v, _)| fv.contains(*v))
        .map(|(v, t)| (v.clone(), t.clone()))
        .collect();
    if live.is_empty() {
        return formula.clone();
    }
    match formula {
        Formula::Eq(a, b) => Formula::Eq(substitute_term(a, &live), substitute_term(b, &live)),
        Formula::Rel(name, args) => Formula::Rel(
            name.clone(),
            args.iter().map(|t| substitute_term(t, &live)).collect(),
        ),
        Formula::Not(inner) => Formula::Not(Box::new(substitute_many(inner, &live))),
        Formula::And(a, b) => Formula::And(
            Box::new(substitute_many(a, &live)),
            Box::new(substitute_many(b, &live)),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(substitute_many(a, &live)),
            Box::new(substitute_many(b, &live)),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(substitute_many(a, &live)),
            Box::new(substitute_many(b, &live)),
        ),
        Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
            let mut inner_map = live.clone();
            inner_map.remove(v);
            // Rename the binder when some replacement term would capture it.
            let mut incoming = BTreeSet::new();
            for t in inner_map.values() {
                term_vars(t, &mut incoming);
            }
            let (binder, body) = if incoming.contains(v) {
                let mut avoid: BTreeSet<String> = all_vars(inner).into_iter().collect();
                avoid.extend(incoming.iter().cloned());
                avoid.extend(inner_map.keys().cloned());
                let fresh = fresh_var(v, &avoid);
                let mut rename = BTreeMap::new();
                rename.insert(v.clone(), Term::Var(fresh.clone()));
                (fresh, substitute_many(inner, &rename))
            } else {
                (v.clone(), (**inner).clone())
            };
            let body = substitute_many(&body, &inner_map);
            match formula {
                Formula::Forall(..) => Formula::Forall(binder, Box::new(body)),
                _ => Formula::Exists(binder, Box::new(body)),
            }
        }
    }
}

/// Capture-avoiding substitution of one variable.
pub fn substitute(formula: &Formula, variable: &str, term: &Term) -> Formula {
    let mut map = BTreeMap::new();
    map.insert(variable.to_string(), term.clone());
    substitute_many(formula, &map)
}

/// Alpha-equivalence: equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    fn term_eq(a: &Term, b: &Term, left: &BTreeMap<String, u64>, right: &BTreeMap<String, u64>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => match (left.get(x), right.get(y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, left, right))
            }
            _ => false,
        }
    }
    fn go(
        a: &Formula,
        b: &Formula,
        left: &mut BTreeMap<String, u64>,
        right: &mut BTreeMap<String, u64>,
        depth: u64,
    ) -> bool {
        match (a, b) {
            (Formula::Eq(x1, y1), Formula::Eq(x2, y2)) => {
                term_eq(x1, x2, left, right) && term_eq(y1, y2, left, right)
            }
            (Formula::Rel(r, xs), Formula::Rel(s, ys)) => {
                r == s
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, left, right))
            }
            (Formula::Not(x), Formula::Not(y)) => go(x, y, left, right, depth),
            (Formula::And(x1, y1), Formula::And(x2, y2))
            | (Formula::Or(x1, y1), Formula::Or(x2, y2))
            | (Formula::Implies(x1, y1), Formula::Implies(x2, y2)) => {
                go(x1, x2, left, right, depth) && go(y1, y2, left, right, depth)
            }
            (Formula::Forall(v, x), Formula::Forall(w, y))
            | (Formula::Exists(v, x), Formula::Exists(w, y)) => {
                let old_l = left.insert(v.clone(), depth);
                let old_r = right.insert(w.clone(), depth);
                let result = go(x, y, left, right, depth + 1);
                match old_l {
                    Some(d) => {
                        left.insert(v.clone(), d);
                    }
                    None => {
                        left.remove(v);
                    }
                }
                match old_r {
                    Some(d) => {
                        right.insert(w.clone(), d);
                    }
                    None => {
                        right.remove(w);
                    }
                }
                result
            }
            _ => false,
        }
    }
    go(a, b, &mut BTreeMap::new(), &mut BTreeMap::new(), 0)
}

fn rename_symbols_term(term: &Term, functions: &BTreeMap<String, String>) -> Term {
    match term {
        Term::Var(v) => Term::Var(v.clone()),
        Term::App(name, args) => Term::App(
            functions.get(name).cloned().unwrap_or_else(|| name.clone()),
            args.iter()
                .map(|t| rename_symbols_term(t, functions))
                .collect(),
        ),
    }
}

/// Rename relation and function symbols (variables untouched).
pub fn rename_symbols(
    formula: &Formula,
    relations: &BTreeMap<String, String>,
    functions: &BTreeMap<String, String>,
) -> Formula {
    match formula {
        Formula::Eq(a, b) => Formula::Eq(
            rename_symbols_term(a, functions),
            rename_symbols_term(b, functions),
        ),
        Formula::Rel(name, args) => Formula::Rel(
            relations.get(name).cloned().unwrap_or_else(|| name.clone()),
            args.iter()
                .map(|t| rename_symbols_term(t, functions))
                .collect(),
        ),
        Formula::Not(inner) => Formula::Not(Box::new(rename_symbols(inner, relations, functions))),
        Formula::And(a, b) => Formula::And(
            Box::new(rename_symbols(a, relations, functions)),
            Box::new(rename_symbols(b, relations, functions)),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(rename_symbols(a, relations, functions)),
            Box::new(rename_symbols(b, relations, functions)),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(rename_symbols(a, relations, functions)),
            Box::new(rename_symbols(b, relations, functions)),
        ),
        Formula::Forall(v, inner) => Formula::Forall(
            v.clone(),
            Box::new(rename_symbols(inner, relations, functions)),
        ),
        Formula::Exists(v, inner) => Formula::Exists(
            v.clone(),
            Box::new(rename_symbols(inner, relations, functions)),
        ),
    }
}
