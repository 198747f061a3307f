//! The effectively-weaker-theory construction: an enumeration of all
//! translations into the one-relation language, a fair theorem enumerator
//! with checkable derivations, the strictly increasing bounding function
//! whose range is the recursive set that no consistent literal extension of
//! the base theory can carry an interpretation over, the inseparable pair
//! pushed into that range, and the index-level maps tying everything back
//! to the machine.

mod construction;
mod hilbert;
mod indices;

#[cfg(test)]
mod tests;

pub use construction::{
    big_f, big_f_certificate, build_v, build_weaker, ei_pair_in_x, f_value, t_value, x_member,
    EiPair, TStep, XCertificate,
};
pub use hilbert::{
    check_derivation, enum_theorem_sentences, enum_theorems, DerivationStep, Justification,
    SchemeInstance, Theorem,
};
pub use indices::{h_ei, s_index};

use crate::folog::{
    eq, forall, param_var, rel, ungodel, var, Formula, Signature, Translation,
};
use crate::machine::unpair;
use crate::Nat;
use num_traits::ToPrimitive;

/// An index into the effective enumeration of all translations from a
/// source signature into the one-relation language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationIndex {
    pub i: Nat,
}

/// Component-wise canonical formulas tried before falling back to decoding:
/// small indices decode to useful translations.
fn canonical_components(arity: usize) -> Vec<Formula> {
    let x = |i: usize| var(&param_var(i));
    match arity {
        1 => vec![eq(x(0), x(0)), rel("E", vec![x(0), x(0)])],
        2 => vec![
            rel("E", vec![x(0), x(1)]),
            eq(x(0), x(1)),
            crate::folog::not(rel("E", vec![x(0), x(1)])),
        ],
        3 => vec![rel("E", vec![x(0), x(2)]), eq(x(1), x(2))],
        _ => vec![],
    }
}

fn default_component(arity: usize) -> Formula {
    if arity == 0 {
        forall("x0", eq(var("x0"), var("x0")))
    } else {
        eq(var(&param_var(0)), var(&param_var(0)))
    }
}

/// Decode one component: 0 is the default, small codes pick canonical
/// formulas, larger ones decode a formula code and fall back to the default
/// when it is unusable for the arity.
fn decode_component(code: &Nat, arity: usize) -> Formula {
    if code.to_u64() == Some(0) {
        return default_component(arity);
    }
    let table = canonical_components(arity);
    if let Some(k) = code.to_u64() {
        if (k as usize) <= table.len() {
            return table[(k - 1) as usize].clone();
        }
    }
    let offset = Nat::from(table.len() as u64 + 1);
    let formula_code = code - offset;
    match ungodel(&formula_code) {
        Some(f) if component_ok(&f, arity) => f,
        _ => default_component(arity),
    }
}

fn component_ok(formula: &Formula, arity: usize) -> bool {
    if crate::folog::sig_e().check_formula(formula).is_err() {
        return false;
    }
    let params: std::collections::BTreeSet<String> = (0..arity).map(param_var).collect();
    crate::folog::free_vars(formula)
        .iter()
        .all(|v| params.contains(v))
}

/// The i-th translation from the source signature into the one-relation
/// language. Total and surjective onto well-formed translations: every
/// translation arises from the index built by [`encode_translation`].
pub fn enum_translation(source: &Signature, i: &Nat) -> Translation {
    // One code per component: domain, equality, relations, functions, in
    // signature order. The last component takes the remaining payload.
    let relations: Vec<(String, usize)> = source
        .relations()
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    let functions: Vec<(String, usize)> = source
        .functions()
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    let count = 2 + relations.len() + functions.len();
    let mut codes = Vec::with_capacity(count);
    let mut rest = i.clone();
    for _ in 0..count - 1 {
        let (head, tail) = unpair(&rest);
        codes.push(head);
        rest = tail;
    }
    codes.push(rest);

    let domain = decode_component(&codes[0], 1);
    let mut relation_map = std::collections::BTreeMap::new();
    relation_map.insert("=".to_string(), decode_component(&codes[1], 2));
    for (k, (name, arity)) in relations.iter().enumerate() {
        relation_map.insert(name.clone(), decode_component(&codes[2 + k], *arity));
    }
    let mut function_map = std::collections::BTreeMap::new();
    for (k, (name, arity)) in functions.iter().enumerate() {
        function_map.insert(
            name.clone(),
            decode_component(&codes[2 + relations.len() + k], *arity + 1),
        );
    }
    Translation {
        source: source.clone(),
        target: crate::folog::sig_e(),
        domain,
        relation_map,
        function_map,
    }
}

/// The index of a translation under the enumeration; inverse of
/// [`enum_translation`] up to component decoding.
pub fn encode_translation(translation: &Translation) -> Nat {
    let encode_component = |formula: &Formula, arity: usize| -> Nat {
        let table = canonical_components(arity);
        if *formula == default_component(arity) {
            return Nat::from(0u64);
        }
        if let Some(pos) = table.iter().position(|f| f == formula) {
            return Nat::from(pos as u64 + 1);
        }
        crate::folog::godel(formula) + Nat::from(table.len() as u64 + 1)
    };
    let mut codes = Vec::new();
    codes.push(encode_component(&translation.domain, 1));
    codes.push(encode_component(&translation.relation_map["="], 2));
    for (name, arity) in translation.source.relations() {
        codes.push(encode_component(&translation.relation_map[name], arity));
    }
    for (name, arity) in translation.source.functions() {
        codes.push(encode_component(&translation.function_map[name], arity + 1));
    }
    let mut acc = codes.pop().expect("at least two components");
    while let Some(code) = codes.pop() {
        acc = crate::machine::pair(&code, &acc);
    }
    acc
}
