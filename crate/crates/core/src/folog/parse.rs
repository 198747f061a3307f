//! S-expression surface syntax.
//!
//! ```text
//! formula := (forall v f) | (exists v f) | (-> f f) | (and f f) | (or f f)
//!          | (not f) | (= t t) | (<relname> t*)
//! term    := v | (<fnname> t*)
//! ```
//!
//! Names are resolved against a signature: in formula position a head symbol
//! must be a declared relation, in term position a declared function. Bare
//! symbols in term position are variables.

use super::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Symbol(String),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '(' => {
                tokens.push((Token::Open, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::Close, i));
                i += 1;
            }
            ';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c == '(' || c == ')' || c == ';' || c.is_whitespace() {
                        break;
                    }
                    i += 1;
                }
                tokens.push((Token::Symbol(text[start..i].to_string()), start));
            }
        }
    }
    Ok(tokens)
}

/// Generic s-expression tree with source positions.
#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn position(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn parse_sexp(tokens: &[(Token, usize)], at: usize) -> Result<(Sexp, usize), ParseError> {
    match tokens.get(at) {
        None => err(usize::MAX, "unexpected end of input"),
        Some((Token::Symbol(s), pos)) => Ok((Sexp::Atom(s.clone(), *pos), at + 1)),
        Some((Token::Open, pos)) => {
            let mut items = Vec::new();
            let mut i = at + 1;
            loop {
                match tokens.get(i) {
                    None => return err(*pos, "unclosed parenthesis"),
                    Some((Token::Close, _)) => return Ok((Sexp::List(items, *pos), i + 1)),
                    _ => {
                        let (item, next) = parse_sexp(tokens, i)?;
                        items.push(item);
                        i = next;
                    }
                }
            }
        }
        Some((Token::Close, pos)) => err(*pos, "unexpected )"),
    }
}

fn sexp_of(text: &str) -> Result<Sexp, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return err(0, "empty input");
    }
    let (sexp, next) = parse_sexp(&tokens, 0)?;
    if next != tokens.len() {
        return err(tokens[next].1, "trailing input");
    }
    Ok(sexp)
}

fn term_of(sexp: &Sexp, sig: &Signature) -> Result<Term, ParseError> {
    match sexp {
        Sexp::Atom(name, _) => Ok(Term::Var(name.clone())),
        Sexp::List(items, pos) => {
            let Some(Sexp::Atom(head, head_pos)) = items.first() else {
                return err(*pos, "expected function application");
            };
            let Some(arity) = sig.function_arity(head) else {
                return err(*head_pos, format!("unknown function {head}"));
            };
            if items.len() - 1 != arity {
                return err(
                    *head_pos,
                    format!("function {head} expects {arity} arguments, got {}", items.len() - 1),
                );
            }
            let args = items[1..]
                .iter()
                .map(|s| term_of(s, sig))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::App(head.clone(), args))
        }
    }
}

fn formula_of(sexp: &Sexp, sig: &Signature) -> Result<Formula, ParseError> {
    let Sexp::List(items, pos) = sexp else {
        return err(sexp.position(), "expected a formula (a parenthesised list)");
    };
    let Some(Sexp::Atom(head, head_pos)) = items.first() else {
        return err(*pos, "expected a formula head symbol");
    };
    let arity_err = |expected: usize| -> Result<Formula, ParseError> {
        err(
            *head_pos,
            format!("{head} expects {expected} arguments, got {}", items.len() - 1),
        )
    };
    match head.as_str() {
        "forall" | "exists" => {
            if items.len() != 3 {
                return arity_err(2);
            }
            let Sexp::Atom(v, _) = &items[1] else {
                return err(items[1].position(), "expected a variable");
            };
            let body = formula_of(&items[2], sig)?;
            Ok(if head == "forall" {
                Formula::Forall(v.clone(), Box::new(body))
            } else {
                Formula::Exists(v.clone(), Box::new(body))
            })
        }
        "not" => {
            if items.len() != 2 {
                return arity_err(1);
            }
            Ok(Formula::Not(Box::new(formula_of(&items[1], sig)?)))
        }
        "and" | "or" | "->" => {
            if items.len() != 3 {
                return arity_err(2);
            }
            let a = Box::new(formula_of(&items[1], sig)?);
            let b = Box::new(formula_of(&items[2], sig)?);
            Ok(match head.as_str() {
                "and" => Formula::And(a, b),
                "or" => Formula::Or(a, b),
                _ => Formula::Implies(a, b),
            })
        }
        "=" => {
            if items.len() != 3 {
                return arity_err(2);
            }
            Ok(Formula::Eq(
                term_of(&items[1], sig)?,
                term_of(&items[2], sig)?,
            ))
        }
        name => {
            let Some(arity) = sig.relation_arity(name) else {
                return err(*head_pos, format!("unknown relation {name}"));
            };
            if items.len() - 1 != arity {
                return err(
                    *head_pos,
                    format!("relation {name} expects {arity} arguments, got {}", items.len() - 1),
                );
            }
            let args = items[1..]
                .iter()
                .map(|s| term_of(s, sig))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Formula::Rel(name.to_string(), args))
        }
    }
}

/// Parse one formula against a signature.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    formula_of(&sexp_of(text)?, sig)
}

/// Parse a whitespace-separated sequence of formulas.
pub fn parse_formulas(text: &str, sig: &Signature) -> Result<Vec<Formula>, ParseError> {
    let tokens = tokenize(text)?;
    let mut out = Vec::new();
    let mut at = 0;
    while at < tokens.len() {
        let (sexp, next) = parse_sexp(&tokens, at)?;
        out.push(formula_of(&sexp, sig)?);
        at = next;
    }
    Ok(out)
}

/// Parse one term against a signature.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    term_of(&sexp_of(text)?, sig)
}

/// Parse `name/arity` items from a signature header line body, classifying
/// by the leading-letter convention.
pub fn parse_signature_items(body: &str, sig: &mut Signature) -> Result<(), ParseError> {
    for item in body.split_whitespace() {
        let Some((name, arity)) = item.split_once('/') else {
            return err(0, format!("expected name/arity, got {item}"));
        };
        let arity: usize = arity
            .parse()
            .map_err(|_| ParseError {
                position: 0,
                message: format!("bad arity in {item}"),
            })?;
        if super::is_relation_name(name) {
            *sig = std::mem::take(sig).with_relation(name, arity);
        } else {
            *sig = std::mem::take(sig).with_function(name, arity);
        }
    }
    Ok(())
}
