//! The built-in sample theories: Robinson arithmetic, the R schemes, Vaught
//! set theory, the Janiczak axioms, and the class-size sentences.

use super::{
    and, app, conj_all, disj_all, eq, exists, forall, implies, not, rel, var, Formula, Signature,
    Term,
};

/// Largest `n` for which the class-size sentence is ever materialized as a
/// formula tree; its Gödel code exists for every `n` regardless.
pub const PHI_MATERIALIZE_CAP: u64 = 600;

/// `{zero/0, succ/1, add/2, mul/2}`.
pub fn sig_q() -> Signature {
    Signature::new()
        .with_function("zero", 0)
        .with_function("succ", 1)
        .with_function("add", 2)
        .with_function("mul", 2)
}

/// The Q signature plus the order relation.
pub fn sig_r() -> Signature {
    sig_q().with_relation("Leq", 2)
}

/// `{Mem/2}` for the Vaught scheme.
pub fn sig_vs() -> Signature {
    Signature::new().with_relation("Mem", 2)
}

/// `{E/2}`: one binary relation.
pub fn sig_e() -> Signature {
    Signature::new().with_relation("E", 2)
}

/// The numeral term: `succ` iterated `n` times over `zero`.
pub fn numeral(n: u64) -> Term {
    let mut t = app("zero", vec![]);
    for _ in 0..n {
        t = app("succ", vec![t]);
    }
    t
}

fn succ(t: Term) -> Term {
    app("succ", vec![t])
}

fn add(a: Term, b: Term) -> Term {
    app("add", vec![a, b])
}

fn mul(a: Term, b: Term) -> Term {
    app("mul", vec![a, b])
}

/// The seven axioms of Robinson arithmetic, in order.
pub fn axioms_q() -> Vec<Formula> {
    let (x, y) = (var("x"), var("y"));
    vec![
        // ∀x∀y(Sx = Sy → x = y)
        forall(
            "x",
            forall(
                "y",
                implies(eq(succ(x.clone()), succ(y.clone())), eq(x.clone(), y.clone())),
            ),
        ),
        // ∀x(Sx ≠ 0)
        forall("x", not(eq(succ(x.clone()), numeral(0)))),
        // ∀x(x ≠ 0 → ∃y(x = Sy))
        forall(
            "x",
            implies(
                not(eq(x.clone(), numeral(0))),
                exists("y", eq(x.clone(), succ(y.clone()))),
            ),
        ),
        // ∀x∀y(x + 0 = x)
        forall(
            "x",
            forall("y", eq(add(x.clone(), numeral(0)), x.clone())),
        ),
        // ∀x∀y(x + Sy = S(x + y))
        forall(
            "x",
            forall(
                "y",
                eq(
                    add(x.clone(), succ(y.clone())),
                    succ(add(x.clone(), y.clone())),
                ),
            ),
        ),
        // ∀x(x × 0 = 0)
        forall("x", eq(mul(x.clone(), numeral(0)), numeral(0))),
        // ∀x∀y(x × Sy = x × y + x)
        forall(
            "x",
            forall(
                "y",
                eq(
                    mul(x.clone(), succ(y.clone())),
                    add(mul(x.clone(), y.clone()), x.clone()),
                ),
            ),
        ),
    ]
}

/// All instances of the five R schemes with parameters at most `k`:
/// numeral sums and products, numeral distinctness, bounded-case analysis
/// for the order, and totality of the order against numerals.
pub fn axioms_r(k: u64) -> Vec<Formula> {
    let mut out = Vec::new();
    for m in 0..=k {
        for n in 0..=k {
            out.push(eq(add(numeral(m), numeral(n)), numeral(m + n)));
        }
    }
    for m in 0..=k {
        for n in 0..=k {
            out.push(eq(mul(numeral(m), numeral(n)), numeral(m * n)));
        }
    }
    for m in 0..=k {
        for n in 0..=k {
            if m != n {
                out.push(not(eq(numeral(m), numeral(n))));
            }
        }
    }
    for n in 0..=k {
        let cases = (0..=n).map(|i| eq(var("x"), numeral(i))).collect();
        out.push(forall(
            "x",
            implies(rel("Leq", vec![var("x"), numeral(n)]), disj_all(cases)),
        ));
    }
    for n in 0..=k {
        out.push(forall(
            "x",
            super::or(
                rel("Leq", vec![var("x"), numeral(n)]),
                rel("Leq", vec![numeral(n), var("x")]),
            ),
        ));
    }
    out
}

/// The n-th Vaught axiom: the set `{x_0, …, x_{n−1}}` exists.
pub fn axioms_vs(n: u64) -> Formula {
    let mem_ty = rel("Mem", vec![var("t"), var("y")]);
    let matrix = if n == 0 {
        // Empty disjunction: membership is equivalent to falsity.
        and(
            implies(mem_ty.clone(), not(eq(var("t"), var("t")))),
            implies(not(eq(var("t"), var("t"))), mem_ty),
        )
    } else {
        let cases: Vec<Formula> = (0..n).map(|i| eq(var("t"), var(&format!("x{i}")))).collect();
        let any = disj_all(cases);
        and(
            implies(mem_ty.clone(), any.clone()),
            implies(any, mem_ty),
        )
    };
    let mut f = exists("y", forall("t", matrix));
    for i in (0..n).rev() {
        f = forall(&format!("x{i}"), f);
    }
    f
}

fn e(a: Term, b: Term) -> Formula {
    rel("E", vec![a, b])
}

fn witness(i: u64) -> Term {
    var(&format!("c{i}"))
}

/// "The class of `x` has exactly `m` members", with `m ≥ 1` witnesses
/// `c0 … c(m−1)` related to `x` and covering it.
fn class_size_exactly(x: &Term, m: u64) -> Formula {
    let mut parts = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            parts.push(not(eq(witness(i), witness(j))));
        }
    }
    for i in 0..m {
        parts.push(e(x.clone(), witness(i)));
    }
    let cases: Vec<Formula> = (0..m).map(|i| eq(var("t"), witness(i))).collect();
    parts.push(forall(
        "t",
        implies(e(x.clone(), var("t")), disj_all(cases)),
    ));
    let mut f = conj_all(parts);
    for i in (0..m).rev() {
        f = exists(&format!("c{i}"), f);
    }
    f
}

/// "The class of `x` has at least `m` members".
fn class_size_at_least(x: &Term, m: u64) -> Formula {
    let mut parts = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            parts.push(not(eq(witness(i), witness(j))));
        }
    }
    for i in 0..m {
        parts.push(e(x.clone(), witness(i)));
    }
    let mut f = conj_all(parts);
    for i in (0..m).rev() {
        f = exists(&format!("c{i}"), f);
    }
    f
}

/// One Janiczak axiom by stream position: the three equivalence axioms,
/// then alternating uniqueness-of-size and enough-large-classes instances.
pub fn j_axiom(position: u64) -> Formula {
    match position {
        0 => forall("x", e(var("x"), var("x"))),
        1 => forall(
            "x",
            forall(
                "y",
                implies(e(var("x"), var("y")), e(var("y"), var("x"))),
            ),
        ),
        2 => forall(
            "x",
            forall(
                "y",
                forall(
                    "z",
                    implies(
                        and(e(var("x"), var("y")), e(var("y"), var("z"))),
                        e(var("x"), var("z")),
                    ),
                ),
            ),
        ),
        p => {
            let m = (p - 3) / 2 + 1;
            if (p - 3) % 2 == 0 {
                // At most one class of size exactly m.
                forall(
                    "a",
                    forall(
                        "b",
                        implies(
                            and(
                                class_size_exactly(&var("a"), m),
                                class_size_exactly(&var("b"), m),
                            ),
                            e(var("a"), var("b")),
                        ),
                    ),
                )
            } else {
                // At least m classes with at least m members.
                let mut parts = Vec::new();
                for i in 0..m {
                    for j in (i + 1)..m {
                        parts.push(not(e(
                            var(&format!("k{i}")),
                            var(&format!("k{j}")),
                        )));
                    }
                }
                for i in 0..m {
                    parts.push(class_size_at_least(&var(&format!("k{i}")), m));
                }
                let mut f = conj_all(parts);
                for i in (0..m).rev() {
                    f = exists(&format!("k{i}"), f);
                }
                f
            }
        }
    }
}

/// The equivalence axioms plus the size-uniqueness and large-class
/// instances with parameters at most `n`.
pub fn axioms_j(n: u64) -> Vec<Formula> {
    (0..3 + 2 * n).map(j_axiom).collect()
}

/// The class-size sentence: there is an equivalence class of exactly
/// `n + 1` elements. Quantifier rank `n + 2`.
pub fn phi(n: u64) -> Formula {
    assert!(
        n <= PHI_MATERIALIZE_CAP,
        "phi({n}) exceeds the materialization cap; use folog::phi_code"
    );
    let m = n + 1;
    let mut parts = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            parts.push(and(
                not(eq(witness(i), witness(j))),
                e(witness(i), witness(j)),
            ));
        }
    }
    let cases: Vec<Formula> = (0..m).map(|i| eq(var("t"), witness(i))).collect();
    let coverage = forall(
        "t",
        implies(e(witness(0), var("t")), disj_all(cases)),
    );
    let body = if parts.is_empty() {
        coverage
    } else {
        and(conj_all(parts), coverage)
    };
    let mut f = body;
    for i in (0..m).rev() {
        f = exists(&format!("c{i}"), f);
    }
    f
}

/// Structural recognizer: `Some(n)` iff the formula is exactly the tree
/// built by [`phi`]`(n)`.
pub fn phi_shape(formula: &Formula) -> Option<u64> {
    // Cheap prefilter: a chain of ∃c0 ∃c1 … in our naming scheme.
    let mut depth = 0u64;
    let mut cursor = formula;
    while let Formula::Exists(v, inner) = cursor {
        if *v != format!("c{depth}") {
            return None;
        }
        depth += 1;
        cursor = inner;
    }
    if depth == 0 || depth - 1 > PHI_MATERIALIZE_CAP {
        return None;
    }
    let n = depth - 1;
    (*formula == phi(n)).then_some(n)
}
