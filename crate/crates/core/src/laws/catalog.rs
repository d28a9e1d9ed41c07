//! The axioms, one entry each, and the suites that group them.

use super::expr::*;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const A1: usize = 3;
const A2: usize = 4;
const B1: usize = 5;
const B2: usize = 6;
const X: usize = 7;
const Y: usize = 8;

/// One identity `lhs = rhs` in `arity` free variables. When `balance` is
/// set, that input has the degree of all the others together.
#[derive(Clone, Debug)]
pub struct Law {
    pub id: &'static str,
    pub arity: usize,
    pub balance: Option<usize>,
    pub lhs: Expr,
    pub rhs: Expr,
}

fn law(id: &'static str, arity: usize, lhs: Expr, rhs: Expr) -> Law {
    Law { id, arity, balance: None, lhs, rhs }
}

fn balanced(id: &'static str, slot: usize, lhs: Expr, rhs: Expr) -> Law {
    Law { id, arity: 3, balance: Some(slot), lhs, rhs }
}

fn a() -> Expr {
    v(A)
}
fn b() -> Expr {
    v(B)
}
fn c() -> Expr {
    v(C)
}

/// `Σ body` over `a' ⊗ a'' = Δ̃(a)`.
fn over_a(body: Expr) -> Expr {
    sw(dtil(a()), A1, A2, body)
}

/// `Σ body` over `b' ⊗ b''` from the given half of the coproduct of `b`.
fn over_b(co: fn(Expr) -> Expr, body: Expr) -> Expr {
    sw(co(b()), B1, B2, body)
}

fn over_ab(co: fn(Expr) -> Expr, body: Expr) -> Expr {
    over_a(over_b(co, body))
}

/// Left-hand sides of the two-sided laws on one argument `a`.
fn over(co: fn(Expr) -> Expr, body: Expr) -> Expr {
    sw(co(a()), X, Y, body)
}

pub fn catalog() -> Vec<Law> {
    let (a1, a2, b1, b2) = (|| v(A1), || v(A2), || v(B1), || v(B2));
    let (x, y) = (|| v(X), || v(Y));
    vec![
        law("E1", 3, pre(pre(a(), b()), c()), pre(a(), add(pre(b(), c()), suc(b(), c())))),
        law("E2", 3, pre(suc(a(), b()), c()), suc(a(), pre(b(), c()))),
        law("E3", 3, suc(add(pre(a(), b()), suc(a(), b())), c()), suc(a(), suc(b(), c()))),
        law("split", 2, add(pre(a(), b()), suc(a(), b())), mul(a(), b())),
        law("assoc", 3, mul(mul(a(), b()), c()), mul(a(), mul(b(), c()))),
        law("E1'", 1, over(dpre, t(dpre(x()), y())), over(dpre, t(x(), add(dpre(y()), dsuc(y()))))),
        law("E2'", 1, over(dpre, t(dsuc(x()), y())), over(dsuc, t(x(), dpre(y())))),
        law("E3'", 1, over(dsuc, t(add(dpre(x()), dsuc(x())), y())), over(dsuc, t(x(), dsuc(y())))),
        law("cosplit", 1, add(dpre(a()), dsuc(a())), dtil(a())),
        law("coassoc", 1, over(dtil, t(dtil(x()), y())), over(dtil, t(x(), dtil(y())))),
        law(
            "E5",
            2,
            dsuc(suc(a(), b())),
            sum(vec![
                over_ab(dsuc, t(mul(a1(), b1()), suc(a2(), b2()))),
                over_a(t(a1(), suc(a2(), b()))),
                over_b(dsuc, t(b1(), suc(a(), b2()))),
                over_b(dsuc, t(mul(a(), b1()), b2())),
                t(a(), b()),
            ]),
        ),
        law(
            "E6",
            2,
            dsuc(pre(a(), b())),
            sum(vec![
                over_ab(dsuc, t(mul(a1(), b1()), pre(a2(), b2()))),
                over_a(t(a1(), pre(a2(), b()))),
                over_b(dsuc, t(b1(), pre(a(), b2()))),
            ]),
        ),
        law(
            "E7",
            2,
            dpre(suc(a(), b())),
            sum(vec![
                over_ab(dpre, t(mul(a1(), b1()), suc(a2(), b2()))),
                over_b(dpre, t(mul(a(), b1()), b2())),
                over_b(dpre, t(b1(), suc(a(), b2()))),
            ]),
        ),
        law(
            "E8",
            2,
            dpre(pre(a(), b())),
            sum(vec![
                over_ab(dpre, t(mul(a1(), b1()), pre(a2(), b2()))),
                over_a(t(mul(a1(), b()), a2())),
                over_b(dpre, t(b1(), pre(a(), b2()))),
                t(b(), a()),
            ]),
        ),
        law(
            "E56",
            2,
            dsuc(mul(a(), b())),
            sum(vec![
                over_ab(dsuc, t(mul(a1(), b1()), mul(a2(), b2()))),
                over_a(t(a1(), mul(a2(), b()))),
                over_b(dsuc, t(mul(a(), b1()), b2())),
                over_b(dsuc, t(b1(), mul(a(), b2()))),
                t(a(), b()),
            ]),
        ),
        law(
            "E78",
            2,
            dpre(mul(a(), b())),
            sum(vec![
                over_ab(dpre, t(mul(a1(), b1()), mul(a2(), b2()))),
                over_a(t(mul(a1(), b()), a2())),
                over_b(dpre, t(mul(a(), b1()), b2())),
                over_b(dpre, t(b1(), mul(a(), b2()))),
                t(b(), a()),
            ]),
        ),
        law(
            "E68",
            2,
            dtil(pre(a(), b())),
            sum(vec![
                over_ab(dtil, t(mul(a1(), b1()), pre(a2(), b2()))),
                over_a(t(a1(), pre(a2(), b()))),
                over_a(t(mul(a1(), b()), a2())),
                over_b(dtil, t(b1(), pre(a(), b2()))),
                t(b(), a()),
            ]),
        ),
        law(
            "E57",
            2,
            dtil(suc(a(), b())),
            sum(vec![
                over_ab(dtil, t(mul(a1(), b1()), suc(a2(), b2()))),
                over_a(t(a1(), suc(a2(), b()))),
                over_b(dtil, t(mul(a(), b1()), b2())),
                over_b(dtil, t(b1(), suc(a(), b2()))),
                t(a(), b()),
            ]),
        ),
        law(
            "E5678",
            2,
            dtil(mul(a(), b())),
            sum(vec![
                over_ab(dtil, t(mul(a1(), b1()), mul(a2(), b2()))),
                over_a(t(a1(), mul(a2(), b()))),
                over_b(dtil, t(mul(a(), b1()), b2())),
                over_a(t(mul(a1(), b()), a2())),
                over_b(dtil, t(b1(), mul(a(), b2()))),
                t(a(), b()),
                t(b(), a()),
            ]),
        ),
        law("E16", 3, pre(pre(a(), b()), c()), pre(a(), add(pre(b(), c()), suc(b(), c())))),
        law("E17", 3, pre(suc(a(), b()), c()), suc(a(), pre(b(), c()))),
        law("E18", 3, suc(add(pre(a(), b()), suc(a(), b())), c()), suc(a(), suc(b(), c()))),
        balanced("pair-prec-left", C, pair(pre(a(), b()), c()), pair(t(a(), b()), dpre(c()))),
        balanced("pair-succ-left", C, pair(suc(a(), b()), c()), pair(t(a(), b()), dsuc(c()))),
        balanced("pair-prec-right", A, pair(a(), pre(b(), c())), pair(dpre(a()), t(b(), c()))),
        balanced("pair-succ-right", A, pair(a(), suc(b(), c())), pair(dsuc(a()), t(b(), c()))),
        Law { id: "pair-symmetric", arity: 2, balance: Some(B), lhs: pair(a(), b()), rhs: pair(b(), a()) },
    ]
}

pub fn find(id: &str) -> Option<Law> {
    catalog().into_iter().find(|l| l.id == id)
}

/// Suites over a single algebra; `module` and `tensor` add checks on `A ⊗̄ A`.
pub const SUITES: &[(&str, &[&str])] = &[
    ("dendriform", &["E1", "E2", "E3"]),
    ("codendriform", &["E1'", "E2'", "E3'", "cosplit"]),
    ("dend-bialgebra", &["E1", "E2", "E3", "split", "coassoc", "E68", "E57", "E5678"]),
    ("codend-bialgebra", &["E1'", "E2'", "E3'", "cosplit", "assoc", "E56", "E78", "E5678"]),
    ("bidendriform", &["E1", "E2", "E3", "split", "E1'", "E2'", "E3'", "cosplit", "E5", "E6", "E7", "E8"]),
    ("module", &["E16", "E17", "E18"]),
    ("tensor", &[]),
    (
        "pairing",
        &["pair-prec-left", "pair-succ-left", "pair-prec-right", "pair-succ-right", "pair-symmetric"],
    ),
];

pub fn suite_laws(name: &str) -> Option<Vec<Law>> {
    let (_, ids) = SUITES.iter().find(|(n, _)| *n == name)?;
    Some(ids.iter().map(|id| find(id).expect("suite names a catalogued law")).collect())
}
