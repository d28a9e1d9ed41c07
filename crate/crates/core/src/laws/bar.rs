//! `A ⊗̄ B = (A⊗B) ⊕ (K⊗B) ⊕ (A⊗K)` with its dendriform structure, the
//! unitalized coproducts into `A ⊗̄ A`, and the module structure they induce.

use std::fmt;

use crate::error::Result;
use crate::linear::{BasisKey, LinComb, Rational};

use super::expr::{BinOp, CoOp};
use super::Signature;

/// `a⊗b`, `a⊗1` or `1⊗b`; `1⊗1` is excluded.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarKey<K, L> {
    Both(K, L),
    Left(K),
    Right(L),
}

use BarKey::{Both, Left, Right};

impl<K: BasisKey, L: BasisKey> BasisKey for BarKey<K, L> {
    fn degree(&self) -> usize {
        match self {
            Both(a, b) => a.degree() + b.degree(),
            Left(a) => a.degree(),
            Right(b) => b.degree(),
        }
    }
}

impl<K: fmt::Display, L: fmt::Display> fmt::Display for BarKey<K, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Both(a, b) => write!(f, "({a}⊗{b})"),
            Left(a) => write!(f, "({a}⊗1)"),
            Right(b) => write!(f, "(1⊗{b})"),
        }
    }
}

pub type BarElem<K, L> = LinComb<BarKey<K, L>>;

/// The dendriform algebra `A ⊗̄ B`.
pub struct Bar<'a, A: ?Sized, B: ?Sized> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<'a, A: ?Sized, B: ?Sized> Bar<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        Self { left, right }
    }
}

fn both<K: BasisKey, L: BasisKey>(x: &LinComb<K>, y: &LinComb<L>) -> BarElem<K, L> {
    x.bilinear(y, |a, b| LinComb::basis(Both(a.clone(), b.clone())))
}

fn one<K: BasisKey>(k: &K) -> LinComb<K> {
    LinComb::basis(k.clone())
}

impl<A, B> Signature for Bar<'_, A, B>
where
    A: Signature + ?Sized,
    B: Signature + ?Sized,
{
    type Key = BarKey<A::Key, B::Key>;

    fn label(&self) -> String {
        format!("{}⊗̄{}", self.left.label(), self.right.label())
    }

    fn basis(&self, n: usize) -> Vec<Self::Key> {
        let mut out = Vec::new();
        for k in 1..n {
            for a in self.left.basis(k) {
                for b in self.right.basis(n - k) {
                    out.push(Both(a.clone(), b));
                }
            }
        }
        out.extend(self.left.basis(n).into_iter().map(Left));
        out.extend(self.right.basis(n).into_iter().map(Right));
        out
    }

    fn bound(&self) -> Option<usize> {
        match (self.left.bound(), self.right.bound()) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        }
    }

    fn prec(&self, x: &Self::Key, y: &Self::Key) -> BarElem<A::Key, B::Key> {
        let (l, r) = (self.left, self.right);
        match (x, y) {
            (Both(a1, b1), Both(a2, b2)) => both(&l.mul(a1, a2), &r.prec(b1, b2)),
            (Both(a1, b1), Left(a2)) => both(&l.mul(a1, a2), &one(b1)),
            (Both(a1, b1), Right(b2)) => both(&one(a1), &r.prec(b1, b2)),
            (Left(_), Both(..)) | (Left(_), Right(_)) => LinComb::zero(),
            (Left(a1), Left(a2)) => l.prec(a1, a2).map_keys(|a| Left(a.clone())),
            (Right(b1), Both(a2, b2)) => both(&one(a2), &r.prec(b1, b2)),
            (Right(b1), Left(a2)) => both(&one(a2), &one(b1)),
            (Right(b1), Right(b2)) => r.prec(b1, b2).map_keys(|b| Right(b.clone())),
        }
    }

    fn succ(&self, x: &Self::Key, y: &Self::Key) -> BarElem<A::Key, B::Key> {
        let (l, r) = (self.left, self.right);
        match (x, y) {
            (Both(a1, b1), Both(a2, b2)) => both(&l.mul(a1, a2), &r.succ(b1, b2)),
            (Both(..), Left(_)) | (Right(_), Left(_)) => LinComb::zero(),
            (Both(a1, b1), Right(b2)) => both(&one(a1), &r.succ(b1, b2)),
            (Left(a1), Both(a2, b2)) => both(&l.mul(a1, a2), &one(b2)),
            (Left(a1), Left(a2)) => l.succ(a1, a2).map_keys(|a| Left(a.clone())),
            (Left(a1), Right(b2)) => both(&one(a1), &one(b2)),
            (Right(b1), Both(a2, b2)) => both(&one(a2), &r.succ(b1, b2)),
            (Right(b1), Right(b2)) => r.succ(b1, b2).map_keys(|b| Right(b.clone())),
        }
    }

    fn mul(&self, x: &Self::Key, y: &Self::Key) -> BarElem<A::Key, B::Key> {
        &self.prec(x, y) + &self.succ(x, y)
    }
}

/// `x ≺ y`, `x ≻ y` or `x·y`, extended bilinearly.
pub fn op_elem<S: Signature + ?Sized>(s: &S, op: BinOp, x: &LinComb<S::Key>, y: &LinComb<S::Key>) -> LinComb<S::Key> {
    x.bilinear(y, |a, b| match op {
        BinOp::Prec => s.prec(a, b),
        BinOp::Succ => s.succ(a, b),
        BinOp::Mul => s.mul(a, b),
    })
}

fn lift<S: Signature + ?Sized>(s: &S, op: CoOp, a: &S::Key) -> Result<BarElem<S::Key, S::Key>> {
    let t = s
        .coproduct(op, a)
        .ok_or_else(|| crate::error::Error::Domain(format!("{} has no half-coproducts", s.label())))?;
    Ok(t.map_keys(|p| Both(p.factors()[0].clone(), p.factors()[1].clone())))
}

/// `Δ(a) = Δ̃(a) + a⊗1 + 1⊗a`.
pub fn bar_delta<S: Signature + ?Sized>(s: &S, x: &LinComb<S::Key>) -> Result<BarElem<S::Key, S::Key>> {
    x.apply_result(|a| {
        let mut out = lift(s, CoOp::Tilde, a)?;
        out.add_term(Left(a.clone()), Rational::from_integer(1.into()));
        out.add_term(Right(a.clone()), Rational::from_integer(1.into()));
        Ok(out)
    })
}

/// `Δ̄≺(a) = Δ≺(a) + a⊗1`.
pub fn bar_delta_pre<S: Signature + ?Sized>(s: &S, x: &LinComb<S::Key>) -> Result<BarElem<S::Key, S::Key>> {
    x.apply_result(|a| {
        let mut out = lift(s, CoOp::Pre, a)?;
        out.add_term(Left(a.clone()), Rational::from_integer(1.into()));
        Ok(out)
    })
}

/// `Δ̄≻(a) = Δ≻(a) + 1⊗a`.
pub fn bar_delta_suc<S: Signature + ?Sized>(s: &S, x: &LinComb<S::Key>) -> Result<BarElem<S::Key, S::Key>> {
    x.apply_result(|a| {
        let mut out = lift(s, CoOp::Suc, a)?;
        out.add_term(Right(a.clone()), Rational::from_integer(1.into()));
        Ok(out)
    })
}

/// `a ⊣ m = Δ(a) ≺ m` (`op = Prec`) and `a ⊢ m = Δ(a) ≻ m` (`op = Succ`) on `A ⊗̄ A`.
pub fn act<S: Signature + ?Sized>(
    s: &S,
    op: BinOp,
    a: &LinComb<S::Key>,
    m: &BarElem<S::Key, S::Key>,
) -> Result<BarElem<S::Key, S::Key>> {
    Ok(op_elem(&Bar::new(s, s), op, &bar_delta(s, a)?, m))
}

/// `(a⊗b)⊗c ↦ a⊗(b⊗c)`, with the units placed accordingly.
pub fn associate<K: Clone, L: Clone, M: Clone>(k: &BarKey<BarKey<K, L>, M>) -> BarKey<K, BarKey<L, M>> {
    match k.clone() {
        Both(Both(a, b), c) => Both(a, Both(b, c)),
        Both(Left(a), c) => Both(a, Right(c)),
        Both(Right(b), c) => Right(Both(b, c)),
        Left(Both(a, b)) => Both(a, Left(b)),
        Left(Left(a)) => Left(a),
        Left(Right(b)) => Right(Left(b)),
        Right(c) => Right(Right(c)),
    }
}

/// Inverse of [`associate`].
pub fn dissociate<K: Clone, L: Clone, M: Clone>(k: &BarKey<K, BarKey<L, M>>) -> BarKey<BarKey<K, L>, M> {
    match k.clone() {
        Both(a, Both(b, c)) => Both(Both(a, b), c),
        Both(a, Right(c)) => Both(Left(a), c),
        Right(Both(b, c)) => Both(Right(b), c),
        Both(a, Left(b)) => Left(Both(a, b)),
        Left(a) => Left(Left(a)),
        Right(Left(b)) => Left(Right(b)),
        Right(Right(c)) => Right(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fqsym, Hck, HckVariant};
    use crate::fqsym::Perm;
    use crate::linear::parse_lincomb;
    use crate::pforest::{parse_forest, DecorationSet, Forest};

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    #[test]
    fn table_cases() {
        let bar = Bar::new(&Fqsym, &Fqsym);
        let (a, b) = (p("1"), p("12"));
        assert!(bar.prec(&Left(a.clone()), &Right(b.clone())).is_zero());
        assert_eq!(bar.succ(&Left(a.clone()), &Right(b.clone())), LinComb::basis(Both(a.clone(), b.clone())));
        assert_eq!(bar.prec(&Right(b.clone()), &Left(a.clone())), LinComb::basis(Both(a.clone(), b.clone())));
        let inner = Signature::prec(&Fqsym, &a, &b).map_keys(|k| Right(k.clone()));
        assert_eq!(bar.prec(&Right(a.clone()), &Right(b.clone())), inner);
    }

    #[test]
    fn unitalized_coproducts() {
        let d = DecorationSet::from_pairs(&[("a", 1), ("b", 1)]).unwrap();
        let h = Hck::new(d.clone(), 2, HckVariant::Standard).unwrap();
        let f = |s: &str| parse_forest(s, &d).unwrap();
        let e = |s: &str| LinComb::basis(f(s));
        let node = bar_delta(&h, &e("a")).unwrap();
        let want: BarElem<Forest, Forest> = [(Left(f("a")), 1), (Right(f("a")), 1)]
            .into_iter()
            .map(|(k, c)| (k, Rational::from_integer(c.into())))
            .collect();
        assert_eq!(node, want);
        let got = bar_delta_pre(&h, &e("a[b]")).unwrap();
        let want: BarElem<Forest, Forest> = [(Both(f("b"), f("a")), 1), (Left(f("a[b]")), 1)]
            .into_iter()
            .map(|(k, c)| (k, Rational::from_integer(c.into())))
            .collect();
        assert_eq!(got, want);
        let x = parse_lincomb("a[b] + 2*(a b)", |k, _| Ok(f(k))).unwrap();
        let sum = &bar_delta_pre(&h, &x).unwrap() + &bar_delta_suc(&h, &x).unwrap();
        assert_eq!(sum, bar_delta(&h, &x).unwrap());
    }

    #[test]
    fn associator_roundtrip() {
        let inner = Bar::new(&Fqsym, &Fqsym);
        let outer = Bar::new(&inner, &Fqsym);
        for n in 1..=4 {
            for k in outer.basis(n) {
                assert_eq!(dissociate(&associate(&k)), k);
            }
        }
    }
}
