//! A common interface over the graded bidendriform bialgebras in this crate.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fqsym::{self, Perm};
use crate::halfprod::{build_table, HalfProductTable};
use crate::hck;
use crate::linear::{BasisKey, LinComb, Rational, Tensor};
use crate::pairing;
use crate::pforest::{enumerate_forests, DecorationSet, Forest};

pub type Elem<A> = LinComb<<A as Bidendriform>::Key>;
pub type Tens<A> = LinComb<Tensor<<A as Bidendriform>::Key>>;

/// Basis-level operations of a graded connected bidendriform bialgebra `A`.
///
/// `mul` is the unital product on `K ⊕ A`; the half-products and
/// half-coproducts are only called on non-unit keys.
pub trait Bidendriform: Send + Sync {
    type Key: BasisKey;

    fn name(&self) -> String;
    fn unit(&self) -> Self::Key;
    /// Basis of the degree-`n` component, `n ≥ 1`.
    fn basis(&self, n: usize) -> Vec<Self::Key>;
    /// Largest total degree for which the products are available.
    fn product_bound(&self) -> Option<usize> {
        None
    }
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> Elem<Self>;
    fn prec(&self, a: &Self::Key, b: &Self::Key) -> Elem<Self>;
    fn succ(&self, a: &Self::Key, b: &Self::Key) -> Elem<Self>;
    fn delta_pre(&self, a: &Self::Key) -> Tens<Self>;
    fn delta_suc(&self, a: &Self::Key) -> Tens<Self>;
    fn delta_tilde(&self, a: &Self::Key) -> Tens<Self>;
    fn pair(&self, a: &Self::Key, b: &Self::Key) -> Rational;

    fn is_unit(&self, a: &Self::Key) -> bool {
        *a == self.unit()
    }

    fn parse_key(&self, text: &str) -> Result<Self::Key>;
}

pub fn mul<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
    x.bilinear(y, |a, b| alg.mul(a, b))
}

pub fn prec<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
    x.bilinear(y, |a, b| alg.prec(a, b))
}

pub fn succ<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
    x.bilinear(y, |a, b| alg.succ(a, b))
}

pub fn delta_pre<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Tens<A> {
    x.apply(|a| alg.delta_pre(a))
}

pub fn delta_suc<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Tens<A> {
    x.apply(|a| alg.delta_suc(a))
}

pub fn delta_tilde<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Tens<A> {
    x.apply(|a| alg.delta_tilde(a))
}

pub fn pair<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, y: &Elem<A>) -> Rational {
    let mut acc = Rational::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let v = alg.pair(a, b);
            if !v.is_zero() {
                acc += ca * cb * v;
            }
        }
    }
    acc
}

/// Checks `m = ≺ + ≻` and `Δ̃ = Δ≺ + Δ≻` on every basis key (pair) up to `max`.
pub fn check_splitting<A: Bidendriform + ?Sized>(alg: &A, max: usize) -> Result<()> {
    let max = alg.product_bound().map_or(max, |b| b.min(max));
    for n in 1..=max {
        for a in alg.basis(n) {
            let split = &alg.delta_pre(&a) + &alg.delta_suc(&a);
            if split != alg.delta_tilde(&a) {
                return Err(Error::Verification(format!("Δ≺ + Δ≻ ≠ Δ̃ on {a}")));
            }
        }
        for k in 1..n {
            for a in alg.basis(k) {
                for b in alg.basis(n - k) {
                    if &alg.prec(&a, &b) + &alg.succ(&a, &b) != alg.mul(&a, &b) {
                        return Err(Error::Verification(format!("≺ + ≻ ≠ m on ({a}, {b})")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// FQSym with its shuffle half-products and the duality pairing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fqsym;

impl Bidendriform for Fqsym {
    type Key = Perm;

    fn name(&self) -> String {
        "fqsym".into()
    }

    fn unit(&self) -> Perm {
        Perm::empty()
    }

    fn basis(&self, n: usize) -> Vec<Perm> {
        Perm::all(n)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Elem<Self> {
        fqsym::product(a, b)
    }

    fn prec(&self, a: &Perm, b: &Perm) -> Elem<Self> {
        fqsym::prec(a, b).expect("half-product of non-unit permutations")
    }

    fn succ(&self, a: &Perm, b: &Perm) -> Elem<Self> {
        fqsym::succ(a, b).expect("half-product of non-unit permutations")
    }

    fn delta_pre(&self, a: &Perm) -> Tens<Self> {
        fqsym::delta_pre(a).expect("half-coproduct of a non-unit permutation")
    }

    fn delta_suc(&self, a: &Perm) -> Tens<Self> {
        fqsym::delta_suc(a).expect("half-coproduct of a non-unit permutation")
    }

    fn delta_tilde(&self, a: &Perm) -> Tens<Self> {
        fqsym::reduced_coproduct(a)
    }

    fn pair(&self, a: &Perm, b: &Perm) -> Rational {
        fqsym::dual_pairing(a, b)
    }

    fn parse_key(&self, text: &str) -> Result<Perm> {
        Perm::parse(text)
    }
}

/// Which half-coproducts an [`Hck`] algebra carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HckVariant {
    /// `Δ≺`, `Δ≻` from the rightmost-path cuts.
    Standard,
    /// `Δ′≺`, `Δ′≻` from the cuts that totally cut the last tree.
    Prime,
}

/// Decorated forests with reconstructed half-products.
#[derive(Clone)]
pub struct Hck {
    decorations: DecorationSet,
    table: Arc<HalfProductTable>,
    variant: HckVariant,
}

impl Hck {
    pub fn new(decorations: DecorationSet, bound: usize, variant: HckVariant) -> Result<Self> {
        let table = Arc::new(build_table(&decorations, bound)?);
        Ok(Self { decorations, table, variant })
    }

    pub fn with_table(table: Arc<HalfProductTable>, variant: HckVariant) -> Self {
        Self { decorations: table.decorations().clone(), table, variant }
    }

    pub fn table(&self) -> &HalfProductTable {
        &self.table
    }

    pub fn decorations(&self) -> &DecorationSet {
        &self.decorations
    }
}

impl Bidendriform for Hck {
    type Key = Forest;

    fn name(&self) -> String {
        match self.variant {
            HckVariant::Standard => "hck".into(),
            HckVariant::Prime => "hck-prime".into(),
        }
    }

    fn unit(&self) -> Forest {
        Forest::unit()
    }

    fn basis(&self, n: usize) -> Vec<Forest> {
        enumerate_forests(&self.decorations, n).to_vec()
    }

    fn product_bound(&self) -> Option<usize> {
        Some(self.table.bound())
    }

    fn mul(&self, a: &Forest, b: &Forest) -> Elem<Self> {
        LinComb::basis(a.concat(b))
    }

    fn prec(&self, a: &Forest, b: &Forest) -> Elem<Self> {
        self.table.prec(a, b).expect("half-product within the table bound").clone()
    }

    fn succ(&self, a: &Forest, b: &Forest) -> Elem<Self> {
        self.table.succ(a, b).expect("half-product within the table bound").clone()
    }

    fn delta_pre(&self, a: &Forest) -> Tens<Self> {
        match self.variant {
            HckVariant::Standard => hck::delta_pre(a),
            HckVariant::Prime => hck::delta_pre_prime(a),
        }
        .expect("half-coproduct of a nonempty forest")
    }

    fn delta_suc(&self, a: &Forest) -> Tens<Self> {
        match self.variant {
            HckVariant::Standard => hck::delta_suc(a),
            HckVariant::Prime => hck::delta_suc_prime(a),
        }
        .expect("half-coproduct of a nonempty forest")
    }

    fn delta_tilde(&self, a: &Forest) -> Tens<Self> {
        hck::reduced_coproduct(a)
    }

    fn pair(&self, a: &Forest, b: &Forest) -> Rational {
        pairing::pair(a, b)
    }

    fn parse_key(&self, text: &str) -> Result<Forest> {
        crate::pforest::parse_forest(text, &self.decorations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_holds() {
        check_splitting(&Fqsym, 5).unwrap();
        let h = Hck::new(DecorationSet::single(), 4, HckVariant::Standard).unwrap();
        check_splitting(&h, 4).unwrap();
        let p = Hck::new(DecorationSet::single(), 4, HckVariant::Prime).unwrap();
        check_splitting(&p, 4).unwrap();
    }
}
