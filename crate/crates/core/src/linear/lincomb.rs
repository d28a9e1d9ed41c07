use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::{BasisKey, Rational, Tensor};
use crate::error::{Error, Result};

/// A finite linear combination of basis keys with nonzero rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration follows the basis order and
/// two combinations are equal exactly when their terms agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(Rational::one(), key)
    }

    pub fn term(coeff: Rational, key: K) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.terms.into_iter()
    }

    /// Adds `coeff * key` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    /// Adds `scale * other` in place.
    pub fn add_scaled(&mut self, scale: &Rational, other: &Self) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), scale * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let out = Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        };
        debug_assert!(out.is_normalized());
        out
    }

    /// Linear extension of a basis map: `sum coeff(k) * f(k)`.
    pub fn apply<L, F>(&self, mut f: F) -> LinComb<L>
    where
        L: Ord + Clone,
        F: FnMut(&K) -> LinComb<L>,
    {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Linear extension of a partial basis map; fails on the first key outside its domain.
    pub fn try_apply<L, F>(&self, mut f: F) -> Result<LinComb<L>>
    where
        L: Ord + Clone,
        K: fmt::Display,
        F: FnMut(&K) -> Option<LinComb<L>>,
    {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            let image = f(k).ok_or_else(|| Error::Domain(k.to_string()))?;
            out.add_scaled(c, &image);
        }
        Ok(out)
    }

    /// Linear extension of a basis map whose images may fail.
    pub fn apply_result<L, F>(&self, mut f: F) -> Result<LinComb<L>>
    where
        L: Ord + Clone,
        F: FnMut(&K) -> Result<LinComb<L>>,
    {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }

    /// Bilinear extension of a map on pairs of basis keys.
    pub fn bilinear<K2, L, F>(&self, other: &LinComb<K2>, mut f: F) -> LinComb<L>
    where
        K2: Ord + Clone,
        L: Ord + Clone,
        F: FnMut(&K, &K2) -> LinComb<L>,
    {
        let mut out = LinComb::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add_scaled(&(ca * cb), &f(a, b));
            }
        }
        out
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }
}

impl<K: BasisKey> LinComb<K> {
    /// Degrees of the terms present, deduplicated and sorted.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.keys().map(|k| k.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree if every term shares it; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    /// `x ⊗ y` with tensor keys of length two.
    pub fn tensor(&self, other: &Self) -> LinComb<Tensor<K>> {
        self.bilinear(other, |a, b| {
            LinComb::basis(Tensor::new(vec![a.clone(), b.clone()]))
        })
    }

    pub fn as_tensor(&self) -> LinComb<Tensor<K>> {
        self.map_keys(|k| Tensor::new(vec![k.clone()]))
    }
}

impl<K: BasisKey> LinComb<Tensor<K>> {
    /// Concatenation of tensor factors, extended bilinearly.
    pub fn tensor_concat(&self, other: &Self) -> Self {
        self.bilinear(other, |a, b| LinComb::basis(a.concat(b)))
    }

    /// Applies a basis map to the factor at `slot`, leaving the others alone.
    pub fn apply_at(&self, slot: usize, mut f: impl FnMut(&K) -> LinComb<Tensor<K>>) -> Self {
        self.apply(|t| {
            let image = f(&t.factors()[slot]);
            image.map_keys(|inner| t.splice(slot, inner))
        })
    }

    /// Collapses a length-one tensor combination back to the algebra.
    pub fn untensor(&self) -> LinComb<K> {
        self.map_keys(|t| {
            assert_eq!(t.len(), 1, "untensor on a tensor of length {}", t.len());
            t.factors()[0].clone()
        })
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: Self) -> LinComb<K> {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: Self) -> LinComb<K> {
        &self - &rhs
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        -&self
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let key = k.to_string();
            if key.contains(' ') {
                write!(f, "{c}*({key})")?;
            } else {
                write!(f, "{c}*{key}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `lc_add`: coefficient-wise sum.
pub fn lc_add<K: Ord + Clone>(x: &LinComb<K>, y: &LinComb<K>) -> LinComb<K> {
    x + y
}

/// `lc_scale`: multiply every coefficient by `c`.
pub fn lc_scale<K: Ord + Clone>(c: &Rational, x: &LinComb<K>) -> LinComb<K> {
    x.scale(c)
}

/// `lc_tensor`: bilinear tensor product.
pub fn lc_tensor<K: BasisKey>(x: &LinComb<K>, y: &LinComb<K>) -> LinComb<Tensor<K>> {
    x.tensor(y)
}

/// `lc_apply`: linear extension of a partial basis map.
pub fn lc_apply<K, L, F>(f: F, x: &LinComb<K>) -> Result<LinComb<L>>
where
    K: Ord + Clone + fmt::Display,
    L: Ord + Clone,
    F: FnMut(&K) -> Option<LinComb<L>>,
{
    x.try_apply(f)
}
