//! Truncated power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::Rational;
use crate::pforest::DecorationSet;

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 12;

/// `c_0 + c_1 X + … + c_N X^N`, arithmetic modulo `X^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// `X` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Coefficients from `c_0`; missing ones are zero, extra ones are dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| Rational::from_integer(c.into())))
    }

    /// `Σ_{n≥1} dims[n−1] X^n`.
    pub fn from_dims(order: usize, dims: &[i64]) -> Self {
        Self::new(order, std::iter::once(Rational::zero()).chain(dims.iter().map(|&c| Rational::from_integer(c.into()))))
    }

    /// `Σ_n |D_n| X^n` for a decoration set.
    pub fn of_decorations(d: &DecorationSet, order: usize) -> Self {
        let p = d.profile(order);
        Self::new(order, p.into_iter().map(|c| Rational::from_integer(c.into())))
    }

    /// `Σ_{n≥1} n! X^n`.
    pub fn factorials(order: usize) -> Self {
        let mut f = BigInt::one();
        let mut s = Self::zero(order);
        for n in 1..=order {
            f *= n;
            s.coeffs[n] = Rational::from_integer(f.clone());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// All coefficients as integers, or an error naming the first that is not.
    pub fn integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Series(format!("coefficient {n} is {c}, not an integer")))
                }
            })
            .collect()
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series("cannot invert a series with zero constant term".into()));
        }
        let mut inv = Self::zero(self.order());
        inv.coeffs[0] = c0.recip();
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv.coeffs[n - k];
                }
            }
            inv.coeffs[n] = -acc / c0;
        }
        Ok(inv)
    }

    fn check_no_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::Series(format!("{what} needs a zero constant term, got {}", self.coeffs[0])))
        }
    }
}

fn same_order(a: &Series, b: &Series) -> usize {
    a.order().min(b.order())
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = same_order(self, rhs);
        Series::new(n, (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]))
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = same_order(self, rhs);
        Series::new(n, (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]))
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = same_order(self, rhs);
        let mut out = Series::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The series `R` with `R_0 = 1` and `R = 1 + D·R²`, i.e. the forest count
/// for decorations counted by `D`.
pub fn r_from_d(d: &Series) -> Result<Series> {
    d.check_no_constant("D")?;
    let order = d.order();
    let mut r = Series::one(order);
    let mut sq = Series::one(order);
    for n in 1..=order {
        let mut rn = Rational::zero();
        for k in 1..=n {
            if !d.coeffs[k].is_zero() {
                rn += &d.coeffs[k] * &sq.coeffs[n - k];
            }
        }
        r.coeffs[n] = rn;
        let mut s = Rational::zero();
        for i in 0..=n {
            s += &r.coeffs[i] * &r.coeffs[n - i];
        }
        sq.coeffs[n] = s;
    }
    Ok(r)
}

/// `P = R₊ / (1 + R₊)²`.
pub fn p_from_r(rplus: &Series) -> Result<Series> {
    rplus.check_no_constant("R₊")?;
    let one_plus = &Series::one(rplus.order()) + rplus;
    let denom = (&one_plus * &one_plus).inverse()?;
    Ok(rplus * &denom)
}

/// `D` from `R = 1 + R₊`, inverting [`r_from_d`].
pub fn d_from_r(rplus: &Series) -> Result<Series> {
    p_from_r(rplus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforest::enumerate_forests;
    use proptest::prelude::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.integers().unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn catalan() {
        let r = r_from_d(&Series::x(5)).unwrap();
        assert_eq!(ints(&r), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&r_from_d(&Series::zero(4)).unwrap()), vec![1, 0, 0, 0, 0]);
        assert!(r_from_d(&Series::one(3)).is_err());
    }

    #[test]
    fn forest_counts() {
        let d = DecorationSet::from_pairs(&[("a", 1), ("b", 3)]).unwrap();
        let r = r_from_d(&Series::of_decorations(&d, 7)).unwrap();
        assert_eq!(r.coeff(3), Rational::from_integer(6.into()));
        for n in 1..=7 {
            assert_eq!(r.coeff(n), Rational::from_integer(enumerate_forests(&d, n).len().into()));
        }
    }

    #[test]
    fn primitive_row() {
        let p = p_from_r(&Series::factorials(DEFAULT_ORDER)).unwrap();
        let want = [0, 1, 0, 1, 6, 39, 284, 2305, 20682, 203651, 2186744, 25463925, 319989030];
        assert_eq!(ints(&p), want);
        assert_eq!(d_from_r(&Series::factorials(8)).unwrap(), p_from_r(&Series::factorials(8)).unwrap());
    }

    #[test]
    fn catalan_is_free_on_one() {
        let c = r_from_d(&Series::x(10)).unwrap();
        let p = p_from_r(&(&c - &Series::one(10))).unwrap();
        assert_eq!(p, Series::x(10));
        assert_eq!(p_from_r(&Series::zero(6)).unwrap(), Series::zero(6));
    }

    #[test]
    fn inverse_roundtrip() {
        let s = Series::from_ints(6, &[2, 3, 0, -1]);
        assert_eq!(&s * &s.inverse().unwrap(), Series::one(6));
        assert!(Series::x(3).inverse().is_err());
    }

    proptest! {
        #[test]
        fn d_r_roundtrip(cs in proptest::collection::vec(0i64..4, 1..12)) {
            let order = cs.len();
            let d = Series::from_dims(order, &cs);
            let r = r_from_d(&d).unwrap();
            prop_assert!(r.integers().is_ok());
            let back = d_from_r(&(&r - &Series::one(order))).unwrap();
            prop_assert_eq!(back, d);
        }

        #[test]
        fn quotient_identity(cs in proptest::collection::vec(-5i64..6, 1..12)) {
            let order = cs.len();
            let rp = Series::from_dims(order, &cs);
            let p = p_from_r(&rp).unwrap();
            prop_assert!(p.integers().is_ok());
            let one_plus = &Series::one(order) + &rp;
            prop_assert_eq!(&(&one_plus * &one_plus) * &p, rp);
        }
    }
}
