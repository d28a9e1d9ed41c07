//! Exact scalars, sparse linear combinations, tensor keys and exact matrices.

mod lincomb;
pub mod matrix;
mod tensor;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use lincomb::{lc_add, lc_apply, lc_scale, lc_tensor, LinComb};
pub use tensor::Tensor;

use crate::error::{Error, Result};

/// Exact rational scalar, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A basis index: totally ordered, printable in a canonical form and graded.
pub trait BasisKey: Ord + Clone + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn degree(&self) -> usize;
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Splits `text` at top-level occurrences of `sep` (outside any brackets).
pub fn split_top_level<'a>(text: &'a str, sep: &str) -> Vec<(usize, &'a str)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && text[i..].starts_with(sep) {
            out.push((start, &text[start..i]));
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push((start, &text[start..]));
    out
}

/// Removes one pair of enclosing parentheses when they match each other.
pub fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let mut depth = 0;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 && i != t.len() - 1 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        return &t[1..t.len() - 1];
    }
    t
}

/// Splits a term `R*B` into its coefficient and key text; a bare key has coefficient one.
fn split_coefficient(term: &str) -> (Option<&str>, &str) {
    let t = term.trim();
    let bytes = t.as_bytes();
    let mut i = 0;
    if i < bytes.len() && bytes[i] == b'-' {
        i += 1;
    }
    let digits_start = i;
    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
        i += 1;
    }
    if i > digits_start && i < bytes.len() && bytes[i] == b'*' && i + 1 < bytes.len() {
        (Some(&t[..i]), &t[i + 1..])
    } else if let Some(rest) = t.strip_prefix('-') {
        (Some("-1"), rest)
    } else {
        (None, t)
    }
}

/// Parses the text form of a linear combination, with a caller-supplied key parser.
///
/// Accepts `0`, and terms `R*B` or bare `B` joined by ` + `.
pub fn parse_lincomb<K, F>(text: &str, mut parse_key: F) -> Result<LinComb<K>>
where
    K: Ord + Clone,
    F: FnMut(&str, usize) -> Result<K>,
{
    let text = text.trim();
    if text == "0" {
        return Ok(LinComb::zero());
    }
    let mut out = LinComb::zero();
    for (offset, term) in split_top_level(text, " + ") {
        if term.trim().is_empty() {
            return Err(Error::Syntax { offset, message: "empty term".into() });
        }
        let (coeff, key) = split_coefficient(term);
        let c = match coeff {
            Some(c) => parse_rational(c).ok_or_else(|| Error::Syntax {
                offset,
                message: format!("bad coefficient `{c}`"),
            })?,
            None => Rational::one(),
        };
        let key_text = strip_parens(key);
        let key_offset = offset + term.find(key_text).unwrap_or(0);
        out.add_term(parse_key(key_text, key_offset)?, c);
    }
    Ok(out)
}

/// Parses a tensor key `A # B # ...`, each factor optionally parenthesized.
pub fn parse_tensor_key<K, F>(text: &str, mut parse_key: F) -> Result<Tensor<K>>
where
    K: Clone,
    F: FnMut(&str, usize) -> Result<K>,
{
    let mut factors = Vec::new();
    for (offset, part) in split_top_level(text, " # ") {
        factors.push(parse_key(strip_parens(part), offset)?);
    }
    Ok(Tensor::new(factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    struct K(u8);

    impl fmt::Display for K {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "k{}", self.0)
        }
    }

    impl BasisKey for K {
        fn degree(&self) -> usize {
            1
        }
    }

    fn lc(terms: &[(i64, i64, u8)]) -> LinComb<K> {
        terms.iter().map(|&(p, q, k)| (K(k), ratio(p, q))).collect()
    }

    #[test]
    fn add_examples() {
        assert_eq!(lc_add(&lc(&[(2, 1, 1)]), &lc(&[(3, 1, 1)])), lc(&[(5, 1, 1)]));
        assert!(lc_add(&lc(&[(1, 1, 1)]), &lc(&[(-1, 1, 1)])).is_zero());
        let s = lc_add(&lc(&[(1, 2, 1)]), &lc(&[(1, 3, 2)]));
        assert_eq!(s.coeff(&K(1)), ratio(1, 2));
        assert_eq!(s.coeff(&K(2)), ratio(1, 3));
        assert_eq!(s.to_string(), "1/2*k1 + 1/3*k2");
    }

    #[test]
    fn scale_examples() {
        assert!(lc_scale(&int(0), &lc(&[(5, 1, 1)])).is_zero());
        let x = lc(&[(3, 1, 1), (-2, 7, 4)]);
        assert_eq!(lc_scale(&int(1), &x), x);
        assert_eq!(lc_scale(&ratio(-2, 3), &lc(&[(3, 1, 1)])), lc(&[(-2, 1, 1)]));
    }

    #[test]
    fn tensor_examples() {
        let t = lc_tensor(&lc(&[(2, 1, 1)]), &lc(&[(3, 1, 2)]));
        assert_eq!(t, LinComb::term(int(6), Tensor::new(vec![K(1), K(2)])));
        assert!(lc_tensor(&LinComb::zero(), &lc(&[(1, 1, 3)])).is_zero());
        let t = lc_tensor(&lc(&[(1, 1, 1), (1, 1, 2)]), &lc(&[(1, 1, 3)]));
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(&Tensor::new(vec![K(2), K(3)])), int(1));
        assert_eq!(t.to_string(), "1*(k1 # k3) + 1*(k2 # k3)");
    }

    #[test]
    fn apply_examples() {
        let x = lc(&[(3, 1, 1), (1, 2, 2)]);
        assert_eq!(lc_apply(|k: &K| Some(LinComb::basis(k.clone())), &x).unwrap(), x);
        assert!(lc_apply(|_: &K| Some(LinComb::<K>::zero()), &x).unwrap().is_zero());
        let y = lc_apply(|_: &K| Some(LinComb::basis(K(2))), &lc(&[(3, 1, 1)])).unwrap();
        assert_eq!(y, lc(&[(3, 1, 2)]));
        let err = lc_apply(|k: &K| (k.0 != 2).then(|| LinComb::basis(K(0))), &x);
        assert_eq!(err, Err(Error::Domain("k2".into())));
    }

    #[test]
    fn empty_prints_zero() {
        assert_eq!(LinComb::<K>::zero().to_string(), "0");
    }

    #[test]
    fn parse_roundtrip_with_signs() {
        let x = lc(&[(-2, 3, 1), (1, 1, 2)]);
        let parsed = parse_lincomb(&x.to_string(), |s, off| {
            s.strip_prefix('k')
                .and_then(|d| d.parse().ok())
                .map(K)
                .ok_or(Error::Syntax { offset: off, message: "key".into() })
        })
        .unwrap();
        assert_eq!(parsed, x);
    }

    fn arb_lc() -> impl Strategy<Value = LinComb<K>> {
        proptest::collection::vec((0u8..6, -5i64..6, 1i64..5), 0..6)
            .prop_map(|v| v.into_iter().map(|(k, p, q)| (K(k), ratio(p, q))).collect())
    }

    proptest! {
        #[test]
        fn add_is_associative_and_commutative(x in arb_lc(), y in arb_lc(), z in arb_lc()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert!((&x + &y).is_normalized());
        }

        #[test]
        fn scale_distributes(x in arb_lc(), y in arb_lc(), p in -4i64..5, q in 1i64..4) {
            let c = ratio(p, q);
            prop_assert_eq!((&x + &y).scale(&c), &x.scale(&c) + &y.scale(&c));
        }

        #[test]
        fn tensor_is_bilinear(x in arb_lc(), y in arb_lc(), z in arb_lc()) {
            prop_assert_eq!((&x + &y).tensor(&z), &x.tensor(&z) + &y.tensor(&z));
            prop_assert_eq!(z.tensor(&(&x + &y)), &z.tensor(&x) + &z.tensor(&y));
        }

        #[test]
        fn rational_sum_is_exact(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let direct = ratio(a, b) + ratio(c, d);
            let common = ratio(a * d + c * b, b * d);
            prop_assert_eq!(direct, common);
        }
    }
}
