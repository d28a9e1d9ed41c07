//! The Malvenuto–Reutenauer algebra on the fundamental basis `F_u`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{BasisKey, LinComb, Rational, Tensor};

/// A permutation of `{1..n}` written as a word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    word: Arc<[u16]>,
}

impl Perm {
    /// Builds a permutation, checking that `word` is a bijection onto `{1..n}`.
    pub fn new(word: Vec<u16>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            let i = x as usize;
            if i == 0 || i > n || seen[i] {
                return Err(Error::Domain(format!("{word:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { word: word.into() })
    }

    fn from_word_unchecked(word: Vec<u16>) -> Self {
        Self { word: word.into() }
    }

    pub fn empty() -> Self {
        Self::from_word_unchecked(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_word_unchecked((1..=n as u16).collect())
    }

    pub fn word(&self) -> &[u16] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.len()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x as usize - 1] = i as u16 + 1;
        }
        Self::from_word_unchecked(inv)
    }

    /// 1-based position of the letter `n`.
    pub fn position_of_max(&self) -> Option<usize> {
        let n = self.len() as u16;
        self.word.iter().position(|&x| x == n).map(|p| p + 1)
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut w: Vec<u16> = (1..=n as u16).collect();
        loop {
            out.push(Self::from_word_unchecked(w.clone()));
            // next lexicographic permutation
            let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
                break;
            };
            let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).expect("successor exists");
            w.swap(i - 1, j);
            w[i..].reverse();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Perm> {
        let t = text.trim();
        let t = t.strip_prefix('F').unwrap_or(t);
        let syntax = |message: &str| Error::Syntax { offset: 0, message: message.into() };
        let word: Vec<u16> = if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| syntax("unterminated `[`"))?;
            if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u16>().map_err(|_| syntax("bad letter")))
                    .collect::<Result<_>>()?
            }
        } else {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax("expected a permutation word"));
            }
            t.bytes().map(|b| (b - b'0') as u16).collect()
        };
        Perm::new(word)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        if (1..=9).contains(&n) {
            for x in self.word.iter() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{self}")
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.len().cmp(&other.len());
        if n != Ordering::Equal || self.len() <= 9 {
            return n.then_with(|| self.word.cmp(&other.word));
        }
        self.to_string().cmp(&other.to_string())
    }
}

impl BasisKey for Perm {
    fn degree(&self) -> usize {
        self.len()
    }
}

pub type FqElem = LinComb<Perm>;
pub type FqTensor = LinComb<Tensor<Perm>>;

/// `st`: the permutation with the same relative order as `word`.
pub fn standardize(word: &[u16]) -> Result<Perm> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| word[i]);
    if idx.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::RepeatedLetter(format!("{word:?}")));
    }
    let mut out = vec![0u16; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = rank as u16 + 1;
    }
    Ok(Perm::from_word_unchecked(out))
}

fn st(word: &[u16]) -> Perm {
    standardize(word).expect("subwords of a permutation have distinct letters")
}

/// Which shuffles of the position blocks to keep.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Last {
    Any,
    Left,
    Right,
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut c: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&c);
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn shuffle(u: &Perm, v: &Perm, last: Last) -> FqElem {
    let (n, m) = (u.len(), v.len());
    let total = n + m;
    let mut out = FqElem::zero();
    for_each_subset(total, n, |left| {
        let from_left = left.last() == Some(&(total - 1));
        if (last == Last::Left && !from_left) || (last == Last::Right && from_left) {
            return;
        }
        let mut w = vec![0u16; total];
        let mut is_left = vec![false; total];
        for (&p, &x) in left.iter().zip(u.word.iter()) {
            w[p] = x;
            is_left[p] = true;
        }
        let mut vs = v.word.iter();
        for p in 0..total {
            if !is_left[p] {
                w[p] = vs.next().expect("right block") + n as u16;
            }
        }
        out.add_term(Perm::from_word_unchecked(w), Rational::one());
    });
    out
}

/// `F_u · F_v`: sum over shuffles of the two position blocks.
pub fn product(u: &Perm, v: &Perm) -> FqElem {
    shuffle(u, v, Last::Any)
}

fn nonempty(u: &Perm, op: &'static str) -> Result<()> {
    if u.is_empty() {
        Err(Error::EmptyPermutation(op))
    } else {
        Ok(())
    }
}

/// `F_u ≺ F_v`: shuffles whose last position comes from the left block.
pub fn prec(u: &Perm, v: &Perm) -> Result<FqElem> {
    nonempty(u, "prec")?;
    nonempty(v, "prec")?;
    Ok(shuffle(u, v, Last::Left))
}

/// `F_u ≻ F_v`: shuffles whose last position comes from the right block.
pub fn succ(u: &Perm, v: &Perm) -> Result<FqElem> {
    nonempty(u, "succ")?;
    nonempty(v, "succ")?;
    Ok(shuffle(u, v, Last::Right))
}

fn cut_range(u: &Perm, range: std::ops::Range<usize>) -> FqTensor {
    range
        .map(|i| (Tensor::new(vec![st(&u.word[..i]), st(&u.word[i..])]), Rational::one()))
        .collect()
}

/// `Δ(F_u) = Σ_{i=0..n} F_{st(u_1..u_i)} ⊗ F_{st(u_{i+1}..u_n)}`.
pub fn coproduct(u: &Perm) -> FqTensor {
    cut_range(u, 0..u.len() + 1)
}

/// The reduced coproduct, cut points `1..n−1`.
pub fn reduced_coproduct(u: &Perm) -> FqTensor {
    if u.is_empty() {
        return FqTensor::zero();
    }
    cut_range(u, 1..u.len())
}

/// `Δ≺`: cut points from the position of the maximal letter to `n−1`.
pub fn delta_pre(u: &Perm) -> Result<FqTensor> {
    let p = u.position_of_max().ok_or(Error::EmptyPermutation("delta_pre"))?;
    Ok(cut_range(u, p..u.len()))
}

/// `Δ≻`: cut points before the position of the maximal letter.
pub fn delta_suc(u: &Perm) -> Result<FqTensor> {
    let p = u.position_of_max().ok_or(Error::EmptyPermutation("delta_suc"))?;
    Ok(cut_range(u, 1..p))
}

/// `⟨F_u, F_v⟩ = δ_{u, v⁻¹}`.
pub fn dual_pairing(u: &Perm, v: &Perm) -> Rational {
    if u.len() == v.len() && *u == v.inverse() {
        Rational::one()
    } else {
        Rational::zero()
    }
}

pub fn dual_pairing_elem(x: &FqElem, y: &FqElem) -> Rational {
    let mut acc = Rational::zero();
    for (u, cu) in x.iter() {
        let inv = u.inverse();
        let c = y.coeff(&inv);
        if !c.is_zero() {
            acc += cu * c;
        }
    }
    acc
}

pub fn parse_elem(text: &str) -> Result<FqElem> {
    crate::linear::parse_lincomb(text, |k, offset| {
        Perm::parse(k).map_err(|e| match e {
            Error::Syntax { offset: o, message } => Error::Syntax { offset: offset + o, message },
            other => other,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    fn e(s: &str) -> FqElem {
        parse_elem(s).unwrap()
    }

    fn t(pairs: &[(&str, &str)]) -> FqTensor {
        pairs
            .iter()
            .map(|(a, b)| (Tensor::new(vec![Perm::parse(a).unwrap(), Perm::parse(b).unwrap()]), Rational::one()))
            .collect()
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&[2, 5, 4]).unwrap(), p("132"));
        assert_eq!(standardize(&[1, 2, 3, 4]).unwrap(), Perm::identity(4));
        assert_eq!(standardize(&[5, 4, 3]).unwrap(), p("321"));
        assert!(standardize(&[2, 2]).is_err());
    }

    #[test]
    fn small_products() {
        assert_eq!(product(&p("1"), &p("1")), e("12 + 21"));
        assert_eq!(product(&p("231"), &Perm::empty()), e("231"));
        assert_eq!(prec(&p("1"), &p("1")).unwrap(), e("21"));
        assert_eq!(succ(&p("1"), &p("1")).unwrap(), e("12"));
        assert!(prec(&Perm::empty(), &p("1")).is_err());
    }

    #[test]
    fn small_coproducts() {
        assert!(delta_pre(&p("12")).unwrap().is_zero());
        assert_eq!(delta_suc(&p("12")).unwrap(), t(&[("1", "1")]));
        assert_eq!(coproduct(&Perm::empty()), t(&[("[]", "[]")]));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(dual_pairing(&p("231"), &p("312")), Rational::one());
        assert!(dual_pairing(&p("231"), &p("231")).is_zero());
        assert_eq!(dual_pairing(&p("21"), &p("21")), Rational::one());
    }

    #[test]
    fn text_forms() {
        let long = Perm::new(vec![10, 2, 3, 4, 5, 6, 7, 8, 9, 1]).unwrap();
        assert_eq!(long.to_string(), "[10,2,3,4,5,6,7,8,9,1]");
        assert_eq!(Perm::parse(&long.to_string()).unwrap(), long);
        assert_eq!(Perm::empty().to_string(), "[]");
        assert!(Perm::parse("122").is_err());
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(0), vec![Perm::empty()]);
    }

    #[test]
    fn halves_split_the_product() {
        for n in 1..=4 {
            for m in 1..=(7 - n).min(4) {
                for u in Perm::all(n) {
                    for v in Perm::all(m) {
                        let sum = &prec(&u, &v).unwrap() + &succ(&u, &v).unwrap();
                        assert_eq!(sum, product(&u, &v));
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_adjointness() {
        // ⟨F_u ≺ F_v, F_w⟩ = ⟨F_u ⊗ F_v, Δ≺ F_w⟩ and the ≻ analogue
        for n in 1..=3 {
            for m in 1..=(5 - n) {
                let ws = Perm::all(n + m);
                for u in Perm::all(n) {
                    for v in Perm::all(m) {
                        let lp = prec(&u, &v).unwrap();
                        let ls = succ(&u, &v).unwrap();
                        for w in &ws {
                            let rhs = |t: &FqTensor| -> Rational {
                                t.iter()
                                    .map(|(k, c)| {
                                        c * dual_pairing(&u, &k.factors()[0]) * dual_pairing(&v, &k.factors()[1])
                                    })
                                    .sum()
                            };
                            let w1 = FqElem::basis(w.clone());
                            assert_eq!(dual_pairing_elem(&lp, &w1), rhs(&delta_pre(w).unwrap()));
                            assert_eq!(dual_pairing_elem(&ls, &w1), rhs(&delta_suc(w).unwrap()));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn degrees_add(n in 1usize..5, m in 1usize..4, i in 0usize..120, j in 0usize..24) {
            let us = Perm::all(n);
            let vs = Perm::all(m);
            let (u, v) = (&us[i % us.len()], &vs[j % vs.len()]);
            prop_assert!(product(u, v).keys().all(|k| k.len() == n + m));
            prop_assert!(coproduct(u).keys().all(|k| k.degree() == n));
            let split = &delta_pre(u).unwrap() + &delta_suc(u).unwrap();
            prop_assert_eq!(split, reduced_coproduct(u));
        }
    }
}
