//! The bidendriform pairing on decorated forests.
//!
//! [`pair`] follows the recursion on the left argument; [`pair_oracle`]
//! counts order-compatible bijections between vertex sets.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hck::{coproduct, HckElem, HckTensor};
use crate::linear::matrix::{determinant, rank, IntMatrix};
use crate::linear::{BasisKey, Rational};
use crate::pforest::{enumerate_forests, xi, DecorationSet, Forest, Tree};

/// Largest vertex count accepted by [`pair_oracle`].
pub const ORACLE_CAP: usize = 9;

fn memo() -> &'static RwLock<HashMap<(Forest, Forest), u128>> {
    static MEMO: OnceLock<RwLock<HashMap<(Forest, Forest), u128>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `⟨F, G⟩` by recursion on `F`: `⟨1,y⟩ = ε(y)`, `⟨B⁺_d(x),y⟩ = ⟨x,ξ_d(y)⟩`,
/// and `⟨t·x, z⟩ = ⟨t⊗x, Δz⟩` for the first tree `t`.
pub fn pair_count(f: &Forest, g: &Forest) -> u128 {
    if f.degree() != g.degree() || f.weight() != g.weight() {
        return 0;
    }
    if f.is_unit() {
        return 1;
    }
    let key = (f.clone(), g.clone());
    if let Some(&v) = memo().read().expect("pairing memo poisoned").get(&key) {
        return v;
    }
    let v = if f.roots() == 1 {
        let t = &f.trees()[0];
        match xi(t.decoration(), g).expect("nonempty by weight") {
            Some(h) => pair_count(&t.branches(), &h),
            None => 0,
        }
    } else {
        let (first, rest) = f.split_first().expect("several trees");
        split_sum(&first, &rest, g)
    };
    memo().write().expect("pairing memo poisoned").insert(key, v);
    v
}

fn split_sum(a: &Forest, b: &Forest, g: &Forest) -> u128 {
    coproduct(g)
        .iter()
        .filter(|(k, _)| k.factors()[0].degree() == a.degree())
        .map(|(k, c)| {
            let c = c.to_integer().to_u128().expect("coproduct coefficients are positive");
            c * pair_count(a, &k.factors()[0]) * pair_count(b, &k.factors()[1])
        })
        .sum()
}

/// The same recursion with multi-tree forests split as (all but last)·(last).
pub fn pair_split_last(f: &Forest, g: &Forest) -> u128 {
    match f.split_last() {
        Some((a, b)) if f.roots() > 1 && f.weight() == g.weight() => split_sum(&a, &b, g),
        _ => pair_count(f, g),
    }
}

pub fn pair(f: &Forest, g: &Forest) -> Rational {
    Rational::from_integer(BigInt::from(pair_count(f, g)))
}

/// Bilinear extension of [`pair`].
pub fn pair_elem(x: &HckElem, y: &HckElem) -> Rational {
    let mut acc = Rational::zero();
    for (f, cf) in x.iter() {
        for (g, cg) in y.iter() {
            let v = pair_count(f, g);
            if v != 0 {
                acc += cf * cg * Rational::from_integer(BigInt::from(v));
            }
        }
    }
    acc
}

/// `⟨a⊗b, T⟩ = Σ c ⟨a,P⟩⟨b,R⟩` for a two-factor tensor `T`.
pub fn pair_tensor(a: &Forest, b: &Forest, t: &HckTensor) -> Rational {
    let mut acc = Rational::zero();
    for (k, c) in t.iter() {
        let v = pair_count(a, &k.factors()[0]) * pair_count(b, &k.factors()[1]);
        if v != 0 {
            acc += c * Rational::from_integer(BigInt::from(v));
        }
    }
    acc
}

/// Vertices in pre-order with subtree sizes and decorations.
struct Vertices {
    size: Vec<usize>,
    deco: Vec<String>,
}

impl Vertices {
    fn of(f: &Forest) -> Self {
        fn walk(t: &Tree, v: &mut Vertices) {
            let i = v.size.len();
            v.size.push(0);
            v.deco.push(t.decoration().label().to_string());
            t.children().iter().for_each(|c| walk(c, v));
            v.size[i] = v.size.len() - i;
        }
        let mut v = Vertices { size: Vec::new(), deco: Vec::new() };
        f.trees().iter().for_each(|t| walk(t, &mut v));
        v
    }

    /// `x ≥_high y`: `x` is `y` or a descendant of `y`.
    fn high(&self, x: usize, y: usize) -> bool {
        y <= x && x < y + self.size[y]
    }
}

/// `x ≥_{d,l} y`: `x` is left of `y` or an ancestor of `y`, that is, `x` comes
/// no later than `y` in pre-order.
fn dl(x: usize, y: usize) -> bool {
    x <= y
}

/// `card I(F,G)`: bijections `vert(F) → vert(G)` preserving decorations with
/// `x ≥_high y ⇒ f(x) ≥_{d,l} f(y)` and `f(x) ≥_high f(y) ⇒ x ≥_{d,l} y`.
pub fn pair_oracle_count(f: &Forest, g: &Forest) -> Result<u128> {
    let n = f.weight();
    if n > ORACLE_CAP || g.weight() > ORACLE_CAP {
        return Err(Error::OracleCap(n.max(g.weight())));
    }
    if n != g.weight() || f.decoration_multiset() != g.decoration_multiset() {
        return Ok(0);
    }
    let vf = Vertices::of(f);
    let vg = Vertices::of(g);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(search(0, &vf, &vg, &mut image, &mut used))
}

fn search(x: usize, vf: &Vertices, vg: &Vertices, image: &mut [usize], used: &mut [bool]) -> u128 {
    let n = image.len();
    if x == n {
        return 1;
    }
    let mut total = 0;
    for y in 0..n {
        if used[y] || vf.deco[x] != vg.deco[y] {
            continue;
        }
        let ok = (0..x).all(|z| {
            let fz = image[z];
            let c1 = (!vf.high(x, z) || dl(y, fz)) && (!vf.high(z, x) || dl(fz, y));
            let c2 = (!vg.high(y, fz) || dl(x, z)) && (!vg.high(fz, y) || dl(z, x));
            c1 && c2
        });
        if ok {
            image[x] = y;
            used[y] = true;
            total += search(x + 1, vf, vg, image, used);
            used[y] = false;
        }
    }
    total
}

pub fn pair_oracle(f: &Forest, g: &Forest) -> Result<Rational> {
    Ok(Rational::from_integer(BigInt::from(pair_oracle_count(f, g)?)))
}

/// Pairing values on the degree-`n` forest basis.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub degree: usize,
    pub basis: Vec<Forest>,
    pub entries: IntMatrix,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("forest");
        for f in &self.basis {
            out.push('\t');
            out.push_str(f.code());
        }
        out.push('\n');
        for (f, row) in self.basis.iter().zip(&self.entries) {
            out.push_str(f.code());
            for v in row {
                out.push('\t');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// The Gram matrix in degree `n` with rows in canonical forest order.
pub fn gram(d: &DecorationSet, n: usize) -> Result<GramMatrix> {
    let basis: Vec<Forest> = enumerate_forests(d, n).iter().cloned().collect();
    gram_on(n, basis)
}

/// The Gram matrix on an explicit list of forests.
pub fn gram_on(degree: usize, basis: Vec<Forest>) -> Result<GramMatrix> {
    let entries: IntMatrix = basis
        .par_iter()
        .map(|f| basis.iter().map(|g| BigInt::from(pair_count(f, g))).collect())
        .collect();
    let g = GramMatrix { degree, basis, entries };
    if !g.is_symmetric() {
        return Err(Error::Verification(format!("Gram matrix of degree {degree} is not symmetric")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hck::{antipode, delta_pre};
    use crate::pforest::{ladder, parse_forest};

    fn f(s: &str) -> Forest {
        parse_forest(s, &DecorationSet::infer_from(s)).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(pair_count(&f("*"), &f("*")), 1);
        assert_eq!(pair_count(&f("* *"), &f("* *")), 2);
        assert_eq!(pair_count(&f("* *"), &f("*[*]")), 1);
        assert_eq!(pair_count(&f("*[*]"), &f("*[*]")), 1);
        assert_eq!(pair_count(&f("*[*] * *"), &f("* *[*] *")), 7);
        assert_eq!(pair_count(&f("* *"), &f("*")), 0);
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(pair_oracle_count(&f("*[*]"), &f("*[*]")).unwrap(), 1);
        assert_eq!(pair_oracle_count(&f("* *"), &f("*[*]")).unwrap(), 1);
        assert_eq!(pair_oracle_count(&f("* * *"), &f("* * *")).unwrap(), 6);
        let big = ladder(10);
        assert_eq!(pair_oracle_count(&big, &big), Err(Error::OracleCap(10)));
    }

    #[test]
    fn decorated_generators() {
        let d = DecorationSet::from_pairs(&[("d", 1), ("e", 1)]).unwrap();
        let x = parse_forest("d", &d).unwrap();
        let y = parse_forest("e", &d).unwrap();
        assert_eq!(pair_count(&x, &x), 1);
        assert_eq!(pair_count(&x, &y), 0);
        for n in 1..=3 {
            for a in enumerate_forests(&d, n).iter() {
                for b in enumerate_forests(&d, n).iter() {
                    assert_eq!(pair_count(a, b), pair_oracle_count(a, b).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn symmetric_and_bracketing_free() {
        let d = DecorationSet::single();
        for n in 1..=5 {
            let fs = enumerate_forests(&d, n);
            for a in fs.iter() {
                for b in fs.iter() {
                    assert_eq!(pair_count(a, b), pair_count(b, a));
                    assert_eq!(pair_count(a, b), pair_split_last(a, b));
                }
            }
        }
    }

    #[test]
    fn left_half_adjointness_with_grafting() {
        // ⟨B⁺(x), y⟩ = ⟨* ⊗ x, Δ≺ y⟩
        let d = DecorationSet::single();
        let star = f("*");
        for n in 2..=5 {
            for x in enumerate_forests(&d, n - 1).iter() {
                let bx = Forest::single(crate::pforest::b_plus(&crate::pforest::Decoration::star(), x));
                for y in enumerate_forests(&d, n).iter() {
                    assert_eq!(pair(&bx, y), pair_tensor(&star, x, &delta_pre(y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn antipode_is_self_adjoint() {
        let d = DecorationSet::single();
        for n in 1..=4 {
            let fs = enumerate_forests(&d, n);
            for a in fs.iter() {
                let sa = antipode(&HckElem::basis(a.clone()));
                for b in fs.iter() {
                    let sb = antipode(&HckElem::basis(b.clone()));
                    assert_eq!(
                        pair_elem(&sa, &HckElem::basis(b.clone())),
                        pair_elem(&HckElem::basis(a.clone()), &sb)
                    );
                }
            }
        }
    }

    #[test]
    fn gram_small() {
        let g = gram(&DecorationSet::single(), 1).unwrap();
        assert_eq!(g.entries, vec![vec![BigInt::from(1)]]);
        let g3 = gram(&DecorationSet::single(), 3).unwrap();
        assert_eq!(g3.rank(), 5);
        assert!(g3.to_tsv().starts_with("forest\t* * *\t"));
    }
}
