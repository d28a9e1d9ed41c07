//! The Hopf algebra of decorated planar forests and its half-coproducts.
//!
//! `Δ≺` is computed by a recursion over the decomposition of a forest into
//! `B⁺` and products, and is checked against the cut-based description in
//! debug builds.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{LinComb, Rational, Tensor};
use crate::pforest::{
    b_plus, enumerate_cuts, is_left_cut, is_prime_left_cut, rightmost_path_indices, Forest,
};

pub type HckElem = LinComb<Forest>;
pub type HckTensor = LinComb<Tensor<Forest>>;

fn pair_key(a: Forest, b: Forest) -> Tensor<Forest> {
    Tensor::new(vec![a, b])
}

fn push(out: &mut HckTensor, c: &Rational, a: Forest, b: Forest) {
    out.add_term(pair_key(a, b), c.clone());
}

/// Bilinear concatenation of forests.
pub fn concat(x: &HckElem, y: &HckElem) -> HckElem {
    x.bilinear(y, |a, b| LinComb::basis(a.concat(b)))
}

/// Full coproduct `Δ(F) = F⊗1 + 1⊗F + Σ P^c(F)⊗R^c(F)`.
pub fn coproduct(f: &Forest) -> HckTensor {
    let mut out = reduced_coproduct(f);
    if f.is_unit() {
        out.add_term(pair_key(Forest::unit(), Forest::unit()), Rational::one());
        return out;
    }
    out.add_term(pair_key(f.clone(), Forest::unit()), Rational::one());
    out.add_term(pair_key(Forest::unit(), f.clone()), Rational::one());
    out
}

/// Reduced coproduct `Δ̃(F) = Δ(F) − F⊗1 − 1⊗F`; zero on the unit.
pub fn reduced_coproduct(f: &Forest) -> HckTensor {
    let mut out = HckTensor::zero();
    if f.is_unit() {
        return out;
    }
    for (_, p, r) in enumerate_cuts(f) {
        out.add_term(pair_key(p, r), Rational::one());
    }
    out
}

pub fn coproduct_elem(x: &HckElem) -> HckTensor {
    x.apply(coproduct)
}

pub fn reduced_coproduct_elem(x: &HckElem) -> HckTensor {
    x.apply(reduced_coproduct)
}

/// `ε(F) = δ_{F,1}`, extended linearly.
pub fn counit(x: &HckElem) -> Rational {
    x.coeff(&Forest::unit())
}

fn nonempty(f: &Forest, op: &'static str) -> Result<()> {
    if f.is_unit() {
        Err(Error::EmptyForest(op))
    } else {
        Ok(())
    }
}

/// `Δ≺` by filtering admissible cuts: an edge of the rightmost path of the last
/// tree is cut, or the last tree is totally cut and `F` has several trees.
pub fn delta_pre_cuts(f: &Forest) -> Result<HckTensor> {
    nonempty(f, "delta_pre")?;
    let path = rightmost_path_indices(f);
    let mut out = HckTensor::zero();
    for (cut, p, r) in enumerate_cuts(f) {
        if is_left_cut(&cut, &path, f.roots()) {
            out.add_term(pair_key(p, r), Rational::one());
        }
    }
    Ok(out)
}

type Halves = (HckTensor, HckTensor);

fn halves_cache() -> &'static RwLock<HashMap<Forest, Halves>> {
    static CACHE: OnceLock<RwLock<HashMap<Forest, Halves>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `(Δ≺F, Δ≻F)` from the recursion on `B⁺` and on the split `F = t·rest`.
pub fn delta_halves_recursive(f: &Forest) -> Result<Halves> {
    nonempty(f, "delta_pre")?;
    if let Some(h) = halves_cache().read().expect("cache poisoned").get(f) {
        return Ok(h.clone());
    }
    let h = if f.roots() == 1 {
        tree_halves(f)
    } else {
        let (a, b) = f.split_first().expect("nonempty");
        product_halves(&a, &b)
    };
    halves_cache().write().expect("cache poisoned").insert(f.clone(), h.clone());
    Ok(h)
}

fn tree_halves(f: &Forest) -> Halves {
    let t = &f.trees()[0];
    let d = t.decoration();
    let g = t.branches();
    let mut pre = HckTensor::zero();
    let mut suc = HckTensor::zero();
    if g.is_unit() {
        return (pre, suc);
    }
    let (gp, gs) = delta_halves_recursive(&g).expect("nonempty");
    for (k, c) in gp.iter() {
        let [l, r] = k.factors() else { unreachable!() };
        push(&mut pre, c, l.clone(), Forest::single(b_plus(d, r)));
    }
    push(&mut pre, &Rational::one(), g.clone(), Forest::node(d));
    for (k, c) in gs.iter() {
        let [l, r] = k.factors() else { unreachable!() };
        push(&mut suc, c, l.clone(), Forest::single(b_plus(d, r)));
    }
    (pre, suc)
}

fn product_halves(a: &Forest, b: &Forest) -> Halves {
    let (ap, asuc) = delta_halves_recursive(a).expect("nonempty");
    let at = &ap + &asuc;
    let (bp, bs) = delta_halves_recursive(b).expect("nonempty");
    let one = Rational::one();
    let mut pre = HckTensor::zero();
    let mut suc = HckTensor::zero();
    for (out, bh) in [(&mut pre, &bp), (&mut suc, &bs)] {
        for (ka, ca) in at.iter() {
            let [a1, a2] = ka.factors() else { unreachable!() };
            for (kb, cb) in bh.iter() {
                let [b1, b2] = kb.factors() else { unreachable!() };
                push(out, &(ca * cb), a1.concat(b1), a2.concat(b2));
            }
        }
        for (kb, cb) in bh.iter() {
            let [b1, b2] = kb.factors() else { unreachable!() };
            push(out, cb, a.concat(b1), b2.clone());
            push(out, cb, b1.clone(), a.concat(b2));
        }
    }
    for (ka, ca) in at.iter() {
        let [a1, a2] = ka.factors() else { unreachable!() };
        push(&mut pre, ca, a1.concat(b), a2.clone());
        push(&mut suc, ca, a1.clone(), a2.concat(b));
    }
    push(&mut pre, &one, b.clone(), a.clone());
    push(&mut suc, &one, a.clone(), b.clone());
    (pre, suc)
}

/// The left half-coproduct `Δ≺`.
pub fn delta_pre(f: &Forest) -> Result<HckTensor> {
    let (pre, _) = delta_halves_recursive(f)?;
    debug_assert_eq!(pre, delta_pre_cuts(f)?, "Δ≺ algorithms disagree on {f}");
    Ok(pre)
}

/// The right half-coproduct `Δ≻ = Δ̃ − Δ≺`.
pub fn delta_suc(f: &Forest) -> Result<HckTensor> {
    Ok(&reduced_coproduct(f) - &delta_pre(f)?)
}

/// `Δ′≺`: cuts that totally cut the last tree. Zero on single trees.
pub fn delta_pre_prime(f: &Forest) -> Result<HckTensor> {
    nonempty(f, "delta_pre_prime")?;
    let mut out = HckTensor::zero();
    for (cut, p, r) in enumerate_cuts(f) {
        if is_prime_left_cut(&cut) {
            out.add_term(pair_key(p, r), Rational::one());
        }
    }
    Ok(out)
}

/// `Δ′≻ = Δ̃ − Δ′≺`.
pub fn delta_suc_prime(f: &Forest) -> Result<HckTensor> {
    Ok(&reduced_coproduct(f) - &delta_pre_prime(f)?)
}

pub fn delta_pre_elem(x: &HckElem) -> Result<HckTensor> {
    x.apply_result(delta_pre)
}

pub fn delta_suc_elem(x: &HckElem) -> Result<HckTensor> {
    x.apply_result(delta_suc)
}

/// `Δ≺^k`, iterating on the leftmost factor; `Δ≺^0` is the identity.
pub fn iter_delta_pre(x: &HckElem, k: usize) -> Result<HckTensor> {
    let mut cur = x.as_tensor();
    for _ in 0..k {
        let mut next = HckTensor::zero();
        for (t, c) in cur.iter() {
            let image = delta_pre(&t.factors()[0])?;
            for (inner, ci) in image.iter() {
                next.add_term(t.splice(0, inner), c * ci);
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `Δ̃^k`, iterating on the rightmost factor; `Δ̃^0` is the identity.
pub fn iter_delta_tilde(x: &HckElem, k: usize) -> HckTensor {
    let mut cur = x.as_tensor();
    for _ in 0..k {
        cur = cur.apply(|t| {
            let last = t.len() - 1;
            reduced_coproduct(&t.factors()[last]).map_keys(|inner| t.splice(last, inner))
        });
    }
    cur
}

fn antipode_cache() -> &'static RwLock<HashMap<Forest, HckElem>> {
    static CACHE: OnceLock<RwLock<HashMap<Forest, HckElem>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Antipode by the left recursion `S(F) = −F − Σ S(F′)F″` over `Δ̃`.
pub fn antipode_basis(f: &Forest) -> HckElem {
    if f.is_unit() {
        return HckElem::basis(Forest::unit());
    }
    if let Some(s) = antipode_cache().read().expect("cache poisoned").get(f) {
        return s.clone();
    }
    let mut s = -HckElem::basis(f.clone());
    for (k, c) in reduced_coproduct(f).iter() {
        let [l, r] = k.factors() else { unreachable!() };
        let part = concat(&antipode_basis(l), &HckElem::basis(r.clone()));
        s.add_scaled(&-c, &part);
    }
    antipode_cache().write().expect("cache poisoned").insert(f.clone(), s.clone());
    s
}

pub fn antipode(x: &HckElem) -> HckElem {
    x.apply(antipode_basis)
}

/// Antipode by the right recursion `S(F) = −F − Σ F′S(F″)`, unmemoized.
pub fn antipode_right(f: &Forest) -> HckElem {
    if f.is_unit() {
        return HckElem::basis(Forest::unit());
    }
    let mut s = -HckElem::basis(f.clone());
    for (k, c) in reduced_coproduct(f).iter() {
        let [l, r] = k.factors() else { unreachable!() };
        s.add_scaled(&-c, &concat(&HckElem::basis(l.clone()), &antipode_right(r)));
    }
    s
}

/// `m∘(S⊗Id)∘Δ`.
pub fn antipode_convolution(f: &Forest) -> HckElem {
    let mut out = HckElem::zero();
    for (k, c) in coproduct(f).iter() {
        let [l, r] = k.factors() else { unreachable!() };
        out.add_scaled(c, &concat(&antipode_basis(l), &HckElem::basis(r.clone())));
    }
    out
}

/// Multiplies the factors of each tensor key together.
pub fn multiply_out(t: &HckTensor) -> HckElem {
    t.map_keys(|k| k.factors().iter().fold(Forest::unit(), |acc, f| acc.concat(f)))
}
