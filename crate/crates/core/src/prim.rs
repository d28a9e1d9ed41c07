//! Iterated half-products, the eulerian projections `T1`, `T2`, `T` and
//! totally primitive subspaces.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{self, Bidendriform, Elem, Tens};
use crate::error::{Error, Result};
use crate::linear::matrix::{Echelon, SparseVec};
use crate::linear::{BasisKey, LinComb, Rational, Tensor};

/// `ω(a_1) = a_1`, `ω(a_1,…,a_n) = a_n ≺ ω(a_1,…,a_{n−1})`.
pub fn omega<A: Bidendriform + ?Sized>(alg: &A, args: &[Elem<A>]) -> Result<Elem<A>> {
    let (first, rest) = args.split_first().ok_or_else(|| Error::Precondition("ω of no arguments".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, a| algebra::prec(alg, a, &acc)))
}

/// `ω′(a_1) = a_1`, `ω′(a_1,…,a_n) = ω′(a_1,…,a_{n−1}) ≻ a_n`.
pub fn omega_prime<A: Bidendriform + ?Sized>(alg: &A, args: &[Elem<A>]) -> Result<Elem<A>> {
    let (first, rest) = args.split_first().ok_or_else(|| Error::Precondition("ω′ of no arguments".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, a| algebra::succ(alg, &acc, a)))
}

/// `m≺^k(a_1⊗…⊗a_k) = m≺^{k−1}(a_2⊗…⊗a_k) ≺ a_1`, on one tensor key.
fn m_pre_key<A: Bidendriform + ?Sized>(alg: &A, factors: &[A::Key]) -> Elem<A> {
    match factors {
        [] => panic!("m≺ of an empty tensor"),
        [a] => LinComb::basis(a.clone()),
        [a, rest @ ..] => algebra::prec(alg, &m_pre_key(alg, rest), &LinComb::basis(a.clone())),
    }
}

/// `m≻^k(a_1⊗…⊗a_k) = a_1 ≻ m≻^{k−1}(a_2⊗…⊗a_k)`, on one tensor key.
fn m_suc_key<A: Bidendriform + ?Sized>(alg: &A, factors: &[A::Key]) -> Elem<A> {
    match factors {
        [] => panic!("m≻ of an empty tensor"),
        [a] => LinComb::basis(a.clone()),
        [a, rest @ ..] => algebra::succ(alg, &LinComb::basis(a.clone()), &m_suc_key(alg, rest)),
    }
}

pub fn m_pre_k<A: Bidendriform + ?Sized>(alg: &A, t: &Tens<A>) -> Elem<A> {
    t.apply(|k| m_pre_key(alg, k.factors()))
}

pub fn m_suc_k<A: Bidendriform + ?Sized>(alg: &A, t: &Tens<A>) -> Elem<A> {
    t.apply(|k| m_suc_key(alg, k.factors()))
}

/// `Δ≺^k`, iterating on the leftmost factor.
pub fn iter_delta_pre<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, k: usize) -> Tens<A> {
    let mut cur = x.as_tensor();
    for _ in 0..k {
        cur = cur.apply(|t| alg.delta_pre(&t.factors()[0]).map_keys(|inner| t.splice(0, inner)));
    }
    cur
}

/// `Δ̃^k`, iterating on the rightmost factor.
pub fn iter_delta_tilde<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>, k: usize) -> Tens<A> {
    let mut cur = x.as_tensor();
    for _ in 0..k {
        cur = cur.apply(|t| {
            let last = t.len() - 1;
            alg.delta_tilde(&t.factors()[last]).map_keys(|inner| t.splice(last, inner))
        });
    }
    cur
}

fn sign(k: usize) -> Rational {
    if k % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `T1 = Σ_{k≥1} (−1)^{k+1} m≺^k ∘ Δ≺^{k−1}`, truncated by the grading.
pub fn t1<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Elem<A> {
    let mut out = Elem::<A>::zero();
    for k in 1..=x.max_degree().max(1) {
        let d = iter_delta_pre(alg, x, k - 1);
        if d.is_zero() {
            break;
        }
        out.add_scaled(&sign(k), &m_pre_k(alg, &d));
    }
    out
}

/// `T2 = Σ_{k≥1} (−1)^{k+1} m≻^k ∘ Δ̃^{k−1}`, defined on `ker Δ≺`.
pub fn t2<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Result<Elem<A>> {
    if !algebra::delta_pre(alg, x).is_zero() {
        return Err(Error::Precondition(format!("T2 needs Δ≺(x) = 0, got x = {x}")));
    }
    let mut out = Elem::<A>::zero();
    for k in 1..=x.max_degree().max(1) {
        let d = iter_delta_tilde(alg, x, k - 1);
        if d.is_zero() {
            break;
        }
        out.add_scaled(&sign(k), &m_suc_k(alg, &d));
    }
    Ok(out)
}

/// `T = T2 ∘ T1`, the projection onto `Prim_tot`.
pub fn t_total<A: Bidendriform + ?Sized>(alg: &A, x: &Elem<A>) -> Elem<A> {
    t2(alg, &t1(alg, x)).expect("T1 lands in ker Δ≺")
}

/// A subspace of a graded component, kept as a reduced echelon basis whose
/// pivots are the largest basis keys, each with coefficient one.
#[derive(Clone, Debug)]
pub struct GradedSubspace<K: BasisKey> {
    pub degree: usize,
    basis: Vec<K>,
    index: BTreeMap<K, usize>,
    echelon: Echelon,
}

impl<K: BasisKey> GradedSubspace<K> {
    pub fn new(degree: usize, mut basis: Vec<K>) -> Self {
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Self { degree, basis, index, echelon: Echelon::new() }
    }

    pub fn ambient(&self) -> &[K] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    fn to_sparse(&self, x: &LinComb<K>) -> Result<SparseVec> {
        x.iter()
            .map(|(k, c)| {
                let i = self.index.get(k).ok_or_else(|| {
                    Error::Precondition(format!("{k} is not in the degree-{} basis", self.degree))
                })?;
                Ok((*i, c.clone()))
            })
            .collect()
    }

    fn vector_of(&self, v: &SparseVec) -> LinComb<K> {
        v.iter().map(|(&i, c)| (self.basis[i].clone(), c.clone())).collect()
    }

    /// Adds a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, x: &LinComb<K>) -> Result<bool> {
        let v = self.to_sparse(x)?;
        Ok(self.echelon.insert(&v))
    }

    pub fn contains(&self, x: &LinComb<K>) -> Result<bool> {
        Ok(self.echelon.contains(&self.to_sparse(x)?))
    }

    /// The canonical basis vectors, by increasing pivot.
    pub fn vectors(&self) -> Vec<LinComb<K>> {
        self.echelon.rows().map(|r| self.vector_of(r)).collect()
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.vectors() == other.vectors()
    }
}

/// `ker Δ≺ ∩ ker Δ≻` in degree `n`, by exact kernel computation.
pub fn prim_tot_basis<A: Bidendriform + ?Sized>(alg: &A, n: usize) -> GradedSubspace<A::Key> {
    let mut out = GradedSubspace::new(n, alg.basis(n));
    let mut rows: BTreeMap<(bool, Tensor<A::Key>), SparseVec> = BTreeMap::new();
    for (j, u) in out.ambient().iter().enumerate() {
        for (side, t) in [(false, alg.delta_pre(u)), (true, alg.delta_suc(u))] {
            for (k, c) in t.iter() {
                rows.entry((side, k.clone())).or_default().insert(j, c.clone());
            }
        }
    }
    let mut eq = Echelon::new();
    for r in rows.values() {
        eq.insert(r);
    }
    for v in eq.kernel(out.ambient().len()) {
        let x = out.vector_of(&v);
        out.insert(&x).expect("kernel vector in the ambient basis");
    }
    out
}

/// `span{T(u)}` over the degree-`n` basis.
pub fn image_of_t<A: Bidendriform + ?Sized>(alg: &A, n: usize) -> GradedSubspace<A::Key> {
    let mut out = GradedSubspace::new(n, alg.basis(n));
    for u in alg.basis(n) {
        let x = t_total(alg, &LinComb::basis(u));
        out.insert(&x).expect("T preserves degree");
    }
    out
}

/// `A^{D2}` in degree `n`: the span of all `x≺y`, `x≻y` of basis keys.
pub fn decomposables<A: Bidendriform + ?Sized>(alg: &A, n: usize) -> GradedSubspace<A::Key> {
    let mut out = GradedSubspace::new(n, alg.basis(n));
    for k in 1..n {
        for a in alg.basis(k) {
            for b in alg.basis(n - k) {
                out.insert(&alg.prec(&a, &b)).expect("homogeneous product");
                out.insert(&alg.succ(&a, &b)).expect("homogeneous product");
            }
        }
    }
    out
}

/// Iterated half-products of totally primitive vectors: the dendriform
/// subalgebra generated by `Prim_tot`, degree by degree up to `max`.
pub fn generated_dims<A: Bidendriform + ?Sized>(alg: &A, max: usize) -> Vec<usize> {
    let mut parts: Vec<GradedSubspace<A::Key>> = Vec::new();
    for n in 1..=max {
        let mut g = prim_tot_basis(alg, n);
        for k in 1..n {
            let left = parts[k - 1].vectors();
            let right = parts[n - k - 1].vectors();
            for x in &left {
                for y in &right {
                    g.insert(&algebra::prec(alg, x, y)).expect("homogeneous product");
                    g.insert(&algebra::succ(alg, x, y)).expect("homogeneous product");
                }
            }
        }
        parts.push(g);
    }
    parts.iter().map(GradedSubspace::dim).collect()
}

/// Tensor `x_1 ⊗ … ⊗ x_n` of elements.
pub fn tensor_all<K: BasisKey>(xs: &[LinComb<K>]) -> LinComb<Tensor<K>> {
    xs.iter().fold(LinComb::basis(Tensor::scalar()), |acc, x| {
        acc.bilinear(x, |t, k| LinComb::basis(t.concat(&Tensor::new(vec![k.clone()]))))
    })
}

/// Checks the iterated-coproduct expansions of `ω` and `ω′` for all `k`:
/// `Δ≺^k ω(a) = Σ ω(a_1..a_{i_1}) ⊗ … ⊗ ω(a_{i_k+1}..a_n)` (with `a_1 ∈ ker Δ≺`,
/// the others in `ker Δ̃`), and the same for `ω′` with `Δ̃^k` (all in `ker Δ̃`).
pub fn omega_expansion_check<A: Bidendriform + ?Sized>(alg: &A, ps: &[Elem<A>]) -> Result<bool> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::Precondition("no arguments".into()));
    }
    let first_left_primitive = algebra::delta_pre(alg, &ps[0]).is_zero();
    let all_primitive = ps.iter().all(|p| algebra::delta_tilde(alg, p).is_zero());
    let rest_primitive = ps[1..].iter().all(|p| algebra::delta_tilde(alg, p).is_zero());
    if !(first_left_primitive && rest_primitive) {
        return Err(Error::Precondition("ω needs a_1 ∈ ker Δ≺ and a_2..a_n ∈ ker Δ̃".into()));
    }
    let w = omega(alg, ps)?;
    for k in 0..=n {
        let want = split_sum(n, k, |i, j| omega(alg, &ps[i..j]))?;
        if iter_delta_pre(alg, &w, k) != want {
            return Ok(false);
        }
    }
    if all_primitive {
        let w = omega_prime(alg, ps)?;
        for k in 0..=n {
            let want = split_sum(n, k, |i, j| omega_prime(alg, &ps[i..j]))?;
            if iter_delta_tilde(alg, &w, k) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{0<i_1<…<i_k<n} f(0,i_1) ⊗ f(i_1,i_2) ⊗ … ⊗ f(i_k,n)`.
fn split_sum<K: BasisKey>(
    n: usize,
    k: usize,
    mut f: impl FnMut(usize, usize) -> Result<LinComb<K>>,
) -> Result<LinComb<Tensor<K>>> {
    let mut out = LinComb::zero();
    if k >= n {
        return Ok(out);
    }
    let mut cuts: Vec<usize> = (1..=k).collect();
    loop {
        let mut bounds = vec![0];
        bounds.extend(&cuts);
        bounds.push(n);
        let parts = bounds.windows(2).map(|w| f(w[0], w[1])).collect::<Result<Vec<_>>>()?;
        out.add_assign_ref(&tensor_all(&parts));
        let Some(i) = (0..k).rev().find(|&i| cuts[i] < n - k + i) else {
            break;
        };
        cuts[i] += 1;
        for j in i + 1..k {
            cuts[j] = cuts[j - 1] + 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fqsym, Hck, HckVariant};
    use crate::fqsym::{parse_elem, Perm};
    use crate::pforest::DecorationSet;

    fn e(s: &str) -> Elem<Fqsym> {
        parse_elem(s).unwrap()
    }

    #[test]
    fn omega_words() {
        assert_eq!(omega(&Fqsym, &[e("1")]).unwrap(), e("1"));
        assert_eq!(omega(&Fqsym, &[e("12"), e("1")]).unwrap(), algebra::prec(&Fqsym, &e("1"), &e("12")));
        assert_eq!(omega_prime(&Fqsym, &[e("1"), e("1")]).unwrap(), e("12"));
    }

    #[test]
    fn nested_products() {
        let t = tensor_all(&[e("1"), e("12")]);
        assert_eq!(m_pre_k(&Fqsym, &tensor_all(&[e("1")])), e("1"));
        assert_eq!(m_pre_k(&Fqsym, &t), algebra::prec(&Fqsym, &e("12"), &e("1")));
        assert_eq!(m_suc_k(&Fqsym, &t), algebra::succ(&Fqsym, &e("1"), &e("12")));
    }

    #[test]
    fn projection_examples() {
        assert!(t1(&Fqsym, &e("21")).is_zero());
        assert!(t2(&Fqsym, &e("12")).unwrap().is_zero());
        assert!(t2(&Fqsym, &e("21")).is_err());
        let v = e("231 + -1*132");
        assert_eq!(t1(&Fqsym, &v), v);
        assert_eq!(t2(&Fqsym, &v).unwrap(), v);
        let t = t_total(&Fqsym, &e("231"));
        let p3 = prim_tot_basis(&Fqsym, 3);
        assert!(p3.contains(&t).unwrap());
        assert_eq!(p3.vectors(), vec![v]);
    }

    #[test]
    fn projections_are_idempotent() {
        for n in 1..=4 {
            for u in Perm::all(n) {
                let x = LinComb::basis(u);
                let a = t1(&Fqsym, &x);
                assert_eq!(t1(&Fqsym, &a), a);
                assert!(algebra::delta_pre(&Fqsym, &a).is_zero());
                let b = t2(&Fqsym, &a).unwrap();
                assert_eq!(t2(&Fqsym, &b).unwrap(), b);
                let t = t_total(&Fqsym, &x);
                assert_eq!(t_total(&Fqsym, &t), t);
            }
        }
    }

    #[test]
    fn kernel_matches_image() {
        let dims: Vec<usize> = (1..=4).map(|n| prim_tot_basis(&Fqsym, n).dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 6]);
        for n in 1..=4 {
            assert!(prim_tot_basis(&Fqsym, n).same_span(&image_of_t(&Fqsym, n)));
        }
    }

    #[test]
    fn residual_is_decomposable() {
        for n in 2..=4 {
            let d2 = decomposables(&Fqsym, n);
            for u in Perm::all(n) {
                let x = LinComb::basis(u);
                assert!(d2.contains(&(&x - &t1(&Fqsym, &x))).unwrap());
                assert!(d2.contains(&(&x - &t_total(&Fqsym, &x))).unwrap());
            }
        }
    }

    #[test]
    fn generation() {
        assert_eq!(generated_dims(&Fqsym, 4), vec![1, 2, 6, 24]);
    }

    #[test]
    fn forests_have_only_generators() {
        let h = Hck::new(DecorationSet::single(), 4, HckVariant::Standard).unwrap();
        let dims: Vec<usize> = (1..=4).map(|n| prim_tot_basis(&h, n).dim()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
        let star = LinComb::basis(h.parse_key("*").unwrap());
        assert_eq!(t_total(&h, &star), star);
    }

    #[test]
    fn omega_expansions() {
        let f1 = e("1");
        let v3 = e("231 + -1*132");
        assert!(omega_expansion_check(&Fqsym, std::slice::from_ref(&f1)).unwrap());
        assert!(omega_expansion_check(&Fqsym, &[f1.clone(), f1.clone()]).unwrap());
        assert!(omega_expansion_check(&Fqsym, &[f1.clone(), v3.clone()]).unwrap());
        assert!(omega_expansion_check(&Fqsym, &[v3, f1.clone(), f1.clone()]).unwrap());
        let w = omega_prime(&Fqsym, &[f1.clone(), f1.clone()]).unwrap();
        assert_eq!(algebra::delta_tilde(&Fqsym, &w), tensor_all(&[f1.clone(), f1.clone()]));
        assert!(iter_delta_pre(&Fqsym, &omega(&Fqsym, &[f1.clone(), e("231 + -1*132")]).unwrap(), 2).is_zero());
        assert!(omega_expansion_check(&Fqsym, &[f1, e("12")]).is_err());
    }
}
