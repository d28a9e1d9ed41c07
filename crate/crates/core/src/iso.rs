//! The isomorphism `Ψ` from decorated forests onto FQSym, with decorations
//! counted by the totally primitive dimensions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{self, Fqsym, Hck, HckVariant};
use crate::error::{Error, Result};
use crate::fqsym::{self, FqElem, FqTensor, Perm};
use crate::hck::{self, HckElem};
use crate::linear::{LinComb, Tensor};
use crate::pforest::{enumerate_forests, Decoration, DecorationSet, Forest, Tree};
use crate::prim::{prim_tot_basis, GradedSubspace};
use crate::series::{r_from_d, Series};

/// Default largest degree for [`verify_iso`].
pub const DEFAULT_MAX: usize = 5;

/// Largest degree for which the intertwining checks run.
const MORPHISM_MAX: usize = 4;

/// Decorations `p<n>_<i>` and their images in `Prim_tot(FQSym)`.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub max: usize,
    pub decorations: DecorationSet,
    pub images: BTreeMap<String, FqElem>,
}

/// One decoration per echelon basis vector of `Prim_tot(FQSym)_n`, `n ≤ max`.
pub fn build_decorations(max: usize) -> Result<IsoWitness> {
    let mut decorations = DecorationSet::empty();
    let mut images = BTreeMap::new();
    for n in 1..=max {
        for (i, v) in prim_tot_basis(&Fqsym, n).vectors().into_iter().enumerate() {
            let label = format!("p{n}_{}", i + 1);
            decorations.push(Decoration::new(&label, n)?)?;
            images.insert(label, v);
        }
    }
    Ok(IsoWitness { max, decorations, images })
}

impl IsoWitness {
    fn image(&self, d: &Decoration) -> Result<&FqElem> {
        self.images.get(d.label()).ok_or_else(|| Error::UnknownDecoration(d.label().to_string()))
    }

    fn psi_tree(&self, t: &Tree) -> Result<FqElem> {
        let p = self.image(t.decoration())?;
        let below = t.branches();
        if below.is_unit() {
            return Ok(p.clone());
        }
        Ok(algebra::prec(&Fqsym, p, &self.psi(&below)?))
    }

    /// `Ψ(t_1…t_m) = Ψ(t_1)⋯Ψ(t_m)`, `Ψ(B⁺_d F) = p_d ≺ Ψ(F)`.
    pub fn psi(&self, f: &Forest) -> Result<FqElem> {
        let mut out = FqElem::basis(Perm::empty());
        for t in f.trees() {
            let x = self.psi_tree(t)?;
            out = out.bilinear(&x, fqsym::product);
        }
        Ok(out)
    }

    pub fn psi_elem(&self, x: &HckElem) -> Result<FqElem> {
        x.apply_result(|f| self.psi(f))
    }

    pub fn psi_tensor(&self, t: &LinComb<Tensor<Forest>>) -> Result<FqTensor> {
        t.apply_result(|k| {
            let parts = k.factors().iter().map(|f| self.psi(f)).collect::<Result<Vec<_>>>()?;
            Ok(crate::prim::tensor_all(&parts))
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub decorations: usize,
    pub forests: usize,
    pub expected: String,
    pub rank: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub max: usize,
    pub degrees: Vec<DegreeReport>,
    pub morphism_max: usize,
    pub morphism_ok: bool,
    pub witness: Option<String>,
    pub ok: bool,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Rank of `Ψ` on the degree-`n` forests, as a subspace of FQSym.
fn image_rank(w: &IsoWitness, forests: &[Forest], n: usize) -> Result<usize> {
    let images = forests.par_iter().map(|f| w.psi(f)).collect::<Result<Vec<_>>>()?;
    let mut span = GradedSubspace::new(n, Perm::all(n));
    for x in &images {
        span.insert(x)?;
    }
    Ok(span.dim())
}

/// First forest on which `Ψ` fails to intertwine a structure map, if any.
fn morphism_witness(w: &IsoWitness, max: usize) -> Result<Option<String>> {
    let d = &w.decorations;
    for n in 1..=max {
        for f in enumerate_forests(d, n).iter() {
            let x = w.psi(f)?;
            if w.psi_tensor(&hck::delta_pre(f)?)? != algebra::delta_pre(&Fqsym, &x) {
                return Ok(Some(format!("Δ≺ on {f}")));
            }
            if w.psi_tensor(&hck::delta_suc(f)?)? != algebra::delta_suc(&Fqsym, &x) {
                return Ok(Some(format!("Δ≻ on {f}")));
            }
        }
    }
    let h = Hck::new(d.clone(), max, HckVariant::Standard)?;
    for n in 2..=max {
        for k in 1..n {
            for a in enumerate_forests(d, k).iter() {
                for b in enumerate_forests(d, n - k).iter() {
                    let (pa, pb) = (w.psi(a)?, w.psi(b)?);
                    if w.psi(&a.concat(b))? != algebra::mul(&Fqsym, &pa, &pb) {
                        return Ok(Some(format!("product on ({a}, {b})")));
                    }
                    let lhs = w.psi_elem(&algebra::Bidendriform::prec(&h, a, b))?;
                    if lhs != algebra::prec(&Fqsym, &pa, &pb) {
                        return Ok(Some(format!("≺ on ({a}, {b})")));
                    }
                    let lhs = w.psi_elem(&algebra::Bidendriform::succ(&h, a, b))?;
                    if lhs != algebra::succ(&Fqsym, &pa, &pb) {
                        return Ok(Some(format!("≻ on ({a}, {b})")));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Counts, ranks and morphism checks of `Ψ` up to degree `max`.
pub fn verify_iso(max: usize) -> Result<IsoReport> {
    let w = build_decorations(max)?;
    let counts = r_from_d(&Series::of_decorations(&w.decorations, max))?.integers()?;
    let mut degrees = Vec::new();
    for (n, count) in counts.iter().enumerate().skip(1) {
        let forests = enumerate_forests(&w.decorations, n);
        let rank = image_rank(&w, &forests, n)?;
        let expected = factorial(n);
        let ok = forests.len() == expected && rank == expected && *count == expected.into();
        degrees.push(DegreeReport {
            degree: n,
            decorations: w.decorations.of_degree(n).count(),
            forests: forests.len(),
            expected: expected.to_string(),
            rank,
            ok,
        });
    }
    let morphism_max = max.min(MORPHISM_MAX);
    let witness = morphism_witness(&w, morphism_max)?;
    let ok = witness.is_none() && degrees.iter().all(|d| d.ok);
    Ok(IsoReport { max, degrees, morphism_max, morphism_ok: witness.is_none(), witness, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqsym::parse_elem;
    use crate::pforest::parse_forest;

    #[test]
    fn decorations() {
        let w = build_decorations(4).unwrap();
        assert_eq!(w.decorations.profile(4), vec![0, 1, 0, 1, 6]);
        assert_eq!(w.images["p1_1"], parse_elem("1").unwrap());
        assert_eq!(w.images["p3_1"], parse_elem("231 + -1*132").unwrap());
        assert_eq!(build_decorations(2).unwrap().decorations.of_degree(2).count(), 0);
    }

    #[test]
    fn small_images() {
        let w = build_decorations(3).unwrap();
        let f = |s: &str| parse_forest(s, &w.decorations).unwrap();
        assert_eq!(w.psi(&f("p1_1[p1_1]")).unwrap(), parse_elem("21").unwrap());
        assert_eq!(w.psi(&f("p1_1 p1_1")).unwrap(), parse_elem("12 + 21").unwrap());
        assert_eq!(w.psi(&f("p3_1")).unwrap(), parse_elem("231 + -1*132").unwrap());
        let other = parse_forest("q", &DecorationSet::from_pairs(&[("q", 1)]).unwrap()).unwrap();
        assert!(w.psi(&other).is_err());
    }

    #[test]
    fn isomorphism_to_four() {
        let r = verify_iso(4).unwrap();
        assert!(r.ok, "{r:?}");
        let forests: Vec<usize> = r.degrees.iter().map(|d| d.forests).collect();
        assert_eq!(forests, vec![1, 2, 6, 24]);
    }
}
