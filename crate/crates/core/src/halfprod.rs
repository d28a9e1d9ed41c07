//! Half-products `≺`, `≻` on forests, reconstructed as the adjoints of `Δ≺`,
//! `Δ≻` under the nondegenerate pairing.
//!
//! For forests `F`, `G` of total degree `n`, `F≺G` is the unique `X` of
//! degree `n` with `⟨X,H⟩ = ⟨F⊗G, Δ≺H⟩` for every basis forest `H`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hck::{delta_pre, delta_suc, HckElem, HckTensor};
use crate::linear::matrix::ScaledInverse;
use crate::linear::{BasisKey, Rational};
use crate::pairing::{gram, pair_tensor};
use crate::pforest::{enumerate_forests, DecorationSet, Forest};

/// Default degree bound for half-product tables.
pub const DEFAULT_BOUND: usize = 5;

struct DegreeData {
    basis: Vec<Forest>,
    inverse: ScaledInverse,
    delta_pre: Vec<HckTensor>,
    delta_suc: Vec<HckTensor>,
}

impl DegreeData {
    fn build(d: &DecorationSet, n: usize) -> Result<Self> {
        let g = gram(d, n)?;
        let inverse = ScaledInverse::new(&g.entries).ok_or(Error::SingularGram(n))?;
        let delta_pre = g.basis.iter().map(delta_pre).collect::<Result<_>>()?;
        let delta_suc = g.basis.iter().map(delta_suc).collect::<Result<_>>()?;
        Ok(Self { basis: g.basis, inverse, delta_pre, delta_suc })
    }

    fn solve(&self, f: &Forest, g: &Forest, halves: &[HckTensor]) -> HckElem {
        let rhs: Vec<Rational> = halves.iter().map(|t| pair_tensor(f, g, t)).collect();
        let x = self.inverse.solve(&rhs);
        self.basis.iter().cloned().zip(x).collect()
    }
}

/// Lazily factorized Gram systems for one decoration set, up to a degree bound.
pub struct HalfProducts {
    decorations: DecorationSet,
    bound: usize,
    degrees: RwLock<HashMap<usize, Arc<DegreeData>>>,
}

impl HalfProducts {
    pub fn new(decorations: DecorationSet, bound: usize) -> Self {
        Self { decorations, bound, degrees: RwLock::new(HashMap::new()) }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn decorations(&self) -> &DecorationSet {
        &self.decorations
    }

    fn degree(&self, n: usize) -> Result<Arc<DegreeData>> {
        if n > self.bound {
            return Err(Error::DegreeBound { degree: n, bound: self.bound });
        }
        if let Some(d) = self.degrees.read().expect("half-product cache poisoned").get(&n) {
            return Ok(d.clone());
        }
        let data = Arc::new(DegreeData::build(&self.decorations, n)?);
        self.degrees.write().expect("half-product cache poisoned").insert(n, data.clone());
        Ok(data)
    }

    fn check(f: &Forest, g: &Forest) -> Result<usize> {
        if f.is_unit() || g.is_unit() {
            return Err(Error::EmptyForest("half-product"));
        }
        Ok(f.degree() + g.degree())
    }

    /// `F ≺ G`.
    pub fn solve_prec(&self, f: &Forest, g: &Forest) -> Result<HckElem> {
        let data = self.degree(Self::check(f, g)?)?;
        Ok(data.solve(f, g, &data.delta_pre))
    }

    /// `F ≻ G`.
    pub fn solve_succ(&self, f: &Forest, g: &Forest) -> Result<HckElem> {
        let data = self.degree(Self::check(f, g)?)?;
        Ok(data.solve(f, g, &data.delta_suc))
    }
}

/// Stored values of `F≺G` and `F≻G` for every pair with total degree within a bound.
pub struct HalfProductTable {
    bound: usize,
    decorations: DecorationSet,
    entries: BTreeMap<(Forest, Forest), (HckElem, HckElem)>,
}

impl HalfProductTable {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn decorations(&self) -> &DecorationSet {
        &self.decorations
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, f: &Forest, g: &Forest) -> Result<&(HckElem, HckElem)> {
        let n = f.degree() + g.degree();
        if n > self.bound {
            return Err(Error::DegreeBound { degree: n, bound: self.bound });
        }
        self.entries
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| Error::Domain(format!("({f}, {g})")))
    }

    pub fn prec(&self, f: &Forest, g: &Forest) -> Result<&HckElem> {
        self.get(f, g).map(|e| &e.0)
    }

    pub fn succ(&self, f: &Forest, g: &Forest) -> Result<&HckElem> {
        self.get(f, g).map(|e| &e.1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Forest, Forest), &(HckElem, HckElem))> {
        self.entries.iter()
    }

    /// Overwrites one entry; used to exercise the law harness on a broken table.
    pub fn corrupt(&mut self, f: &Forest, g: &Forest, prec: HckElem) {
        if let Some(e) = self.entries.get_mut(&(f.clone(), g.clone())) {
            e.0 = prec;
        }
    }
}

/// Solves every pair `(F, G)` with `|F| + |G| ≤ bound`.
pub fn build_table(d: &DecorationSet, bound: usize) -> Result<HalfProductTable> {
    let solver = HalfProducts::new(d.clone(), bound);
    let mut pairs = Vec::new();
    for n in 2..=bound {
        for k in 1..n {
            for f in enumerate_forests(d, k).iter() {
                for g in enumerate_forests(d, n - k).iter() {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
    }
    for n in 2..=bound {
        if pairs.iter().any(|(f, g)| f.degree() + g.degree() == n) {
            solver.degree(n)?;
        }
    }
    let solved: Vec<_> = pairs
        .into_par_iter()
        .map(|(f, g)| {
            let p = solver.solve_prec(&f, &g)?;
            let s = solver.solve_succ(&f, &g)?;
            Ok(((f, g), (p, s)))
        })
        .collect::<Result<_>>()?;
    Ok(HalfProductTable { bound, decorations: d.clone(), entries: solved.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hck::concat;
    use crate::linear::parse_lincomb;
    use crate::pforest::{b_plus, parse_forest, Decoration};

    fn f(s: &str) -> Forest {
        parse_forest(s, &DecorationSet::single()).unwrap()
    }

    fn e(s: &str) -> HckElem {
        parse_lincomb(s, |k, _| Ok(f(k))).unwrap()
    }

    #[test]
    fn degree_two() {
        let t = build_table(&DecorationSet::single(), 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.prec(&f("*"), &f("*")).unwrap(), &e("*[*]"));
        assert_eq!(t.succ(&f("*"), &f("*")).unwrap(), &e("* * + -1*(*[*])"));
    }

    #[test]
    fn grafting_and_splitting() {
        let d = DecorationSet::single();
        let t = build_table(&d, 5).unwrap();
        let star = Decoration::star();
        for x in (1..=4).flat_map(|n| enumerate_forests(&d, n).iter().cloned().collect::<Vec<_>>()) {
            let graft = HckElem::basis(Forest::single(b_plus(&star, &x)));
            assert_eq!(t.prec(&f("*"), &x).unwrap(), &graft);
        }
        for ((a, b), (p, s)) in t.iter() {
            let m = concat(&HckElem::basis(a.clone()), &HckElem::basis(b.clone()));
            assert_eq!(&(p + s), &m);
        }
        assert!(t.prec(&f("* * *"), &f("* * *")).is_err());
    }

    #[test]
    fn empty_decorations() {
        assert!(build_table(&DecorationSet::empty(), 4).unwrap().is_empty());
    }

    #[test]
    fn dendriform_instance() {
        let t = build_table(&DecorationSet::single(), 3).unwrap();
        let s = f("*");
        let ab = t.prec(&s, &s).unwrap().clone();
        let lhs: HckElem = ab.apply(|k| t.prec(k, &s).unwrap().clone());
        let bc = t.prec(&s, &s).unwrap() + t.succ(&s, &s).unwrap();
        let rhs: HckElem = bc.apply(|k| t.prec(&s, k).unwrap().clone());
        assert_eq!(lhs, rhs);
    }
}
