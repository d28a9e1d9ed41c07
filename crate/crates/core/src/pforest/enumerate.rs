use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::forest::{b_plus, DecorationSet, Forest, Tree};

type CacheKey = (Vec<(String, usize)>, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Vec<Forest>>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Vec<Forest>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn trees_and_forests(d: &DecorationSet, n: usize) -> (Vec<Vec<Tree>>, Vec<Vec<Forest>>) {
    let mut trees: Vec<Vec<Tree>> = vec![Vec::new(); n + 1];
    let mut forests: Vec<Vec<Forest>> = vec![Vec::new(); n + 1];
    forests[0].push(Forest::unit());
    for m in 1..=n {
        let mut ts = Vec::new();
        for deco in d.iter().filter(|x| x.degree() <= m) {
            for below in &forests[m - deco.degree()] {
                ts.push(b_plus(deco, below));
            }
        }
        trees[m] = ts;
        let mut fs = Vec::new();
        for k in 1..=m {
            for t in &trees[k] {
                for rest in &forests[m - k] {
                    let mut v = vec![t.clone()];
                    v.extend(rest.trees().iter().cloned());
                    fs.push(Forest::new(v));
                }
            }
        }
        forests[m] = fs;
    }
    (trees, forests)
}

/// All decorated planar forests of total degree `n`, in canonical order.
///
/// Degree zero gives the single empty forest.
pub fn enumerate_forests(d: &DecorationSet, n: usize) -> Arc<Vec<Forest>> {
    let key: CacheKey = (d.iter().map(|x| (x.label().to_string(), x.degree())).collect(), n);
    if let Some(v) = cache().read().expect("forest cache poisoned").get(&key) {
        return v.clone();
    }
    let (_, mut forests) = trees_and_forests(d, n);
    let mut out = std::mem::take(&mut forests[n]);
    out.sort();
    let out = Arc::new(out);
    cache().write().expect("forest cache poisoned").insert(key, out.clone());
    out
}

/// All decorated planar trees of total degree `n`, in canonical order.
pub fn enumerate_trees(d: &DecorationSet, n: usize) -> Vec<Forest> {
    let (mut trees, _) = trees_and_forests(d, n);
    let mut out: Vec<Forest> = std::mem::take(&mut trees[n]).into_iter().map(Forest::single).collect();
    out.sort();
    out
}

/// The ladder `l_k`: `l_0 = 1`, `l_{k+1} = B⁺(l_k)` with the decoration `*`.
pub fn ladder(k: usize) -> Forest {
    let star = super::Decoration::star();
    let mut f = Forest::unit();
    for _ in 0..k {
        f = Forest::single(b_plus(&star, &f));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforest::{parse_forest, render_forest};

    #[test]
    fn catalan_counts() {
        let d = DecorationSet::single();
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_forests(&d, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        let two: Vec<String> = enumerate_forests(&d, 2).iter().map(|f| f.to_string()).collect();
        assert_eq!(two, vec!["* *", "*[*]"]);
        assert_eq!(enumerate_forests(&d, 0).len(), 1);
    }

    #[test]
    fn graded_decorations() {
        let d = DecorationSet::from_pairs(&[("*", 1), ("t", 3)]).unwrap();
        assert_eq!(enumerate_forests(&d, 3).len(), 6);
        assert!(enumerate_forests(&DecorationSet::empty(), 3).is_empty());
    }

    #[test]
    fn encoding_round_trips() {
        let d = DecorationSet::single();
        for n in 1..=6 {
            let fs = enumerate_forests(&d, n);
            for w in fs.windows(2) {
                assert!(w[0] < w[1]);
            }
            for f in fs.iter() {
                assert_eq!(&parse_forest(&render_forest(f), &d).unwrap(), f);
            }
        }
    }

    #[test]
    fn ladders() {
        assert!(ladder(0).is_unit());
        assert_eq!(ladder(1).to_string(), "*");
        assert_eq!(ladder(2).to_string(), "*[*]");
        assert_eq!(ladder(5).weight(), 5);
    }
}
