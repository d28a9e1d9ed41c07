use super::forest::{Forest, Tree};

/// How one tree of a forest is cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeCut {
    /// Nothing is cut: the whole tree stays on the root side.
    Empty,
    /// The whole tree goes to the pruned side.
    Total,
    /// A nonempty antichain of cut edges, each named by the pre-order index of
    /// its lower vertex (the root has index 0).
    Edges(Vec<usize>),
}

/// A cut of a forest: one [`TreeCut`] per tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub parts: Vec<TreeCut>,
}

impl Cut {
    pub fn is_empty_cut(&self) -> bool {
        self.parts.iter().all(|p| *p == TreeCut::Empty)
    }

    pub fn is_total_cut(&self) -> bool {
        self.parts.iter().all(|p| *p == TreeCut::Total)
    }

    pub fn last(&self) -> Option<&TreeCut> {
        self.parts.last()
    }
}

/// A cut of a single tree together with its pruned part and trunk.
#[derive(Clone, Debug)]
pub struct TreeCutResult {
    pub cut: TreeCut,
    pub pruned: Vec<Tree>,
    pub trunk: Option<Tree>,
}

/// Cuts strictly inside `t`, as (cut vertices, pruned trees, trunk), with
/// vertex indices offset by `base`.
fn inner_cuts(t: &Tree, base: usize) -> Vec<(Vec<usize>, Vec<Tree>, Tree)> {
    let mut acc: Vec<(Vec<usize>, Vec<Tree>, Vec<Tree>)> = vec![(Vec::new(), Vec::new(), Vec::new())];
    let mut offset = base + 1;
    for child in t.children() {
        let mut options: Vec<(Vec<usize>, Vec<Tree>, Option<Tree>)> =
            vec![(vec![offset], vec![child.clone()], None)];
        for (cut, pruned, trunk) in inner_cuts(child, offset) {
            options.push((cut, pruned, Some(trunk)));
        }
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (cut, pruned, kept) in &acc {
            for (oc, op, ot) in &options {
                let mut c = cut.clone();
                c.extend_from_slice(oc);
                let mut p = pruned.clone();
                p.extend(op.iter().cloned());
                let mut k = kept.clone();
                k.extend(ot.iter().cloned());
                next.push((c, p, k));
            }
        }
        acc = next;
        offset += child.weight();
    }
    acc.into_iter()
        .map(|(c, p, k)| (c, p, Tree::new(t.decoration().clone(), k)))
        .collect()
}

/// All cuts of one tree, including the empty and total ones.
pub fn tree_cuts(t: &Tree) -> Vec<TreeCutResult> {
    inner_cuts(t, 0)
        .into_iter()
        .map(|(cut, pruned, trunk)| TreeCutResult {
            cut: if cut.is_empty() { TreeCut::Empty } else { TreeCut::Edges(cut) },
            pruned,
            trunk: Some(trunk),
        })
        .chain(std::iter::once(TreeCutResult {
            cut: TreeCut::Total,
            pruned: vec![t.clone()],
            trunk: None,
        }))
        .collect()
}

/// Admissible cuts of `forest` other than the empty and the total cut, each with
/// its pruned part `P` and root part `R`.
pub fn enumerate_cuts(forest: &Forest) -> Vec<(Cut, Forest, Forest)> {
    let per_tree: Vec<Vec<TreeCutResult>> = forest.trees().iter().map(tree_cuts).collect();
    let mut acc: Vec<(Vec<TreeCut>, Vec<Tree>, Vec<Tree>)> = vec![(Vec::new(), Vec::new(), Vec::new())];
    for options in &per_tree {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (cuts, pruned, trunk) in &acc {
            for o in options {
                let mut c = cuts.clone();
                c.push(o.cut.clone());
                let mut p = pruned.clone();
                p.extend(o.pruned.iter().cloned());
                let mut r = trunk.clone();
                r.extend(o.trunk.iter().cloned());
                next.push((c, p, r));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(parts, p, r)| (Cut { parts }, Forest::new(p), Forest::new(r)))
        .filter(|(c, _, _)| !c.is_empty_cut() && !c.is_total_cut())
        .collect()
}

/// Pre-order indices of the vertices on the path from the root of the last tree
/// to the rightmost leaf, root excluded.
pub fn rightmost_path_indices(forest: &Forest) -> Vec<usize> {
    let mut out = Vec::new();
    let Some(mut t) = forest.trees().last() else {
        return out;
    };
    let mut index = 0;
    while let Some(last) = t.children().last() {
        index += t.weight() - last.weight();
        out.push(index);
        t = last;
    }
    out
}

/// Membership in `Adm≺`: the cut severs an edge on the rightmost path of the
/// last tree, or totally cuts the last tree of a forest with several trees.
pub fn is_left_cut(cut: &Cut, rightmost: &[usize], roots: usize) -> bool {
    match cut.last() {
        Some(TreeCut::Edges(e)) => e.iter().any(|v| rightmost.contains(v)),
        Some(TreeCut::Total) => roots > 1,
        _ => false,
    }
}

/// Membership in `Adm′≺`: the last tree is totally cut.
pub fn is_prime_left_cut(cut: &Cut) -> bool {
    matches!(cut.last(), Some(TreeCut::Total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforest::{parse_forest, DecorationSet};

    fn f(s: &str) -> Forest {
        parse_forest(s, &DecorationSet::infer_from(s)).unwrap()
    }

    fn pairs(s: &str) -> Vec<(String, String)> {
        let mut v: Vec<_> = enumerate_cuts(&f(s))
            .into_iter()
            .map(|(_, p, r)| (p.to_string(), r.to_string()))
            .collect();
        v.sort();
        v
    }

    fn is_ancestor(t: &Tree, a: usize, b: usize) -> bool {
        // vertex a is a strict ancestor of b when b lies in a's pre-order block
        fn find(t: &Tree, base: usize, a: usize) -> Option<usize> {
            if base == a {
                return Some(t.weight());
            }
            let mut off = base + 1;
            for c in t.children() {
                if let Some(w) = find(c, off, a) {
                    return Some(w);
                }
                off += c.weight();
            }
            None
        }
        let w = find(t, 0, a).unwrap();
        a < b && b < a + w
    }

    #[test]
    fn single_edge() {
        assert_eq!(pairs("a[b]"), vec![("b".into(), "a".into())]);
    }

    #[test]
    fn cherry_matches_edge_subset_filter() {
        let got = pairs("a[b,c]");
        let mut want = vec![
            ("b".to_string(), "a[c]".to_string()),
            ("c".to_string(), "a[b]".to_string()),
            ("b c".to_string(), "a".to_string()),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cut_count_and_weights() {
        for s in ["a b[c[e,d]]", "a[b[c],d[e,f]] g", "x[y,z] w[v[u]]"] {
            let g = f(s);
            for (cut, p, r) in enumerate_cuts(&g) {
                assert_eq!(p.weight() + r.weight(), g.weight());
                for (t, part) in g.trees().iter().zip(&cut.parts) {
                    if let TreeCut::Edges(e) = part {
                        assert!(!e.is_empty() && !e.contains(&0));
                        for &x in e {
                            for &y in e {
                                assert!(!is_ancestor(t, x, y));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(enumerate_cuts(&f("a b[c[e,d]]")).len(), 10);
    }

    #[test]
    fn rightmost_indices() {
        assert_eq!(rightmost_path_indices(&f("a b[c[e,d]]")), vec![1, 3]);
        assert_eq!(rightmost_path_indices(&f("a[b[c],d]")), vec![3]);
        assert!(rightmost_path_indices(&f("a")).is_empty());
    }
}
