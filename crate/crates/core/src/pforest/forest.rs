use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::BasisKey;

/// A vertex label with a positive degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Decoration {
    label: Arc<str>,
    degree: usize,
}

impl Decoration {
    pub fn new(label: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDecorations(format!("`{label}` has degree 0")));
        }
        if !is_label(label) {
            return Err(Error::InvalidDecorations(format!("`{label}` is not an identifier")));
        }
        Ok(Self { label: label.into(), degree })
    }

    /// The default decoration `*` of degree one.
    pub fn star() -> Self {
        Self { label: "*".into(), degree: 1 }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

pub(crate) fn is_label(s: &str) -> bool {
    if s == "*" {
        return true;
    }
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered, finite set of decorations with unique labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecorationSet {
    decorations: Vec<Decoration>,
}

impl DecorationSet {
    pub fn new(decorations: Vec<Decoration>) -> Result<Self> {
        for (i, d) in decorations.iter().enumerate() {
            if decorations[..i].iter().any(|e| e.label == d.label) {
                return Err(Error::InvalidDecorations(format!("duplicate label `{}`", d.label)));
            }
        }
        Ok(Self { decorations })
    }

    /// The single degree-one decoration `*`.
    pub fn single() -> Self {
        Self { decorations: vec![Decoration::star()] }
    }

    /// Builds a set from `label:degree` pairs.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self> {
        let decos = pairs
            .iter()
            .map(|&(l, d)| Decoration::new(l, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(decos)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn get(&self, label: &str) -> Option<&Decoration> {
        self.decorations.iter().find(|d| &*d.label == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Decoration> {
        self.decorations.iter()
    }

    pub fn len(&self) -> usize {
        self.decorations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decorations.is_empty()
    }

    pub fn of_degree(&self, n: usize) -> impl Iterator<Item = &Decoration> {
        self.decorations.iter().filter(move |d| d.degree == n)
    }

    /// `card(D_n)` for `n = 0..=max`.
    pub fn profile(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| self.of_degree(n).count()).collect()
    }

    pub fn push(&mut self, d: Decoration) -> Result<()> {
        if self.get(&d.label).is_some() {
            return Err(Error::InvalidDecorations(format!("duplicate label `{}`", d.label)));
        }
        self.decorations.push(d);
        Ok(())
    }
}

/// A decorated planar rooted tree; children are stored left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    decoration: Decoration,
    children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(decoration: Decoration) -> Self {
        Self { decoration, children: Vec::new() }
    }

    pub fn new(decoration: Decoration, children: Vec<Tree>) -> Self {
        Self { decoration, children }
    }

    pub fn decoration(&self) -> &Decoration {
        &self.decoration
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn weight(&self) -> usize {
        1 + self.children.iter().map(Tree::weight).sum::<usize>()
    }

    pub fn degree(&self) -> usize {
        self.decoration.degree + self.children.iter().map(Tree::degree).sum::<usize>()
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(Tree::leaves).sum()
        }
    }

    /// The forest of the root's children.
    pub fn branches(&self) -> Forest {
        Forest::new(self.children.clone())
    }

    pub(crate) fn write_code(&self, out: &mut String) {
        out.push_str(&self.decoration.label);
        if !self.children.is_empty() {
            out.push('[');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                c.write_code(out);
            }
            out.push(']');
        }
    }
}

/// An ordered sequence of trees; the empty forest is the unit `1`.
///
/// Forests compare by `(degree, canonical encoding)`.
#[derive(Clone)]
pub struct Forest {
    trees: Vec<Tree>,
    degree: usize,
    code: Arc<str>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Self {
        let degree = trees.iter().map(Tree::degree).sum();
        let mut code = String::new();
        if trees.is_empty() {
            code.push('1');
        }
        for (i, t) in trees.iter().enumerate() {
            if i > 0 {
                code.push(' ');
            }
            t.write_code(&mut code);
        }
        Self { trees, degree, code: code.into() }
    }

    pub fn unit() -> Self {
        Self::new(Vec::new())
    }

    pub fn single(t: Tree) -> Self {
        Self::new(vec![t])
    }

    pub fn node(d: &Decoration) -> Self {
        Self::single(Tree::leaf(d.clone()))
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.trees.iter().map(Tree::weight).sum()
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaves).sum()
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    /// Juxtaposition `F G`.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut t = self.trees.clone();
        t.extend(other.trees.iter().cloned());
        Forest::new(t)
    }

    /// Splits off the first tree: `F = t · rest`.
    pub fn split_first(&self) -> Option<(Forest, Forest)> {
        let (first, rest) = self.trees.split_first()?;
        Some((Forest::single(first.clone()), Forest::new(rest.to_vec())))
    }

    /// Splits off the last tree: `F = rest · t`.
    pub fn split_last(&self) -> Option<(Forest, Forest)> {
        let (last, rest) = self.trees.split_last()?;
        Some((Forest::new(rest.to_vec()), Forest::single(last.clone())))
    }

    /// Multiset of decoration labels, sorted.
    pub fn decoration_multiset(&self) -> Vec<Decoration> {
        fn walk(t: &Tree, out: &mut Vec<Decoration>) {
            out.push(t.decoration.clone());
            t.children.iter().for_each(|c| walk(c, out));
        }
        let mut v = Vec::new();
        self.trees.iter().for_each(|t| walk(t, &mut v));
        v.sort();
        v
    }
}

impl PartialEq for Forest {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.code == other.code
    }
}

impl Eq for Forest {}

impl Hash for Forest {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.code.cmp(&other.code))
    }
}

impl BasisKey for Forest {
    fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({})", self.code)
    }
}

/// Grafting `B⁺_d`: the trees of `forest` become the ordered children of a new root.
pub fn b_plus(d: &Decoration, forest: &Forest) -> Tree {
    Tree::new(d.clone(), forest.trees.clone())
}

/// Path of child indices from the root of the last tree to the rightmost leaf.
pub(crate) fn rightmost_path(forest: &Forest) -> Option<Vec<usize>> {
    let mut t = forest.trees.last()?;
    let mut path = Vec::new();
    while let Some(last) = t.children.last() {
        path.push(t.children.len() - 1);
        t = last;
    }
    Some(path)
}

/// The rightmost leaf: the vertex reached from the root of the last tree by
/// always descending to the rightmost child. Returned as the tree index and
/// child-index path.
pub fn rightmost_leaf(forest: &Forest) -> Result<(usize, Vec<usize>)> {
    let path = rightmost_path(forest).ok_or(Error::EmptyForest("rightmost_leaf"))?;
    Ok((forest.trees.len() - 1, path))
}

/// The subtree addressed by a child-index path.
pub fn vertex_at<'a>(forest: &'a Forest, tree: usize, path: &[usize]) -> Option<&'a Tree> {
    let mut t = forest.trees.get(tree)?;
    for &i in path {
        t = t.children.get(i)?;
    }
    Some(t)
}

/// `ξ_d`: deletes the rightmost leaf if it carries `d`, else returns `None` (zero).
pub fn xi(d: &Decoration, forest: &Forest) -> Result<Option<Forest>> {
    let (_, path) = rightmost_leaf(forest)?;
    let mut trees = forest.trees.clone();
    let last = trees.last_mut().expect("nonempty");
    if path.is_empty() {
        if last.decoration != *d {
            return Ok(None);
        }
        trees.pop();
        return Ok(Some(Forest::new(trees)));
    }
    let mut parent = last;
    for &i in &path[..path.len() - 1] {
        parent = &mut parent.children[i];
    }
    let leaf = parent.children.pop().expect("path ends at a child");
    if leaf.decoration != *d {
        return Ok(None);
    }
    Ok(Some(Forest::new(trees)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforest::parse::parse_forest;

    fn deco(l: &str) -> Decoration {
        Decoration::new(l, 1).unwrap()
    }

    fn f(s: &str) -> Forest {
        parse_forest(s, &DecorationSet::infer_from(s)).unwrap()
    }

    #[test]
    fn b_plus_examples() {
        let d = deco("d");
        assert_eq!(Forest::single(b_plus(&d, &Forest::unit())), f("d"));
        assert_eq!(Forest::single(b_plus(&deco("a"), &f("b c"))), f("a[b,c]"));
        assert_eq!(Forest::single(b_plus(&d, &f("e"))), f("d[e]"));
    }

    #[test]
    fn rightmost_leaf_examples() {
        let g = f("a[b]");
        let (t, p) = rightmost_leaf(&g).unwrap();
        assert_eq!(vertex_at(&g, t, &p).unwrap().decoration().label(), "b");
        let g = f("a[b,c]");
        let (t, p) = rightmost_leaf(&g).unwrap();
        assert_eq!(vertex_at(&g, t, &p).unwrap().decoration().label(), "c");
        let g = f("a[b] c[d,e]");
        let (t, p) = rightmost_leaf(&g).unwrap();
        assert_eq!((t, p.clone()), (1, vec![1]));
        let v = vertex_at(&g, t, &p).unwrap();
        assert_eq!(v.decoration().label(), "e");
        assert!(v.children().is_empty());
        assert_eq!(rightmost_leaf(&Forest::unit()), Err(Error::EmptyForest("rightmost_leaf")));
    }

    #[test]
    fn xi_examples() {
        let g = f("a[b] c[d,e]");
        assert_eq!(xi(&deco("e"), &g).unwrap(), Some(f("a[b] c[d]")));
        assert_eq!(xi(&deco("f"), &g).unwrap(), None);
        assert_eq!(xi(&deco("d"), &f("d")).unwrap(), Some(Forest::unit()));
        assert_eq!(xi(&deco("x"), &f("a[b]")).unwrap(), None);
        assert!(xi(&deco("x"), &Forest::unit()).is_err());
    }

    #[test]
    fn forest_order_is_degree_then_code() {
        let a = f("* *");
        let b = f("*[*]");
        let c = f("*");
        assert!(c < a && a < b);
        assert_eq!(Forest::unit().to_string(), "1");
    }

    #[test]
    fn decoration_validation() {
        assert!(Decoration::new("a", 0).is_err());
        assert!(Decoration::new("1x", 1).is_err());
        assert!(DecorationSet::from_pairs(&[("a", 1), ("a", 2)]).is_err());
        let d = DecorationSet::from_pairs(&[("a", 1), ("b", 3)]).unwrap();
        assert_eq!(d.profile(3), vec![0, 1, 0, 1]);
    }
}
