//! Decorated planar rooted trees and forests.

mod cuts;
mod enumerate;
mod forest;
mod parse;

pub use cuts::{
    enumerate_cuts, is_left_cut, is_prime_left_cut, rightmost_path_indices, tree_cuts, Cut, TreeCut,
    TreeCutResult,
};
pub use enumerate::{enumerate_forests, enumerate_trees, ladder};
pub use forest::{b_plus, rightmost_leaf, vertex_at, xi, Decoration, DecorationSet, Forest, Tree};
pub use parse::{default_degree, parse_forest, render_forest};
