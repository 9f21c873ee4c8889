//! Series-parallel expressions and their chromatic pairs.

pub mod brute;
pub mod dual;
pub mod eval;
mod expr;
pub mod pair;
pub mod parse;

pub use brute::{brute_force_z, is_bipartite, realize, Multigraph};
pub use eval::{
    eval_pair, interaction_eval, parallel_interaction, ratio_eval, series_interaction, EvalPath,
};
pub use expr::{Node, SpExpr};
pub use pair::{pair_polys, z_poly, PolyPair};
pub use parse::parse;
