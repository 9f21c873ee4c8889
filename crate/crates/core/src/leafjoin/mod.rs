//! Leaf-joined trees and the hard-core model.
//!
//! The chromatic ratio of a leaf-joined tree obeys the occupation-ratio
//! recursion `F_{λ,d}` with `λ = λ(q, d)`. Neutral fixed points of the
//! two-level map of an alternating tree therefore mark parameters `q` near
//! which leaf-joined trees have chromatic zeros, some with `Re q > Δ`.

mod activity;
mod hunt;
mod indep;
mod maps;
mod roots;
mod table;
mod tree;

pub use activity::{activity_at, activity_search, neutral_fixed_points, ActivityPoint, DEFAULT_THETA_GRID};
pub use hunt::{hunt_condition, z_magnitude_ratio, zero_hunt_leafjoined, FoundZero, HuntKind, HuntOptions, HuntRecord};
pub use indep::{ind_poly, occupation_ratio, tree_ratio, Graph, RatioPath, MAX_IND_VERTICES};
pub use maps::{f_map, lambda_delta, lambda_q_d, q_from_lambda, q_roots_from_lambda, root_preference, two_level_map};
pub use roots::poly_roots;
pub use table::{reference_row, table_sweep, TableRow, REFERENCE_TABLE};
pub use tree::{alternating_shape, leafjoined_expr, modified_ratio, ratio_bridge_check, RootedTree};
