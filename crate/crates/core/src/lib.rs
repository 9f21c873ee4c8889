//! Chromatic polynomials of series-parallel graphs.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`moebius`]: the involution `f_q(y) = 1 + q/(y-1)`, closed disks and their
//!   images, and the disks left invariant by `f_q`.
//! * [`poly`] and [`sp`]: exact integer polynomials, series-parallel
//!   expressions, the `(Z^same, Z^dif)` pair recursion, and a subset-expansion
//!   oracle.
//! * [`escape`]: the word search for effective interactions of modulus above
//!   one, witness graphs, and argument-principle zero counting.
//! * [`certify`]: zero-free disk certificates.
//! * [`leafjoin`]: independence polynomials, occupation ratios, the activity
//!   search on alternating trees, and zero hunting on leaf-joined trees.
//! * [`atlas`]: the pixel classifier and the PPM renderer.
//!
//! With the default `parallel` feature, data-parallel loops run on rayon.
//! Without it, every loop runs sequentially and produces identical output.

// Negated comparisons are used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod certify;
pub mod error;
pub mod escape;
pub mod leafjoin;
pub mod moebius;
mod optim;
pub mod par;
pub mod poly;
pub mod sp;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex numbers in double precision.
pub type Cx = Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}
