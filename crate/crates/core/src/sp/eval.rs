//! Numerical evaluation of pairs, ratios and effective interactions.
//!
//! Two independent routes exist. The exact route builds the integer pair
//! and evaluates it by Horner's rule. The recursive route never forms
//! polynomials: interactions compose as `y1·y2` in parallel and
//! `f_q(f_q(y1)·f_q(y2))` in series, and the pair itself can be propagated
//! with a running scale factor so that graphs with astronomically many
//! vertices stay in range.

use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Sub};

use super::dual::Dual;
use super::pair::pair_polys;
use super::{Node, SpExpr};
use crate::moebius::{f_sphere, Sphere};
use crate::{Cx, Error, Result};

/// Edge count above which [`EvalPath::Auto`] switches to the recursion.
pub const RECURSION_THRESHOLD_EDGES: u128 = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EvalPath {
    /// Horner on the exact integer coefficients.
    Exact,
    /// Complex recursion over the composition tree.
    Recursion,
    /// Exact up to [`RECURSION_THRESHOLD_EDGES`] edges, recursion beyond.
    #[default]
    Auto,
}

impl EvalPath {
    /// Whether this path evaluates `g` through exact coefficients.
    pub fn uses_exact(self, g: &SpExpr) -> bool {
        match self {
            EvalPath::Exact => true,
            EvalPath::Recursion => false,
            EvalPath::Auto => g.edge_count() <= RECURSION_THRESHOLD_EDGES,
        }
    }
}

fn zero() -> Cx {
    Cx::new(0.0, 0.0)
}

/// `y1 · y2`; the pair `{0, ∞}` has no value.
pub fn parallel_interaction(_q: Cx, y1: Sphere, y2: Sphere) -> Result<Sphere> {
    y1.product(y2)
        .ok_or_else(|| Error::Indeterminate("parallel composition of interactions 0 and infinity".into()))
}

/// `f_q(f_q(y1) · f_q(y2))`; the pair `{1, 1-q}` has no value.
pub fn series_interaction(q: Cx, y1: Sphere, y2: Sphere) -> Result<Sphere> {
    if q == zero() {
        return Err(Error::Domain("q = 0 is excluded".into()));
    }
    let prod = f_sphere(q, y1)
        .product(f_sphere(q, y2))
        .ok_or_else(|| Error::Indeterminate("series composition of interactions 1 and 1-q".into()))?;
    Ok(f_sphere(q, prod))
}

/// Closed form `(y1 y2 + q - 1)/(y1 + y2 + q - 2)` of the series rule for finite inputs.
pub fn series_interaction_closed(q: Cx, y1: Cx, y2: Cx) -> Sphere {
    let den = y1 + y2 + q - 2.0;
    if den == zero() {
        Sphere::Infinity
    } else {
        Sphere::from((y1 * y2 + q - 1.0) / den)
    }
}

/// Effective interaction through the composition recursion, memoised on
/// shared blocks.
pub fn interaction_recursion(g: &SpExpr, q: Cx) -> Result<Sphere> {
    if q == zero() {
        return Err(Error::Domain("q = 0 is excluded".into()));
    }
    let mut memo = HashMap::new();
    interaction_rec(g, q, &mut memo)
}

fn interaction_rec(g: &SpExpr, q: Cx, memo: &mut HashMap<(u64, u128, u128), Sphere>) -> Result<Sphere> {
    if let Some(y) = memo.get(&g.memo_key()) {
        return Ok(*y);
    }
    let y = match g.node() {
        Node::Edge => Sphere::Finite(zero()),
        Node::Series(a, b) => {
            let (ya, yb) = (interaction_rec(a, q, memo)?, interaction_rec(b, q, memo)?);
            series_interaction(q, ya, yb)?
        }
        Node::Parallel(a, b) => {
            let (ya, yb) = (interaction_rec(a, q, memo)?, interaction_rec(b, q, memo)?);
            parallel_interaction(q, ya, yb)?
        }
    };
    memo.insert(g.memo_key(), y);
    Ok(y)
}

/// Scalars the scaled pair recursion can run over.
pub trait PairScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn constant(z: Cx) -> Self;
    fn value(&self) -> Cx;
    fn scaled(self, s: f64) -> Self;
}

impl PairScalar for Cx {
    fn constant(z: Cx) -> Self {
        z
    }
    fn value(&self) -> Cx {
        *self
    }
    fn scaled(self, s: f64) -> Self {
        self * s
    }
}

impl PairScalar for Dual {
    fn constant(z: Cx) -> Self {
        Dual::constant(z)
    }
    fn value(&self) -> Cx {
        self.v
    }
    fn scaled(self, s: f64) -> Self {
        self * s
    }
}

/// `exp(log_scale) · (same, dif)` with `|same| + |dif| = 1` unless both vanish.
///
/// The scale is treated as a constant, so for dual scalars the derivatives
/// of any ratio of the two components are exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledPair<T> {
    pub same: T,
    pub dif: T,
    pub log_scale: f64,
}

impl<T: PairScalar> ScaledPair<T> {
    fn normalized(same: T, dif: T, log_scale: f64) -> Self {
        let n = same.value().norm() + dif.value().norm();
        if n > 0.0 && n.is_finite() {
            ScaledPair { same: same.scaled(1.0 / n), dif: dif.scaled(1.0 / n), log_scale: log_scale + n.ln() }
        } else {
            ScaledPair { same, dif, log_scale }
        }
    }

    /// `|Z| / (|same| + |dif|)`: how close the sum is to total cancellation.
    pub fn cancellation(&self) -> f64 {
        let n = self.same.value().norm() + self.dif.value().norm();
        (self.same.value() + self.dif.value()).norm() / n
    }

    /// `Z` up to the positive factor `exp(log_scale)`.
    pub fn z_unscaled(&self) -> T {
        self.same + self.dif
    }
}

/// Scaled pair through the composition recursion. Requires `q ∉ {0, 1}`.
pub fn pair_recursion<T: PairScalar>(g: &SpExpr, q: T) -> Result<ScaledPair<T>> {
    let qv = q.value();
    if qv == zero() || qv == Cx::new(1.0, 0.0) {
        return Err(Error::Domain("the pair recursion divides by q(q-1)".into()));
    }
    let one = T::constant(Cx::new(1.0, 0.0));
    let two = T::constant(Cx::new(2.0, 0.0));
    let ctx = PairCtx { q, inv_q: one / q, inv_qq1: one / (q * (q - one)), q2: q - two };
    let mut memo = HashMap::new();
    Ok(pair_rec(g, &ctx, &mut memo))
}

struct PairCtx<T> {
    q: T,
    inv_q: T,
    inv_qq1: T,
    q2: T,
}

fn pair_rec<T: PairScalar>(
    g: &SpExpr,
    c: &PairCtx<T>,
    memo: &mut HashMap<(u64, u128, u128), ScaledPair<T>>,
) -> ScaledPair<T> {
    if let Some(p) = memo.get(&g.memo_key()) {
        return *p;
    }
    let out = match g.node() {
        Node::Edge => {
            let one = T::constant(Cx::new(1.0, 0.0));
            ScaledPair::normalized(T::constant(zero()), c.q * (c.q - one), 0.0)
        }
        Node::Parallel(a, b) => {
            let (x, y) = (pair_rec(a, c, memo), pair_rec(b, c, memo));
            ScaledPair::normalized(
                x.same * y.same * c.inv_q,
                x.dif * y.dif * c.inv_qq1,
                x.log_scale + y.log_scale,
            )
        }
        Node::Series(a, b) => {
            let (x, y) = (pair_rec(a, c, memo), pair_rec(b, c, memo));
            let dd = x.dif * y.dif * c.inv_qq1;
            ScaledPair::normalized(
                x.same * y.same * c.inv_q + dd,
                (x.same * y.dif + x.dif * y.same) * c.inv_q + c.q2 * dd,
                x.log_scale + y.log_scale,
            )
        }
    };
    memo.insert(g.memo_key(), out);
    out
}

/// `(Z^same(q), Z^dif(q))`.
pub fn eval_pair(g: &SpExpr, q: Cx, path: EvalPath) -> Result<(Cx, Cx)> {
    if path.uses_exact(g) {
        let p = pair_polys(g)?;
        Ok((p.same.eval_cx(q), p.dif.eval_cx(q)))
    } else {
        let s = pair_recursion(g, q)?;
        let k = s.log_scale.exp();
        Ok((s.same * k, s.dif * k))
    }
}

/// `R = Z^same / Z^dif` on the sphere; `0/0` is reported as indeterminate.
pub fn ratio_eval(g: &SpExpr, q: Cx, path: EvalPath) -> Result<Sphere> {
    if path.uses_exact(g) {
        let p = pair_polys(g)?;
        let (s, d) = (p.same.eval_cx(q), p.dif.eval_cx(q));
        if d == zero() {
            if s == zero() {
                return Err(Error::Indeterminate("Z^same = Z^dif = 0".into()));
            }
            return Ok(Sphere::Infinity);
        }
        Ok(Sphere::from(s / d))
    } else {
        let qm1 = q - 1.0;
        if qm1 == zero() {
            return Err(Error::Indeterminate("the ratio is 0/0 at q = 1".into()));
        }
        Ok(match interaction_recursion(g, q)? {
            Sphere::Infinity => Sphere::Infinity,
            Sphere::Finite(y) => Sphere::from(y / qm1),
        })
    }
}

/// Effective interaction `y = (q-1)·R`.
pub fn interaction_eval(g: &SpExpr, q: Cx, path: EvalPath) -> Result<Sphere> {
    if path.uses_exact(g) {
        let p = pair_polys(g)?;
        let (s, d) = (p.same.eval_cx(q), p.dif.eval_cx(q));
        let num = (q - 1.0) * s;
        if d == zero() {
            if num == zero() {
                return Err(Error::Indeterminate("(q-1)·Z^same = Z^dif = 0".into()));
            }
            return Ok(Sphere::Infinity);
        }
        Ok(Sphere::from(num / d))
    } else {
        interaction_recursion(g, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    fn finite(s: Sphere) -> Cx {
        s.finite().expect("finite value")
    }

    #[test]
    fn path_two_interaction() {
        let p2 = SpExpr::path(2).unwrap();
        for path in [EvalPath::Exact, EvalPath::Recursion] {
            assert!((finite(interaction_eval(&p2, cx(3.0, 0.0), path).unwrap()) - 2.0).norm() < 1e-14);
            assert!((finite(interaction_eval(&p2, cx(1.6, 0.0), path).unwrap()) + 1.5).norm() < 1e-12);
        }
        let q = cx(0.4, 2.2);
        let expect = (q - 1.0) / (q - 2.0);
        assert!((finite(interaction_eval(&p2, q, EvalPath::Recursion).unwrap()) - expect).norm() < 1e-14);
    }

    #[test]
    fn edge_ratio_is_zero() {
        for q in [cx(3.0, 0.0), cx(-0.2, 1.1)] {
            assert_eq!(ratio_eval(&SpExpr::edge(), q, EvalPath::Exact).unwrap(), Sphere::Finite(zero()));
            assert_eq!(ratio_eval(&SpExpr::edge(), q, EvalPath::Recursion).unwrap(), Sphere::Finite(zero()));
        }
    }

    #[test]
    fn zero_over_zero_is_indeterminate() {
        let g = SpExpr::theta(&[2, 2]).unwrap();
        assert!(matches!(ratio_eval(&g, cx(1.0, 0.0), EvalPath::Exact), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn interaction_rules() {
        let q = cx(2.3, -0.4);
        let zero_y = Sphere::Finite(zero());
        let s = finite(series_interaction(q, zero_y, zero_y).unwrap());
        assert!((s - (q - 1.0) / (q - 2.0)).norm() < 1e-14);
        let y = Sphere::Finite(cx(0.3, 0.9));
        assert_eq!(parallel_interaction(q, y, zero_y).unwrap(), zero_y);
        let m = Sphere::Finite(cx(-1.5, 0.0));
        let r = finite(series_interaction(cx(2.5, 0.0), m, m).unwrap());
        assert!((r + 1.5).norm() < 1e-14);
        assert!(matches!(parallel_interaction(q, zero_y, Sphere::Infinity), Err(Error::Indeterminate(_))));
        let one = Sphere::Finite(cx(1.0, 0.0));
        let omq = Sphere::Finite(1.0 - q);
        assert!(matches!(series_interaction(q, one, omq), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn scaled_pair_matches_exact() {
        let g = SpExpr::parallel(&SpExpr::theta(&[2, 3, 1]).unwrap(), &SpExpr::path(3).unwrap());
        let q = cx(1.7, 0.6);
        let (s, d) = eval_pair(&g, q, EvalPath::Exact).unwrap();
        let (s2, d2) = eval_pair(&g, q, EvalPath::Recursion).unwrap();
        assert!((s - s2).norm() < 1e-10 * s.norm().max(1.0));
        assert!((d - d2).norm() < 1e-10 * d.norm().max(1.0));
    }

    #[test]
    fn dual_pair_gives_ratio_derivative() {
        let g = SpExpr::theta(&[2, 3]).unwrap();
        let q0 = cx(2.2, 0.3);
        let sp = pair_recursion(&g, Dual::variable(q0)).unwrap();
        let r = sp.same / sp.dif;
        let h = 1e-6;
        let rp = |q: Cx| {
            let s = pair_recursion(&g, q).unwrap();
            s.same / s.dif
        };
        let fd = (rp(q0 + h) - rp(q0 - h)) / (2.0 * h);
        assert!((r.d - fd).norm() < 1e-7);
    }

    #[test]
    fn huge_graphs_stay_in_range() {
        let g = SpExpr::parallel_power(&SpExpr::path(30).unwrap(), 1 << 20).unwrap();
        let s = pair_recursion(&g, cx(2.5, 0.1)).unwrap();
        assert!(s.log_scale.is_finite() && s.log_scale > 1e6);
        assert!(s.cancellation().is_finite());
    }
}
