//! Newton search for chromatic zeros of alternating leaf-joined trees.

use serde::{Deserialize, Serialize};

use super::tree::{alternating_shape, leafjoined_expr};
use crate::par::map_indexed;
use crate::sp::dual::Dual;
use crate::sp::eval::{pair_recursion, ScaledPair};
use crate::sp::SpExpr;
use crate::{Cx, Error, Result};

/// Which degeneracy of the ratio is chased.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HuntKind {
    /// `R(T̂; q) = -1`, a zero of `Z(T̂)`. Residual `|R + 1|`.
    MinusOne,
    /// `R(T̂; q) = ∞`, a zero of `Z^dif(T̂) = Z(T̂ ∥ e)`. Residual `|1/R|`.
    Pole,
}

impl HuntKind {
    pub const ALL: [HuntKind; 2] = [HuntKind::MinusOne, HuntKind::Pole];

    /// The graph whose chromatic polynomial vanishes at a solution.
    pub fn witness_graph(self, t: &SpExpr) -> SpExpr {
        match self {
            HuntKind::MinusOne => t.clone(),
            HuntKind::Pole => SpExpr::parallel(t, &SpExpr::edge()),
        }
    }

    fn condition(self, p: &ScaledPair<Dual>) -> Dual {
        match self {
            HuntKind::MinusOne => (p.same + p.dif) / p.dif,
            HuntKind::Pole => p.dif / p.same,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoundZero {
    pub q: Cx,
    pub residual: f64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntRecord {
    pub d1: u32,
    pub d2: u32,
    pub depth: u32,
    pub kind: HuntKind,
    /// Edge count of the witness graph.
    pub edges: u128,
    /// Distinct converged solutions, nearest to the seed first.
    pub zeros: Vec<FoundZero>,
}

impl HuntRecord {
    pub fn nearest(&self) -> Option<&FoundZero> {
        self.zeros.first()
    }

    pub fn max_re(&self) -> Option<&FoundZero> {
        self.zeros.iter().max_by(|a, b| a.q.re.total_cmp(&b.q.re))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HuntOptions {
    /// Seeds are placed on circles of these radii around the seed.
    pub ring_radii: Vec<f64>,
    pub ring_points: usize,
    pub max_iters: usize,
    /// Largest Newton step, relative to `1 + |q|`.
    pub max_step: f64,
    pub tolerance: f64,
    pub workers: usize,
}

impl Default for HuntOptions {
    fn default() -> Self {
        HuntOptions {
            ring_radii: vec![0.0, 0.02, 0.05, 0.1, 0.2, 0.4],
            ring_points: 8,
            max_iters: 120,
            max_step: 0.01,
            tolerance: 1e-8,
            workers: 0,
        }
    }
}

impl HuntOptions {
    fn seeds(&self, centre: Cx) -> Vec<Cx> {
        let mut out = Vec::new();
        for &r in &self.ring_radii {
            if r == 0.0 {
                out.push(centre);
                continue;
            }
            for j in 0..self.ring_points {
                out.push(centre + Cx::from_polar(r, std::f64::consts::TAU * j as f64 / self.ring_points as f64));
            }
        }
        out
    }
}

/// The condition `h(q)` and `h'(q)` for `kind` on `g`.
pub fn hunt_condition(g: &SpExpr, q: Cx, kind: HuntKind) -> Result<(Cx, Cx)> {
    let p = pair_recursion(g, Dual::variable(q))?;
    let h = kind.condition(&p);
    Ok((h.v, h.d))
}

/// Damped Newton on `h`; returns the root and `|h|` there.
fn newton(g: &SpExpr, start: Cx, kind: HuntKind, opts: &HuntOptions) -> Option<(Cx, f64)> {
    let mut q = start;
    for _ in 0..opts.max_iters {
        let (h, dh) = hunt_condition(g, q, kind).ok()?;
        let mut step = -h / dh;
        if !step.is_finite() {
            return None;
        }
        let cap = opts.max_step * (1.0 + q.norm());
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        q += step;
        if step.norm() < 1e-13 * (1.0 + q.norm()) {
            let (h, _) = hunt_condition(g, q, kind).ok()?;
            return (h.norm() < opts.tolerance).then_some((q, h.norm()));
        }
    }
    let (h, _) = hunt_condition(g, q, kind).ok()?;
    (h.norm() < opts.tolerance && h.is_finite()).then_some((q, h.norm()))
}

/// For each depth, Newton from rings of seeds around `q_seed` on the
/// alternating `(d1, d2)` leaf-joined tree, for both kinds. Depths without
/// a converged run yield records with no zeros.
pub fn zero_hunt_leafjoined(d1: u32, d2: u32, depths: &[u32], q_seed: Cx, opts: &HuntOptions) -> Result<Vec<HuntRecord>> {
    if d2 < 1 || d2 > d1 {
        return Err(Error::Argument(format!("need 1 <= d2 <= d1, got ({d1}, {d2})")));
    }
    let jobs: Vec<(u32, HuntKind)> = depths.iter().flat_map(|&d| HuntKind::ALL.map(|k| (d, k))).collect();
    let records = map_indexed(jobs.len(), opts.workers, |i| {
        let (depth, kind) = jobs[i];
        let shape = alternating_shape(d1 as usize, d2 as usize, depth)?;
        let t = leafjoined_expr(&shape);
        let mut zeros: Vec<FoundZero> = Vec::new();
        for s in opts.seeds(q_seed) {
            if let Some((q, residual)) = newton(&t, s, kind, opts) {
                if zeros.iter().all(|z| (z.q - q).norm() > 1e-9 * (1.0 + q.norm())) {
                    zeros.push(FoundZero { q, residual, distance: (q - q_seed).norm() });
                }
            }
        }
        zeros.sort_by(|a, b| a.distance.total_cmp(&b.distance));
        Ok(HuntRecord { d1, d2, depth, kind, edges: kind.witness_graph(&t).edge_count(), zeros })
    });
    records.into_iter().collect()
}

/// `|Z(g; q)| / |Z(g; q_ref)|`, computed from scaled pairs.
pub fn z_magnitude_ratio(g: &SpExpr, q: Cx, q_ref: Cx) -> Result<f64> {
    let a = pair_recursion(g, q)?;
    let b = pair_recursion(g, q_ref)?;
    let za = (a.same + a.dif).norm();
    let zb = (b.same + b.dif).norm();
    Ok((za.ln() - zb.ln() + a.log_scale - b.log_scale).exp())
}
