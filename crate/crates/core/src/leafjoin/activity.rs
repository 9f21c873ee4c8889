//! Neutral fixed points of the two-level map and the resulting active
//! parameters `q`.

use serde::{Deserialize, Serialize};

use super::maps::{q_from_lambda, root_preference, two_level_with_derivative};
use super::roots::poly_roots;
use crate::optim::golden_max;
use crate::par::map_indexed;
use crate::{Cx, Error, Result};

/// Default number of multiplier angles in [`activity_search`].
pub const DEFAULT_THETA_GRID: usize = 720;

const FIXED_POINT_TOL: f64 = 1e-10;
const MULTIPLIER_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActivityPoint {
    pub d1: u32,
    pub d2: u32,
    /// Argument of the multiplier `G'(z*) = e^{iθ}`, in `[0, 2π)`.
    pub theta: f64,
    pub lambda: Cx,
    pub z_fixed: Cx,
    pub multiplier: Cx,
    pub q: Cx,
}

/// Polishes a solution of `G(z) = z`, `G'(z) = m` by Newton's method in `(z, λ)`.
fn polish(d1: u32, d2: u32, m: Cx, mut z: Cx, mut lam: Cx) -> Option<(Cx, Cx)> {
    let one = Cx::new(1.0, 0.0);
    let k = (d1 * d2) as f64;
    for _ in 0..60 {
        let w = lam / (one + z).powu(d2);
        let g = lam / (one + w).powu(d1);
        let mult = k * g * w / ((one + z) * (one + w));
        let (f1, f2) = (g - z, mult - m);
        let dw_dz = -(d2 as f64) * w / (one + z);
        let dw_dl = w / lam;
        let dg_dw = -(d1 as f64) * g / (one + w);
        let dg_dz = dg_dw * dw_dz;
        let dg_dl = g / lam + dg_dw * dw_dl;
        let dm_dz = mult * (dg_dz / g + dw_dz / w - one / (one + z) - dw_dz / (one + w));
        let dm_dl = mult * (dg_dl / g + dw_dl / w - dw_dl / (one + w));
        let (a, b, c, d) = (dg_dz - one, dg_dl, dm_dz, dm_dl);
        let det = a * d - b * c;
        let dz = -(d * f1 - b * f2) / det;
        let dl = -(a * f2 - c * f1) / det;
        if !dz.is_finite() || !dl.is_finite() {
            return None;
        }
        z += dz;
        lam += dl;
        if dz.norm() + dl.norm() < 1e-15 * (1.0 + z.norm() + lam.norm()) {
            break;
        }
    }
    let (g, dg) = two_level_with_derivative(lam, d1, d2, z);
    let ok = (g - z).norm() <= FIXED_POINT_TOL && (dg - m).norm() <= MULTIPLIER_TOL && lam.is_finite();
    ok.then_some((z, lam))
}

/// All solutions `(z, λ)` of `G(z) = z`, `G'(z) = m`.
///
/// Eliminating `λ` leaves a polynomial in `u = d1·d2·z`:
/// `u^{d1+1}/k = m (1 + u/k)^{d2+1} ((1 - m/k) u - m)^{d1-1}` with `k = d1·d2`,
/// after which `w = m(1+z)/((k-m)z - m)` and `λ = z (1+w)^{d1}`.
pub fn neutral_fixed_points(d1: u32, d2: u32, m: Cx) -> Result<Vec<(Cx, Cx)>> {
    if d2 < 1 || d2 > d1 {
        return Err(Error::Argument(format!("need 1 <= d2 <= d1, got ({d1}, {d2})")));
    }
    let k = (d1 * d2) as f64;
    let one = Cx::new(1.0, 0.0);
    let n = d1 as usize + 2;
    let mut rhs = vec![m];
    for _ in 0..=d2 {
        rhs = poly_mul(&rhs, &[one, one / k]);
    }
    for _ in 1..d1 {
        rhs = poly_mul(&rhs, &[-m, one - m / k]);
    }
    let mut c = vec![Cx::new(0.0, 0.0); n.max(rhs.len())];
    c[n - 1] += one / k;
    for (i, r) in rhs.iter().enumerate() {
        c[i] -= r;
    }
    let mut out = Vec::new();
    for u in poly_roots(&c)? {
        let z = u / k;
        let den = (k - m) * z - m;
        let w = m * (one + z) / den;
        let lam = z * (one + w).powu(d1);
        if !lam.is_finite() || lam.norm() == 0.0 {
            continue;
        }
        if let Some(s) = polish(d1, d2, m, z, lam) {
            out.push(s);
        }
    }
    Ok(out)
}

fn poly_mul(a: &[Cx], b: &[Cx]) -> Vec<Cx> {
    let mut out = vec![Cx::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn better(a: &ActivityPoint, b: &ActivityPoint) -> bool {
    root_preference(&a.q, &b.q) == std::cmp::Ordering::Greater
}

/// The neutral fixed point at angle `θ` whose `q` is preferred.
pub fn activity_at(d1: u32, d2: u32, theta: f64) -> Result<Option<ActivityPoint>> {
    let m = Cx::from_polar(1.0, theta);
    let mut best: Option<ActivityPoint> = None;
    for (z, lambda) in neutral_fixed_points(d1, d2, m)? {
        let Ok(q) = q_from_lambda(lambda, d1) else { continue };
        let (_, multiplier) = two_level_with_derivative(lambda, d1, d2, z);
        let p = ActivityPoint { d1, d2, theta, lambda, z_fixed: z, multiplier, q };
        if best.as_ref().is_none_or(|b| better(&p, b)) {
            best = Some(p);
        }
    }
    Ok(best)
}

/// Sweep `θ` over `theta_grid` points of `[0, 2π)`, refine around the best
/// grid angle by golden section, and return the point with the largest
/// `Re q`. The sweep runs on `workers` threads (`0` = all available).
pub fn activity_search(d1: u32, d2: u32, theta_grid: usize, workers: usize) -> Result<ActivityPoint> {
    if d2 < 2 || d2 > d1 {
        return Err(Error::Argument(format!("need 2 <= d2 <= d1, got ({d1}, {d2})")));
    }
    let n = theta_grid.max(4);
    let step = std::f64::consts::TAU / n as f64;
    let grid = map_indexed(n, workers, |j| activity_at(d1, d2, step * j as f64));
    let mut best: Option<(usize, ActivityPoint)> = None;
    for (j, r) in grid.into_iter().enumerate() {
        if let Some(p) = r? {
            if best.as_ref().is_none_or(|b| better(&p, &b.1)) {
                best = Some((j, p));
            }
        }
    }
    let (j, grid_best) = best.ok_or_else(|| Error::NoSolution(format!("no neutral fixed point for ({d1}, {d2})")))?;
    let centre = step * j as f64;
    let score = |t: f64| match activity_at(d1, d2, t) {
        Ok(Some(p)) => p.q.re,
        _ => f64::NEG_INFINITY,
    };
    let (t, _) = golden_max(score, centre - step, centre + step, 60);
    let refined = activity_at(d1, d2, t.rem_euclid(std::f64::consts::TAU))?;
    let out = match refined {
        Some(p) if better(&p, &grid_best) => p,
        _ => grid_best,
    };
    Ok(canonical(out))
}

/// Conjugation maps neutral fixed points at angle `θ` to those at `-θ`; the
/// representative with `Im q >= 0` is returned, with `θ` in `[0, 2π)`.
fn canonical(mut p: ActivityPoint) -> ActivityPoint {
    if p.q.im < 0.0 {
        p = ActivityPoint {
            theta: -p.theta,
            lambda: p.lambda.conj(),
            z_fixed: p.z_fixed.conj(),
            multiplier: p.multiplier.conj(),
            q: p.q.conj(),
            ..p
        };
    }
    p.theta = p.theta.rem_euclid(std::f64::consts::TAU);
    if std::f64::consts::TAU - p.theta < 1e-12 {
        p.theta = 0.0;
    }
    p
}
