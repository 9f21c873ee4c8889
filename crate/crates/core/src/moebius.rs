//! Geometry of the involution `f_q(y) = 1 + q/(y - 1)` on the Riemann sphere.
//!
//! `f_q` has the two fixed points `p± = 1 ± √q`. Conjugating by
//! `M(z) = (z - p+)/(z - p-)` turns `f_q` into `w ↦ -w`, so every Apollonian
//! circle `|z - p+| = ρ |z - p-|` is mapped onto itself. Those circles bound
//! the invariant disks used by the certificates.

use serde::{Deserialize, Serialize};

use crate::{Cx, Error, Result};

/// Default margin for strict geometric predicates.
pub const DEFAULT_DELTA: f64 = 1e-9;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sphere {
    Finite(Cx),
    Infinity,
}

impl Sphere {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Sphere::Infinity)
    }

    pub fn finite(&self) -> Option<Cx> {
        match *self {
            Sphere::Finite(z) => Some(z),
            Sphere::Infinity => None,
        }
    }

    /// Modulus, with `+∞` for the point at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            Sphere::Finite(z) => z.norm(),
            Sphere::Infinity => f64::INFINITY,
        }
    }

    /// Product on the sphere. `0 · ∞` has no value and is reported as `None`.
    pub fn product(self, other: Sphere) -> Option<Sphere> {
        match (self, other) {
            (Sphere::Finite(a), Sphere::Finite(b)) => Some(Sphere::from(a * b)),
            (Sphere::Infinity, Sphere::Finite(z)) | (Sphere::Finite(z), Sphere::Infinity) => {
                if z == Cx::new(0.0, 0.0) {
                    None
                } else {
                    Some(Sphere::Infinity)
                }
            }
            (Sphere::Infinity, Sphere::Infinity) => Some(Sphere::Infinity),
        }
    }
}

impl From<Cx> for Sphere {
    /// Values with an infinite component become the point at infinity.
    /// NaN stays a (poisoned) finite value so it is never mistaken for `∞`.
    fn from(z: Cx) -> Self {
        if z.re.is_infinite() || z.im.is_infinite() {
            Sphere::Infinity
        } else {
            Sphere::Finite(z)
        }
    }
}

impl From<f64> for Sphere {
    fn from(x: f64) -> Self {
        Sphere::from(Cx::new(x, 0.0))
    }
}

fn check_q(q: Cx) -> Result<()> {
    if q == Cx::new(0.0, 0.0) {
        return Err(Error::Domain("q = 0 is excluded".into()));
    }
    if !(q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::Domain("q must be finite".into()));
    }
    Ok(())
}

/// `f_q(y) = 1 + q/(y-1)` without the `q = 0` check or the pole handling.
#[inline]
pub fn f_raw(q: Cx, y: Cx) -> Cx {
    1.0 + q / (y - 1.0)
}

/// `f_q` on the Riemann sphere: `1 ↦ ∞` and `∞ ↦ 1`.
pub fn f_apply(q: Cx, y: impl Into<Sphere>) -> Result<Sphere> {
    check_q(q)?;
    Ok(f_sphere(q, y.into()))
}

/// `f_q` on the sphere for a `q` already known to be nonzero.
#[inline]
pub fn f_sphere(q: Cx, y: Sphere) -> Sphere {
    match y {
        Sphere::Infinity => Sphere::Finite(Cx::new(1.0, 0.0)),
        Sphere::Finite(y) => {
            let d = y - 1.0;
            if d == Cx::new(0.0, 0.0) {
                Sphere::Infinity
            } else {
                Sphere::from(1.0 + q / d)
            }
        }
    }
}

/// The fixed points `(1 + √q, 1 - √q)` with the principal square root.
pub fn fixed_points(q: Cx) -> Result<(Cx, Cx)> {
    check_q(q)?;
    let s = q.sqrt();
    Ok((1.0 + s, 1.0 - s))
}

/// A closed disk `B_radius(center)`; radius zero is a single point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Cx,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Cx, radius: f64) -> Result<Disk> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::Argument(format!("disk radius must be finite and >= 0, got {radius}")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::Argument("disk center must be finite".into()));
        }
        Ok(Disk { center, radius })
    }

    pub fn point(z: Cx) -> Disk {
        Disk { center: z, radius: 0.0 }
    }

    /// The disk `C(a, b)` having the segment `[a, b]` as a diameter.
    pub fn with_diameter(a: Cx, b: Cx) -> Disk {
        Disk { center: (a + b) * 0.5, radius: (a - b).norm() * 0.5 }
    }

    /// Signed distance from `z` to the boundary, positive inside.
    pub fn slack(&self, z: Cx) -> f64 {
        self.radius - (z - self.center).norm()
    }

    pub fn contains(&self, z: Cx, delta: f64) -> bool {
        self.slack(z) >= delta
    }

    /// Slack of `inner ⊆ self`: positive when `inner` lies strictly inside.
    pub fn contains_disk_slack(&self, inner: &Disk) -> f64 {
        self.radius - (inner.center - self.center).norm() - inner.radius
    }

    /// Boundary point at angle `t`.
    pub fn boundary(&self, t: f64) -> Cx {
        self.center + Cx::from_polar(self.radius, t)
    }
}

/// Which side of the Apollonian circle `|M(z)| = ρ` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `|M(z)| ≤ ρ` with `ρ < 1`: a disk around `1 + √q`.
    Inside,
    /// `|M(z)| ≥ ρ` with `ρ > 1`: a disk around `1 - √q`.
    Outside,
}

/// Parameters of an `f_q`-invariant disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantDiskParam {
    pub q: Cx,
    pub rho: f64,
    pub side: Side,
}

impl InvariantDiskParam {
    /// The parameter whose boundary circle passes through `z`.
    pub fn through(q: Cx, z: Cx) -> Result<InvariantDiskParam> {
        let (pp, pm) = fixed_points(q)?;
        let rho = (z - pp).norm() / (z - pm).norm();
        if !rho.is_finite() {
            return Err(Error::UnboundedRegion("point coincides with 1 - sqrt(q)".into()));
        }
        let side = if rho < 1.0 {
            Side::Inside
        } else if rho > 1.0 {
            Side::Outside
        } else {
            return Err(Error::UnboundedRegion("point lies on the separating line".into()));
        };
        Ok(InvariantDiskParam { q, rho, side })
    }
}

/// `{z : |z - p| ≤ k |z - p'|}` for `0 ≤ k < 1`.
fn apollonian(p: Cx, p_other: Cx, k: f64) -> Disk {
    let k2 = k * k;
    Disk {
        center: (p - p_other * k2) / (1.0 - k2),
        radius: k * (p - p_other).norm() / (1.0 - k2),
    }
}

/// The invariant disk selected by `p`.
pub fn invariant_disk(p: InvariantDiskParam) -> Result<Disk> {
    let (pp, pm) = fixed_points(p.q)?;
    if !(p.rho >= 0.0) || !p.rho.is_finite() {
        return Err(Error::Argument(format!("rho must be finite and >= 0, got {}", p.rho)));
    }
    match p.side {
        Side::Inside if p.rho < 1.0 => Ok(apollonian(pp, pm, p.rho)),
        Side::Outside if p.rho > 1.0 => Ok(apollonian(pm, pp, 1.0 / p.rho)),
        _ => Err(Error::UnboundedRegion(format!(
            "side {:?} with rho = {} contains infinity",
            p.side, p.rho
        ))),
    }
}

/// The exact image `f_q(V)`, computed by inverting `V - 1` in closed form.
pub fn disk_image_moebius(q: Cx, v: &Disk) -> Result<Disk> {
    check_q(q)?;
    let c = v.center - 1.0;
    let d = c.norm_sqr() - v.radius * v.radius;
    if !(d > 0.0) {
        return Err(Error::UnboundedImage);
    }
    // 1/z maps B_r(c) to B_{r/d}(conj(c)/d) when 0 lies outside.
    let inv_center = c.conj() / d;
    let inv_radius = v.radius / d;
    Ok(Disk { center: 1.0 + q * inv_center, radius: q.norm() * inv_radius })
}

/// `sup |z|` over `V`.
pub fn disk_sup_abs(v: &Disk) -> f64 {
    v.center.norm() + v.radius
}

/// `inf |z|` over the complement of `V`; zero when `0 ∉ V`.
pub fn disk_inf_abs_complement(v: &Disk) -> f64 {
    (v.radius - v.center.norm()).max(0.0)
}

/// Largest slack of `±√w` inside `V`; positive iff `w ∈ V²` with room to spare.
pub fn sqrt_in_disk_slack(w: Cx, v: &Disk) -> f64 {
    let s = w.sqrt();
    v.slack(s).max(v.slack(-s))
}

/// Whether `w ∈ V² = {y² : y ∈ V}`.
pub fn sqrt_in_disk(w: Cx, v: &Disk) -> bool {
    sqrt_in_disk_slack(w, v) >= 0.0
}
