//! Zero-free certificates.
//!
//! A closed disk `V` with `0 ∈ V`, `1 - q ∉ V²`, `V² ⊆ V` and
//! `f_q(f_q(V)²) ⊆ V` shows that no series-parallel graph has a chromatic
//! zero at `q`. When `f_q(V) = V` the last condition follows from the third,
//! so most methods search among `f_q`-invariant disks. `V² ⊆ V` is checked
//! through `(sup_V |z|)² < inf_{C∖V} |z|`.

use serde::{Deserialize, Serialize};

use crate::moebius::{
    disk_image_moebius, disk_inf_abs_complement, disk_sup_abs, f_raw, invariant_disk, Disk, InvariantDiskParam, Side,
    DEFAULT_DELTA,
};
use crate::optim::grid_then_golden;
use crate::{Cx, Error, Result};

/// Radius of the disk around 1 handled by [`certify_near_one`]: `7 - 4√3`.
pub fn near_one_radius() -> f64 {
    7.0 - 4.0 * 3f64.sqrt()
}

/// Right end of the real interval handled by [`certify_real_3227`].
pub const REAL_3227_END: f64 = 32.0 / 27.0;

/// Default number of grid points per side in [`certify_general`].
pub const DEFAULT_RHO_GRID: usize = 96;

/// Tolerance on `f_q(V) = V`, relative to `max(1, radius)`.
pub const INVARIANCE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "real01")]
    Real01,
    #[serde(rename = "real3227")]
    Real3227,
    #[serde(rename = "near_one")]
    NearOne,
    #[serde(rename = "general")]
    General,
}

/// Slack of each condition; a certificate needs all of them positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    /// `radius - |center|`.
    pub origin_in: f64,
    /// Distance from `±√(1-q)` to `V`.
    pub one_minus_q_out: f64,
    /// `inf_{C∖V}|z| - (sup_V |z|)²`.
    pub square_in: f64,
    /// Slack of `f_q(f_q(V)²) ⊆ V`: for invariant disks the containment
    /// `f_q(B(0, sup²)) ⊆ V`, for the near-1 disks the `ρ(s)` sandwich.
    pub image_in: f64,
}

impl Margins {
    pub fn min(&self) -> f64 {
        self.origin_in.min(self.one_minus_q_out).min(self.square_in).min(self.image_in)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeCertificate {
    pub q: Cx,
    pub disk: Disk,
    pub margins: Margins,
    pub method: Method,
    /// The invariant-disk parameters, when the disk is `f_q`-invariant.
    pub param: Option<InvariantDiskParam>,
}

impl ZeroFreeCertificate {
    pub fn slack(&self) -> f64 {
        self.margins.min()
    }
}

/// Why a disk is not a certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum Reject {
    ExcludedParameter,
    OriginOutside { slack: f64 },
    SquareRootInside { slack: f64 },
    SquareNotContained { slack: f64 },
    UnboundedImage,
    NotInvariant { error: f64 },
    ImageNotContained { slack: f64 },
}

fn excluded(q: Cx) -> bool {
    q.im == 0.0 && (q.re == 0.0 || q.re == 1.0 || q.re == 2.0)
}

/// The three conditions that do not involve `f_q`.
fn basic_margins(q: Cx, v: &Disk) -> (f64, f64, f64) {
    let s = (1.0 - q).sqrt();
    let origin = v.radius - v.center.norm();
    let root = (s - v.center).norm().min((-s - v.center).norm()) - v.radius;
    let sup = disk_sup_abs(v);
    let square = disk_inf_abs_complement(v) - sup * sup;
    (origin, root, square)
}

/// Smallest margin of an `f_q`-invariant disk, image condition included.
fn basic_min(q: Cx, v: &Disk) -> f64 {
    let (a, b, c) = basic_margins(q, v);
    let sup = disk_sup_abs(v);
    let w = Disk { center: Cx::new(0.0, 0.0), radius: sup * sup };
    let img = disk_image_moebius(q, &w).map_or(f64::NEG_INFINITY, |fw| v.contains_disk_slack(&fw));
    a.min(b).min(c).min(img)
}

/// Check the four conditions for `V`, taking the last one through
/// `f_q(V) = V`. Rejections name the first failing condition in the order
/// origin, squaring, square roots, invariance, image.
pub fn check_certificate(q: Cx, v: &Disk, delta: f64) -> std::result::Result<ZeroFreeCertificate, Reject> {
    if excluded(q) {
        return Err(Reject::ExcludedParameter);
    }
    let (origin_in, one_minus_q_out, square_in) = basic_margins(q, v);
    if origin_in < delta {
        return Err(Reject::OriginOutside { slack: origin_in });
    }
    if square_in < delta {
        return Err(Reject::SquareNotContained { slack: square_in });
    }
    if one_minus_q_out < delta {
        return Err(Reject::SquareRootInside { slack: one_minus_q_out });
    }
    let img = disk_image_moebius(q, v).map_err(|_| Reject::UnboundedImage)?;
    let error = (img.center - v.center).norm() + (img.radius - v.radius).abs();
    if !(error <= INVARIANCE_TOL * v.radius.max(1.0)) {
        return Err(Reject::NotInvariant { error });
    }
    // V² lies in W = B(0, sup²) ⊆ V, so f_q(f_q(V)²) = f_q(V²) ⊆ f_q(W) ⊆ f_q(V) = V.
    let sup = disk_sup_abs(v);
    let w = Disk { center: Cx::new(0.0, 0.0), radius: sup * sup };
    let image_in = match disk_image_moebius(q, &w) {
        Ok(fw) => v.contains_disk_slack(&fw) - error,
        Err(_) => return Err(Reject::UnboundedImage),
    };
    if image_in < delta {
        return Err(Reject::ImageNotContained { slack: image_in });
    }
    Ok(ZeroFreeCertificate {
        q,
        disk: *v,
        margins: Margins { origin_in, one_minus_q_out, square_in, image_in },
        method: Method::General,
        param: None,
    })
}

fn not_found(best: f64) -> Error {
    Error::NotFound { best_slack: best }
}

/// Certificate from an `f_q`-invariant disk with real diameter `[t, f_q(t)]`.
fn real_diameter(q: f64, t: f64) -> Disk {
    let qc = Cx::new(q, 0.0);
    Disk::with_diameter(Cx::new(t, 0.0), f_raw(qc, Cx::new(t, 0.0)))
}

fn finish_real(q: f64, t: f64, method: Method) -> Result<ZeroFreeCertificate> {
    let qc = Cx::new(q, 0.0);
    let v = real_diameter(q, t);
    match check_certificate(qc, &v, DEFAULT_DELTA) {
        Ok(mut c) => {
            c.method = method;
            c.param = InvariantDiskParam::through(qc, Cx::new(t, 0.0)).ok();
            Ok(c)
        }
        Err(_) => Err(not_found(basic_min(qc, &v))),
    }
}

/// `0 < q < 1`: the disk with diameter `[f_q(a), a]` for the best
/// `a ∈ (1-q, √(1-q))`.
pub fn certify_real_01(q: f64) -> Result<ZeroFreeCertificate> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::OutOfRange(format!("real01 needs 0 < q < 1, got {q}")));
    }
    if 1.0 - q < 1e-6 {
        return certify_near_one(Cx::new(q, 0.0));
    }
    let r = (1.0 - q).sqrt();
    let qc = Cx::new(q, 0.0);
    let (a, best) = grid_then_golden(|a| basic_min(qc, &real_diameter(q, a)), 1.0 - q, r, 64, 80);
    if best < DEFAULT_DELTA {
        if (q - 1.0).abs() < near_one_radius() {
            return certify_near_one(qc);
        }
        return Err(not_found(best));
    }
    finish_real(q, a, Method::Real01)
}

/// `1 < q < 32/27`: the disk with diameter `[t, f_q(t)]` for the best `t`
/// below the solution `r ∈ (-1/3, 0)` of `f_q(r) = r²`.
pub fn certify_real_3227(q: f64) -> Result<ZeroFreeCertificate> {
    if !(q > 1.0 && q < REAL_3227_END - 1e-9) {
        return Err(Error::NotFound { best_slack: f64::NEG_INFINITY });
    }
    let qc = Cx::new(q, 0.0);
    let h = |z: f64| f_raw(qc, Cx::new(z, 0.0)).re - z * z;
    // h(0) = 1 - q < 0 and h(-1/3) = 8/9 - 3q/4 > 0.
    let (mut lo, mut hi) = (-1.0 / 3.0, 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let left = (-(q - 1.0).sqrt()).max(-1.0 / 3.0);
    let (t, best) = grid_then_golden(|t| basic_min(qc, &real_diameter(q, t)), left, r, 64, 80);
    if best < DEFAULT_DELTA {
        return Err(not_found(best));
    }
    finish_real(q, t, Method::Real3227)
}

/// Margins of `B_s(0)` near `q = 1`, with the `ρ(s)` sandwich as the last one.
fn near_one_margins(big_r: f64, s: f64) -> Margins {
    let r2 = big_r * big_r;
    let rho = (r2 + s) / (1.0 - s);
    let rho_inv = (s - r2) / (1.0 + s);
    Margins { origin_in: s, one_minus_q_out: big_r - s, square_in: s - s * s, image_in: rho_inv - rho * rho }
}

/// `0 < |q - 1| < 7 - 4√3`: the centred disk `B_s(0)`.
///
/// `B_s` is not `f_q`-invariant. Instead `f_q(B_s) ⊆ B_{ρ(s)}` and
/// `B_{ρ⁻¹(s)} ⊆ f_q(B_s)` with `ρ(s) = (R²+s)/(1-s)`,
/// `ρ⁻¹(s) = (s-R²)/(1+s)`, `R = √|1-q|`, so `ρ(s)² < ρ⁻¹(s)` gives
/// `f_q(B_s)² ⊆ f_q(B_s)`.
pub fn certify_near_one(q: Cx) -> Result<ZeroFreeCertificate> {
    let d = (q - 1.0).norm();
    if d == 0.0 {
        return Err(Error::Domain("q = 1 is excluded".into()));
    }
    if !(d < near_one_radius()) {
        return Err(Error::OutOfRange(format!("|q - 1| = {d} is not below 7 - 4*sqrt(3)")));
    }
    let big_r = d.sqrt();
    let r2 = d;
    let quad = |s: f64| 3.0 * s * s + (r2 - 1.0) * s + r2;
    let vertex = (1.0 - r2) / 6.0;
    let s = if vertex > 0.0 && vertex < big_r {
        vertex
    } else {
        grid_then_golden(|s| near_one_margins(big_r, s).min(), 0.0, big_r, 64, 80).0
    };
    let lhs = (r2 + 1.0) * quad(s);
    let margins = near_one_margins(big_r, s);
    if !(lhs <= -DEFAULT_DELTA) || margins.min() < DEFAULT_DELTA {
        return Err(not_found(margins.min().min(-lhs)));
    }
    Ok(ZeroFreeCertificate {
        q,
        disk: Disk { center: Cx::new(0.0, 0.0), radius: s },
        margins,
        method: Method::NearOne,
        param: None,
    })
}

/// Search both sides of the invariant family `|z - p±| ≤ k |z - p∓|` for the
/// disk maximizing the smallest of the three direct margins.
pub fn certify_general(q: Cx, rho_grid: usize) -> Result<ZeroFreeCertificate> {
    if excluded(q) {
        return Err(Error::Domain("q in {0, 1, 2} is excluded".into()));
    }
    let mut best: Option<(f64, InvariantDiskParam)> = None;
    for side in [Side::Inside, Side::Outside] {
        let param = |k: f64| InvariantDiskParam { q, rho: if side == Side::Inside { k } else { 1.0 / k }, side };
        let score = |k: f64| match invariant_disk(param(k)) {
            Ok(v) => basic_min(q, &v),
            Err(_) => f64::NEG_INFINITY,
        };
        let (k, val) = grid_then_golden(score, 0.0, 1.0, rho_grid, 60);
        if best.as_ref().is_none_or(|b| val > b.0) {
            best = Some((val, param(k)));
        }
    }
    let (val, param) = best.expect("two sides searched");
    if val < DEFAULT_DELTA {
        return Err(not_found(val));
    }
    let v = invariant_disk(param)?;
    match check_certificate(q, &v, DEFAULT_DELTA) {
        Ok(mut c) => {
            c.param = Some(param);
            Ok(c)
        }
        Err(_) => Err(not_found(val)),
    }
}

/// Which certificate construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// The dedicated method when `q` lies in its range, the general search
    /// otherwise or when the dedicated method fails.
    #[default]
    Auto,
    Real01,
    Real3227,
    NearOne,
    General,
}

pub fn certify(q: Cx, choice: MethodChoice) -> Result<ZeroFreeCertificate> {
    match choice {
        MethodChoice::Real01 => certify_real_01(real_part(q)?),
        MethodChoice::Real3227 => certify_real_3227(real_part(q)?),
        MethodChoice::NearOne => certify_near_one(q),
        MethodChoice::General => certify_general(q, DEFAULT_RHO_GRID),
        MethodChoice::Auto => {
            if excluded(q) {
                return Err(Error::Domain("q in {0, 1, 2} is excluded".into()));
            }
            let fast = if q.im == 0.0 && q.re > 0.0 && q.re < 1.0 {
                Some(certify_real_01(q.re))
            } else if q.im == 0.0 && q.re > 1.0 && q.re < REAL_3227_END {
                Some(certify_real_3227(q.re))
            } else if (q - 1.0).norm() < near_one_radius() {
                Some(certify_near_one(q))
            } else {
                None
            };
            match fast {
                Some(Ok(c)) => Ok(c),
                _ => certify_general(q, DEFAULT_RHO_GRID),
            }
        }
    }
}

fn real_part(q: Cx) -> Result<f64> {
    if q.im != 0.0 {
        return Err(Error::OutOfRange("this method needs a real q".into()));
    }
    Ok(q.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    #[test]
    fn recipe_disk_is_accepted() {
        let q = cx(0.5, 0.0);
        let v = Disk::with_diameter(cx(-2.0 / 3.0, 0.0), cx(0.7, 0.0));
        let c = check_certificate(q, &v, DEFAULT_DELTA).unwrap();
        assert!((c.margins.square_in - (2.0 / 3.0 - 0.49)).abs() < 1e-12);
    }

    #[test]
    fn unit_disk_fails_squaring() {
        let r = check_certificate(cx(0.5, 0.0), &Disk::new(cx(0.0, 0.0), 1.0).unwrap(), DEFAULT_DELTA);
        assert!(matches!(r, Err(Reject::SquareNotContained { .. })));
    }

    #[test]
    fn excluded_parameters() {
        let v = Disk::new(cx(0.0, 0.0), 0.1).unwrap();
        for q in [0.0, 1.0, 2.0] {
            assert_eq!(check_certificate(cx(q, 0.0), &v, DEFAULT_DELTA), Err(Reject::ExcludedParameter));
        }
        assert!(matches!(certify_near_one(cx(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn real_intervals() {
        for q in [0.05, 0.5, 0.95] {
            let c = certify_real_01(q).unwrap();
            assert_eq!(c.method, Method::Real01);
        }
        let c = certify_real_01(0.5).unwrap();
        assert!(c.disk.center.re - c.disk.radius > -1.0 && c.disk.center.re + c.disk.radius < 0.7072);
        for q in [1.1, 1.18] {
            assert_eq!(certify_real_3227(q).unwrap().method, Method::Real3227);
        }
        assert!(matches!(certify_real_3227(1.19), Err(Error::NotFound { .. })));
    }

    #[test]
    fn near_one_examples() {
        let q = cx(1.0, 0.05);
        let big_r = 0.05f64.sqrt();
        assert!(3.0 * 0.01 + (big_r * big_r - 1.0) * 0.1 + big_r * big_r < 0.0);
        let c = certify_near_one(q).unwrap();
        assert_eq!(c.method, Method::NearOne);
        assert!(matches!(certify_near_one(cx(1.0718, 0.0)), Err(Error::OutOfRange(_))));
        let c = certify_real_01(0.99).unwrap();
        assert!(c.slack() >= DEFAULT_DELTA);
    }

    #[test]
    fn general_search() {
        assert_eq!(certify_general(cx(0.5, 0.05), DEFAULT_RHO_GRID).unwrap().method, Method::General);
        assert!(certify_general(cx(1.1, 0.0), DEFAULT_RHO_GRID).is_ok());
        assert!(matches!(certify_general(cx(1.9, 0.0), DEFAULT_RHO_GRID), Err(Error::NotFound { .. })));
        assert!(matches!(certify_general(cx(3.0, 0.0), DEFAULT_RHO_GRID), Err(Error::NotFound { .. })));
    }
}
