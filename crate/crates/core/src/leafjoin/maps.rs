//! The tree recursion `F_{λ,d}` and the parameter changes between `q`, `λ`
//! and `u`.

use super::roots::{eval_with_derivative, poly_roots};
use crate::{Cx, Error, Result};

fn one() -> Cx {
    Cx::new(1.0, 0.0)
}

/// `F_{λ,d}(z_1, …, z_d) = λ / ∏ (1 + z_i)`.
pub fn f_map(lambda: Cx, zs: &[Cx]) -> Result<Cx> {
    let mut den = one();
    for z in zs {
        let t = one() + z;
        if t.norm() == 0.0 {
            return Err(Error::Pole("z_i = -1".into()));
        }
        den *= t;
    }
    Ok(lambda / den)
}

/// `G(z) = F1(F2(z))` with `F2(z) = λ/(1+z)^{d2}` and `F1(w) = λ/(1+w)^{d1}`:
/// two levels of the alternating tree. The `d1 - d2` extra children at the
/// second level are leaves of the leaf-joined tree, whose modified ratio is
/// `0`, so they contribute a factor `1`.
pub fn two_level_map(lambda: Cx, d1: u32, d2: u32, z: Cx) -> Result<Cx> {
    let w = f_map(lambda, &vec![z; d2 as usize])?;
    f_map(lambda, &vec![w; d1 as usize])
}

/// `G(z)` and `G'(z)` for [`two_level_map`].
pub(crate) fn two_level_with_derivative(lambda: Cx, d1: u32, d2: u32, z: Cx) -> (Cx, Cx) {
    let w = lambda / (one() + z).powu(d2);
    let g = lambda / (one() + w).powu(d1);
    let dg = (d1 * d2) as f64 * g * w / ((one() + z) * (one() + w));
    (g, dg)
}

/// `λ(q, d) = (q - 1)^d / (q - 2)^{d+1}`.
pub fn lambda_q_d(q: Cx, d: u32) -> Result<Cx> {
    if q == Cx::new(2.0, 0.0) {
        return Err(Error::Domain("λ(q, d) has a pole at q = 2".into()));
    }
    Ok((q - 1.0).powu(d) / (q - 2.0).powu(d + 1))
}

/// `λ_Δ(u) = -(Δ-1)^{Δ-1} u / (Δ - 1 + u)^Δ`.
pub fn lambda_delta(u: Cx, delta: u32) -> Result<Cx> {
    if delta < 2 {
        return Err(Error::Argument("Δ must be at least 2".into()));
    }
    let d = (delta - 1) as f64;
    let den = Cx::new(d, 0.0) + u;
    if den.norm() == 0.0 {
        return Err(Error::Domain("λ_Δ(u) has a pole at u = 1 - Δ".into()));
    }
    // Powers of Δ - 1 are folded into (u / (Δ-1)) to avoid overflow.
    let t = Cx::new(1.0, 0.0) + u / d;
    Ok(-(u / d) / t.powu(delta))
}

/// All `d + 1` solutions `q` of `(q - 1)^d = λ (q - 2)^{d+1}`.
///
/// With `x = (q - 2)/(q - 1)` the equation becomes `λ x^{d+1} + x - 1 = 0`,
/// which is sparse and well scaled; `q = 1 + 1/(1 - x)`.
pub fn q_roots_from_lambda(lambda: Cx, d: u32) -> Result<Vec<Cx>> {
    if d == 0 {
        return Err(Error::Argument("d must be positive".into()));
    }
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("λ must be finite and nonzero".into()));
    }
    let mut c = vec![Cx::new(0.0, 0.0); d as usize + 2];
    c[0] = -one();
    c[1] = one();
    c[d as usize + 1] = lambda;
    let xs = poly_roots(&c)?;
    let mut qs = Vec::with_capacity(xs.len());
    for mut x in xs {
        for _ in 0..4 {
            let (p, dp) = eval_with_derivative(&c, x);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            x -= step;
        }
        let den = one() - x;
        if den.norm() == 0.0 {
            return Err(Error::NonConvergence("root at x = 1".into()));
        }
        qs.push(one() + den.inv());
    }
    Ok(qs)
}

/// Order used to pick one root: larger real part, then larger `|Im|`, then
/// positive imaginary part.
pub fn root_preference(a: &Cx, b: &Cx) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re)
        .then(a.im.abs().total_cmp(&b.im.abs()))
        .then((a.im > 0.0).cmp(&(b.im > 0.0)))
}

/// The solution of `λ(q, d) = λ` with the largest real part (ties as in
/// [`root_preference`]).
pub fn q_from_lambda(lambda: Cx, d: u32) -> Result<Cx> {
    let qs = q_roots_from_lambda(lambda, d)?;
    qs.into_iter()
        .filter(|q| q.is_finite())
        .max_by(root_preference)
        .ok_or_else(|| Error::NonConvergence("no finite root".into()))
}
