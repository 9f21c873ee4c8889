//! Simultaneous root finding for complex polynomials (Aberth–Ehrlich).

use crate::{Cx, Error, Result};

const MAX_ITERS: usize = 2000;

/// Horner evaluation of `p` and `p'`; coefficients run from low to high degree.
pub(crate) fn eval_with_derivative(coeffs: &[Cx], z: Cx) -> (Cx, Cx) {
    let mut p = Cx::new(0.0, 0.0);
    let mut dp = Cx::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `Σ coeffs[k] z^k`, with multiplicity.
pub fn poly_roots(coeffs: &[Cx]) -> Result<Vec<Cx>> {
    let mut c: Vec<Cx> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == Cx::new(0.0, 0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Argument("the zero polynomial has no isolated roots".into()));
    }
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Argument("non-finite coefficient".into()));
    }
    let mut leading_zeros = 0;
    while c[leading_zeros] == Cx::new(0.0, 0.0) {
        leading_zeros += 1;
    }
    let c = &c[leading_zeros..];
    let n = c.len() - 1;
    let mut roots = vec![Cx::new(0.0, 0.0); leading_zeros];
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    // Fujiwara-type bound for the initial circle.
    let radius = (0..n)
        .map(|k| (c[k] / lead).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Cx> = (0..n)
        .map(|k| Cx::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITERS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(c, z[i]);
            if p == Cx::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let s: Cx = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Cx::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged && z.iter().any(|r| !r.is_finite()) {
        return Err(Error::NonConvergence("Aberth iteration diverged".into()));
    }
    roots.extend(z);
    Ok(roots)
}
