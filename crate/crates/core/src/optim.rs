//! One-dimensional maximization helpers shared by the certificate and
//! activity searches.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid scan over the open interval `(a, b)` followed by golden-section
/// refinement between the neighbours of the best grid point. Ties on the
/// grid keep the leftmost point, so the result is deterministic.
pub(crate) fn grid_then_golden(f: impl Fn(f64) -> f64, a: f64, b: f64, grid: usize, iters: usize) -> (f64, f64) {
    let n = grid.max(3);
    let h = (b - a) / (n + 1) as f64;
    let mut best = (a + h, f64::NEG_INFINITY);
    let mut best_j = 1;
    for j in 1..=n {
        let x = a + h * j as f64;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
            best_j = j;
        }
    }
    let lo = a + h * (best_j - 1) as f64;
    let hi = a + h * (best_j + 1) as f64;
    let refined = golden_max(&f, lo, hi, iters);
    if refined.1 >= best.1 {
        refined
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-8 && v > -1e-15);
        let (x, _) = grid_then_golden(|x| (x * 7.0).sin() - 0.1 * x, 0.0, 3.0, 64, 80);
        assert!((x - std::f64::consts::FRAC_PI_2 / 7.0).abs() < 5e-3);
    }
}
