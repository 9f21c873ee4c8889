//! Forward-mode dual numbers over `Cx`: `v + d·ε` with `ε² = 0`.
//!
//! Every map evaluated here is holomorphic in `q`, so seeding `d = 1` at `q`
//! yields the exact complex derivative alongside the value.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Cx;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: Cx,
    pub d: Cx,
}

impl Dual {
    pub fn constant(v: Cx) -> Dual {
        Dual { v, d: Cx::new(0.0, 0.0) }
    }

    /// The independent variable at `v`.
    pub fn variable(v: Cx) -> Dual {
        Dual { v, d: Cx::new(1.0, 0.0) }
    }

    pub fn powu(self, n: u32) -> Dual {
        if n == 0 {
            return Dual::constant(Cx::new(1.0, 0.0));
        }
        let p = self.v.powu(n - 1);
        Dual { v: p * self.v, d: self.d * p * n as f64 }
    }

    pub fn recip(self) -> Dual {
        let r = self.v.inv();
        Dual { v: r, d: -self.d * r * r }
    }
}

impl From<Cx> for Dual {
    fn from(v: Cx) -> Dual {
        Dual::constant(v)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let v = self.v / o.v;
        Dual { v, d: (self.d - v * o.d) / o.v }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, o: f64) -> Dual {
        Dual { v: self.v + o, d: self.d }
    }
}

impl Sub<f64> for Dual {
    type Output = Dual;
    fn sub(self, o: f64) -> Dual {
        Dual { v: self.v - o, d: self.d }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, o: f64) -> Dual {
        Dual { v: self.v * o, d: self.d * o }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_rational_map() {
        // h(q) = (q^3 - 2) / (q + 1), h'(q) = (3q^2 (q+1) - (q^3 - 2)) / (q+1)^2
        let q0 = Cx::new(0.7, -1.3);
        let q = Dual::variable(q0);
        let h = (q.powu(3) - 2.0) / (q + 1.0);
        let expect = (3.0 * q0 * q0 * (q0 + 1.0) - (q0.powu(3) - 2.0)) / ((q0 + 1.0) * (q0 + 1.0));
        assert!((h.d - expect).norm() < 1e-13);
        assert!((q.recip().d + 1.0 / (q0 * q0)).norm() < 1e-14);
    }
}
