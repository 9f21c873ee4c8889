//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Cx;

/// Integer polynomial, coefficients in ascending degree, never with a
/// trailing zero. The zero polynomial has no coefficients and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// The indeterminate `q`.
    pub fn q() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c · q^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(degree, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// `(q - a) · self`.
    pub fn mul_linear(&self, a: i64) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let a = BigInt::from(a);
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * &a;
        }
        IntPoly::from_coeffs(out)
    }

    /// Exact quotient by `(q - a)`; the nonzero remainder is returned as the error.
    pub fn div_linear_exact(&self, a: i64) -> Result<IntPoly, BigInt> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let a = BigInt::from(a);
        let n = self.coeffs.len();
        let mut quot = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            let cur = &self.coeffs[k] + &carry * &a;
            if k == 0 {
                if !cur.is_zero() {
                    return Err(cur);
                }
            } else {
                quot[k - 1] = cur.clone();
                carry = cur;
            }
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Value at a complex point by Horner's rule in double precision. Large
    /// alternating coefficients make this lose most of its digits; prefer
    /// [`IntPoly::eval_cx`].
    pub fn eval_cx_horner(&self, q: Cx) -> Cx {
        self.coeffs.iter().rev().fold(Cx::new(0.0, 0.0), |acc, c| {
            acc * q + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Value at a complex point. The double-precision `q` is read as an exact
    /// dyadic Gaussian rational, the polynomial is evaluated exactly, and the
    /// result is rounded once.
    pub fn eval_cx(&self, q: Cx) -> Cx {
        if self.is_zero() {
            return Cx::new(0.0, 0.0);
        }
        if !(q.re.is_finite() && q.im.is_finite()) {
            return self.eval_cx_horner(q);
        }
        let (mr, er) = dyadic(q.re);
        let (mi, ei) = dyadic(q.im);
        let e = match (mr.is_zero(), mi.is_zero()) {
            (true, true) => 0,
            (false, true) => er,
            (true, false) => ei,
            (false, false) => er.min(ei),
        };
        let a = mr << (er - e).max(0) as usize;
        let b = mi << (ei - e).max(0) as usize;
        // q = (a + bi)·2^e. With e < 0 the homogenized sum
        // Σ c_k (a+bi)^k 2^{-e(n-k)} is evaluated and scaled by 2^{e·n}.
        let n = self.coeffs.len() - 1;
        let (shift, scale) = if e < 0 { ((-e) as usize, e * n as i64) } else { (0, 0) };
        let (a, b) = if e > 0 { (a << e as usize, b << e as usize) } else { (a, b) };
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        for (j, c) in self.coeffs.iter().rev().enumerate() {
            let nr = &re * &a - &im * &b;
            let ni = &re * &b + &im * &a;
            re = nr + (c << (shift * j));
            im = ni;
        }
        Cx::new(big_to_f64(&re, scale), big_to_f64(&im, scale))
    }

    /// Exact value at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `b^deg · p(a/b)`, an exact integer that vanishes iff `p(a/b) = 0` (for `b ≠ 0`).
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner on the homogenized form: acc_k = acc_{k+1}·a + c_k·b^{deg-k}.
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc
    }
}

/// `x = m·2^e` with an integer mantissa.
fn dyadic(x: f64) -> (BigInt, i64) {
    let (m, e, sign) = num_traits::Float::integer_decode(x);
    (BigInt::from(sign) * BigInt::from(m), e as i64)
}

/// `x·2^scale` rounded to double precision.
fn big_to_f64(x: &BigInt, scale: i64) -> f64 {
    let bits = x.bits() as i64;
    let drop = (bits - 62).max(0);
    let top = (x >> drop as usize).to_f64().unwrap_or(f64::NAN);
    ldexp(top, drop + scale)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => BigInt::zero(),
            })
            .collect();
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    /// Sparse form, highest degree first, e.g. `q^4 - 4*q^3 + 6*q^2 - 3*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}
