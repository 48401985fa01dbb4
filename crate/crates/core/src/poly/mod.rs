//! Polynomial arithmetic: dense integer polynomials, dense polynomials over
//! prime fields and sparse multivariate integer polynomials.

mod modp;
mod multi;

pub use modp::ModPoly;
pub use multi::{det_linear_forms, MultiPoly, MAX_DET_DIM};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integral domain elements that support exact division, enough for
/// fraction-free elimination.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// `self / other`, assuming the division is exact.
    fn ring_div(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_div(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(R::ring_one());
    }
    let mut sign_flip = false;
    let mut prev = R::ring_one();
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ring_is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(R::ring_zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].ring_mul(&m[i][j]).ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = t.ring_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.ring_neg() } else { det })
}

/// Dense polynomial with integer coefficients `c0 + c1 x + ... + cd x^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(v: Vec<BigInt>) -> Self {
        IntPoly::new(v)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Reduction modulo a prime.
    pub fn reduce(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect(),
        )
    }

    /// Integer coefficients as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Resultant of `self` and `other` via the Sylvester matrix.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(Error::ZeroPolynomial),
        };
        let size = m + n;
        if size == 0 {
            return Ok(BigInt::one());
        }
        let mut rows = Vec::with_capacity(size);
        for shift in 0..n {
            let mut row = vec![BigInt::zero(); size];
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        for shift in 0..m {
            let mut row = vec![BigInt::zero(); size];
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        bareiss_det(rows)
    }

    /// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        let res = self.resultant(&self.derivative())?;
        let sign = if (d * (d - 1) / 2) % 2 == 1 { -1 } else { 1 };
        Ok(res * BigInt::from(sign) / self.leading())
    }

    /// Integer roots (divisors of the constant term that vanish).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let Some(_) = self.degree() else {
            return Vec::new();
        };
        let c0 = self.coeff(0);
        if c0.is_zero() {
            let mut r = vec![BigInt::zero()];
            let shifted = IntPoly::new(
                self.coeffs
                    .iter()
                    .skip_while(|c| c.is_zero())
                    .cloned()
                    .collect(),
            );
            r.extend(shifted.integer_roots());
            r.sort();
            r.dedup();
            return r;
        }
        let Some(c) = c0.abs().to_u64() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for dv in divisors(c) {
            for cand in [BigInt::from(dv), -BigInt::from(dv)] {
                if self.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let f = crate::arith::factorize(n);
    let mut out = vec![1u64];
    for &(p, e) in &f.0 {
        let cur = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}
