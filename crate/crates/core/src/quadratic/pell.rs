use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_square, isqrt};
use crate::error::{Error, Result};

/// Continued fraction of `sqrt a` and the least solution of
/// `x^2 - a y^2 = ±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellData {
    pub a: u64,
    pub a0: u64,
    /// One full period of partial quotients after `a0`.
    pub period: Vec<u64>,
    pub x: BigInt,
    pub y: BigInt,
    /// `x^2 - a y^2`, either 1 or -1.
    pub norm: i32,
}

impl PellData {
    /// `ln(x + y sqrt a)`.
    pub fn log_unit(&self) -> f64 {
        let ratio = (big_ln(&self.y) + 0.5 * (self.a as f64).ln() - big_ln(&self.x)).exp();
        big_ln(&self.x) + ratio.ln_1p()
    }
}

fn big_ln(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn pell_solve(a: u64) -> Result<PellData> {
    if is_square(a) {
        return Err(Error::PerfectSquare(a));
    }
    let a0 = isqrt(a);
    let (mut m, mut d, mut q) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        m = d * q - m;
        d = (a - m * m) / d;
        q = (a0 + m) / d;
        period.push(q);
        if q == 2 * a0 {
            break;
        }
        let h_next = BigInt::from(q) * &h + &h_prev;
        let k_next = BigInt::from(q) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let norm = if period.len() % 2 == 0 { 1 } else { -1 };
    debug_assert_eq!(&h * &h - BigInt::from(a) * &k * &k, BigInt::from(norm));
    Ok(PellData {
        a,
        a0,
        period,
        x: h,
        y: k,
        norm,
    })
}
