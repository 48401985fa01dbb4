use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Dense polynomial over `F_p` with coefficients reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &ModPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("prime modulus");
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> ModPoly {
        ModPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let n = self.c.len().max(other.c.len());
        Ok(ModPoly::new(
            self.p,
            (0..n)
                .map(|i| ((self.coeff(i) as u128 + other.coeff(i) as u128) % self.p as u128) as u64)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let n = self.c.len().max(other.c.len());
        Ok(ModPoly::new(
            self.p,
            (0..n)
                .map(|i| {
                    ((self.coeff(i) as u128 + (self.p - other.coeff(i)) as u128) % self.p as u128) as u64
                })
                .collect(),
        ))
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(ModPoly::zero(self.p));
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Ok(ModPoly::new(self.p, out.into_iter().map(|v| v as u64).collect()))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((ModPoly::zero(p), self.clone()));
        }
        let inv = inv_mod(divisor.leading(), p).expect("prime modulus");
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = mul_mod(r[i], inv, p);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &dc) in divisor.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = ((r[idx] as u128 + (p - mul_mod(coef, dc, p)) as u128) % p as u128) as u64;
            }
        }
        r.truncate(dd);
        Ok((ModPoly::new(p, q), ModPoly::new(p, r)))
    }

    pub fn rem(&self, divisor: &ModPoly) -> Result<ModPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &c| ((mul_mod(acc, x, self.p) as u128 + c as u128) % self.p as u128) as u64)
    }

    pub fn derivative(&self) -> ModPoly {
        ModPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^exp mod m`.
    pub fn pow_mod(&self, exp: &BigUint, m: &ModPoly) -> Result<ModPoly> {
        let mut acc = ModPoly::one(self.p).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc)?.rem(m)?;
            if exp.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, exp: u64, m: &ModPoly) -> Result<ModPoly> {
        self.pow_mod(&BigUint::from(exp), m)
    }

    /// `self^k` without reduction.
    pub fn pow(&self, k: u32) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        for _ in 0..k {
            acc = acc.mul(self).expect("same modulus");
        }
        acc
    }

    /// For `f = g(x^p)` returns `g`, which is the p-th root of `f` over F_p.
    pub fn frobenius_root(&self) -> ModPoly {
        let p = self.p as usize;
        ModPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Canonical ordering: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &ModPoly) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
