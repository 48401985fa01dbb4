//! Binary quadratic forms `a x^2 + b xy + c y^2` over fundamental
//! discriminants.

mod class_group;
mod pell;
mod represent;

pub use class_group::{class_group, ClassGroupQ};
pub use pell::{pell_solve, PellData};
pub use represent::{
    represents_integer_principal, represents_prime_principal, IntegerRepresentation, PrimeRepresentation,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, factorize, isqrt};
use crate::error::{Error, Result};

/// Largest `|D|` accepted by class-group enumeration.
pub const MAX_DISCRIMINANT: i64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        (b * b - 4 * a * c) as i64
    }

    /// `x^2 + b0 xy + c0 y^2` with `b0 = D mod 2`.
    pub fn principal(d: i64) -> QuadForm {
        let b0 = d.rem_euclid(2);
        QuadForm::new(1, b0, (b0 * b0 - d) / 4)
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i(gcd_i(self.a as i128, self.b as i128), self.c as i128) == 1
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm::new(self.a, -self.b, self.c)
    }

    /// The form `-f`, which represents the negatives of the values of `f`.
    pub fn negate(&self) -> QuadForm {
        QuadForm::new(-self.a, self.b, -self.c)
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    pub fn is_reduced_definite(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Indefinite reducedness `0 < b < sqrt D`, `sqrt D - b < 2|a| < sqrt D + b`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 {
            return false;
        }
        let s = isqrt(d as u64) as i64;
        let two_a = 2 * self.a.abs();
        self.b > 0 && self.b <= s && two_a + self.b > s && two_a - self.b <= s
    }

    /// One step of the reduction operator: `(a, b, c) -> (c, r, (r^2 - D)/4c)`
    /// with `r = -b mod 2c` normalised against `sqrt D`.
    pub fn rho(&self) -> QuadForm {
        let d = self.discriminant() as i128;
        let s = isqrt(d as u64) as i128;
        let c = self.c as i128;
        let m = 2 * c.abs();
        let nb = -(self.b as i128);
        let r = if c.abs() < s + 1 && c.unsigned_abs() * c.unsigned_abs() < d as u128 {
            // largest r = -b mod 2|c| with r < sqrt D
            s - (s - nb).rem_euclid(m)
        } else {
            // r in (-|c|, |c|]
            let r = nb.rem_euclid(m);
            if r > c.abs() {
                r - m
            } else {
                r
            }
        };
        QuadForm::new(self.c, r as i64, ((r * r - d) / (4 * c)) as i64)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Fundamental discriminants: `D = 1 mod 4` squarefree, or `D = 4m` with
/// `m = 2, 3 mod 4` squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |m: i64| -> bool {
        m != 0 && factorize(m.unsigned_abs()).0.iter().all(|&(_, e)| e == 1)
    };
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

pub(crate) fn check_fundamental(d: i64) -> Result<()> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamentalDiscriminant(d));
    }
    if d.abs() > MAX_DISCRIMINANT {
        return Err(Error::DiscriminantTooLarge(d));
    }
    Ok(())
}

/// Reduced form equivalent to a positive definite `form`.
pub fn reduce_definite(form: QuadForm) -> Result<QuadForm> {
    if form.discriminant() >= 0 || form.a <= 0 {
        return Err(Error::NotPositiveDefinite);
    }
    let (mut a, mut b, mut c) = (form.a as i128, form.b as i128, form.c as i128);
    loop {
        // b into (-a, a]
        let m = 2 * a;
        let mut nb = b.rem_euclid(m);
        if nb > a {
            nb -= m;
        }
        if nb != b {
            let k = (nb - b) / m;
            // x -> x + k y
            c += k * b + k * k * a;
            b = nb;
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        break;
    }
    Ok(QuadForm::new(a as i64, b as i64, c as i64))
}

/// A reduced indefinite form equivalent to `form`.
pub fn reduce_indefinite(form: QuadForm) -> QuadForm {
    let mut f = form;
    while !f.is_reduced_indefinite() {
        f = f.rho();
    }
    f
}

/// Canonical reduced representative: unique for definite forms, some form
/// on the reduction cycle for indefinite ones.
pub fn reduce(form: QuadForm) -> Result<QuadForm> {
    let d = form.discriminant();
    if d < 0 {
        if form.a < 0 {
            return Err(Error::NotPositiveDefinite);
        }
        reduce_definite(form)
    } else {
        Ok(reduce_indefinite(form))
    }
}

/// Dirichlet composition of primitive forms of equal discriminant. The
/// result is reduced.
pub fn compose(f1: QuadForm, f2: QuadForm) -> Result<QuadForm> {
    let d1 = f1.discriminant();
    let d2 = f2.discriminant();
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch(d1, d2));
    }
    reduce(compose_raw(f1, f2))
}

fn compose_raw(f1: QuadForm, f2: QuadForm) -> QuadForm {
    let d = f1.discriminant() as i128;
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let m = (b1 + b2) / 2;
    let (g1, u, v) = ext_gcd(a1, a2);
    let (g, w, z) = ext_gcd(g1, m);
    let (x, y) = (w * u, w * v);
    let a3 = a1 * a2 / (g * g);
    let num = x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + d) / 2;
    let mod2a = 2 * a3.abs();
    let b3 = (num / g).rem_euclid(mod2a);
    let c3 = (b3 * b3 - d) / (4 * a3);
    QuadForm::new(a3 as i64, b3 as i64, c3 as i64)
}

/// A form `(p, b, c)` of discriminant `d`, where `p` is a prime not inert in
/// the quadratic order; `None` when `D` is not a square mod `4p`.
pub fn prime_form(d: i64, p: u64) -> Option<QuadForm> {
    let pi = p as i128;
    let di = d as i128;
    let b = if p == 2 {
        (0..4i128).find(|b| (b * b - di).rem_euclid(8) == 0)?
    } else {
        let r = if di.rem_euclid(pi) == 0 {
            0u64
        } else {
            crate::arith::sqrt_mod(di.rem_euclid(pi) as u64, p).ok()??
        };
        let mut b = r as i128;
        if (b - di).rem_euclid(2) != 0 {
            b = pi - b;
        }
        b
    };
    let c = (b * b - di) / (4 * pi);
    Some(QuadForm::new(p as i64, b as i64, c as i64))
}
