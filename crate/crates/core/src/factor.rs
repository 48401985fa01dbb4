//! Factorization of univariate polynomials over prime fields: squarefree
//! decomposition, distinct-degree splitting and Cantor-Zassenhaus
//! equal-degree splitting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::ModPoly;

/// `f = leading * prod g_i^{e_i}` with monic irreducible `g_i` in canonical
/// order (degree, then coefficients from the top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub p: u64,
    pub leading: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> ModPoly {
        let mut acc = ModPoly::new(self.p, vec![self.leading]);
        for (g, e) in &self.factors {
            acc = acc.mul(&g.pow(*e)).expect("same modulus");
        }
        acc
    }

    /// `(e, deg g)` for every factor.
    pub fn pattern(&self) -> Vec<(u32, usize)> {
        self.factors
            .iter()
            .map(|(g, e)| (*e, g.degree().unwrap_or(0)))
            .collect()
    }
}

impl fmt::Display for ModFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.leading != 1 {
            write!(f, "{}", self.leading)?;
        }
        for (g, e) in &self.factors {
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        if self.leading == 1 && self.factors.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

fn exact_div(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let (q, r) = a.div_rem(b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q
}

/// Squarefree decomposition `f = lc * prod a_i^i`, parts sorted by
/// multiplicity. Parts are monic, squarefree and pairwise coprime.
pub fn squarefree_decompose(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.canonical_cmp(&b.0)));
    Ok(out)
}

fn sqf_rec(f: &ModPoly, scale: u32, out: &mut Vec<(ModPoly, u32)>) {
    if f.degree() == Some(0) {
        return;
    }
    let p = f.modulus();
    let mut c = f.gcd(&f.derivative()).expect("same modulus");
    let mut w = exact_div(f, &c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("same modulus");
        let fac = exact_div(&w, &y);
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = exact_div(&c, &w);
        i += 1;
    }
    if !c.is_one() {
        sqf_rec(&c.frobenius_root(), scale * p as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(product of all irreducible factors of degree k, k)` for each `k` that
/// occurs.
pub fn distinct_degree(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.gcd(&f.derivative())?.is_one() {
        return Err(Error::NotSquarefree);
    }
    let p = f.modulus();
    let x = ModPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod_u64(p, &rest)?;
        let g = h.sub(&x)?.gcd(&rest)?;
        if !g.is_one() {
            rest = exact_div(&rest, &g);
            h = h.rem(&rest)?;
            out.push((g, k));
        }
        k += 1;
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((rest, d));
        }
    }
    Ok(out)
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, below: usize) -> ModPoly {
    ModPoly::new(p, (0..below).map(|_| rng.random_range(0..p)).collect())
}

// Splits a product of distinct irreducibles of degree k into its factors.
fn equal_degree(g: &ModPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) -> Result<()> {
    let n = g.degree().expect("nonzero");
    if n == k {
        out.push(g.clone());
        return Ok(());
    }
    let p = g.modulus();
    let exp = if p == 2 {
        None
    } else {
        Some((BigUint::from(p).pow(k as u32) - BigUint::one()) >> 1)
    };
    loop {
        let a = random_poly(rng, p, n);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = match &exp {
            Some(e) => a.pow_mod(e, g)?.sub(&ModPoly::one(p))?,
            None => {
                // absolute trace F_{2^k} -> F_2
                let mut t = a.rem(g)?;
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mul(&t)?.rem(g)?;
                    acc = acc.add(&t)?;
                }
                acc
            }
        };
        let d = b.gcd(g)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            equal_degree(&d, k, rng, out)?;
            equal_degree(&exact_div(g, &d), k, rng, out)?;
            return Ok(());
        }
    }
}

/// Complete factorization over `F_p`. Output depends only on `(f, seed)`.
pub fn factor(f: &ModPoly, seed: u64) -> Result<ModFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, e) in squarefree_decompose(f)? {
        for (g, k) in distinct_degree(&part)? {
            let mut pieces = Vec::new();
            equal_degree(&g, k, &mut rng, &mut pieces)?;
            factors.extend(pieces.into_iter().map(|h| (h, e)));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(ModFactorization {
        p: f.modulus(),
        leading: f.leading(),
        factors,
    })
}

/// Factor pattern `(e, deg)` sorted ascending, computed without
/// equal-degree splitting.
pub fn factor_pattern(f: &ModPoly) -> Result<Vec<(u32, usize)>> {
    let mut out = Vec::new();
    for (part, e) in squarefree_decompose(f)? {
        for (g, k) in distinct_degree(&part)? {
            let count = g.degree().unwrap_or(0) / k;
            out.extend(std::iter::repeat_n((e, k), count));
        }
    }
    out.sort_unstable_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// Degrees of the irreducible factors of a squarefree polynomial, ascending.
pub fn cycle_degrees(f: &ModPoly) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (g, k) in distinct_degree(&f.monic())? {
        out.extend(std::iter::repeat_n(k, g.degree().unwrap_or(0) / k));
    }
    out.sort_unstable();
    Ok(out)
}
