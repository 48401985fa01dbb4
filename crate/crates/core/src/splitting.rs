//! Splitting of rational primes through the factorization of `f mod p`,
//! guarded by Dedekind's index criterion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::factor::{factor, factor_pattern};
use crate::field::NumberField;
use crate::poly::{IntPoly, ModPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub p: u64,
    /// `(e, f)` pairs sorted by inertia degree, then ramification index.
    pub pairs: Vec<(u32, usize)>,
    pub exceptional: bool,
}

impl SplittingType {
    pub fn has_degree_one(&self) -> bool {
        self.pairs.iter().any(|&(_, f)| f == 1)
    }

    pub fn is_ramified(&self) -> bool {
        self.pairs.iter().any(|&(e, _)| e > 1)
    }

    pub fn inertia_degrees(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, f)| f).collect()
    }

    pub fn degree_sum(&self) -> usize {
        self.pairs.iter().map(|&(e, f)| e as usize * f).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeClass {
    Low,
    High,
    Exceptional,
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::Low => "low",
            PrimeClass::High => "high",
            PrimeClass::Exceptional => "exceptional",
        })
    }
}

/// Three-valued answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexTest {
    IndexCoprime,
    IndexDivisible,
}

fn lift(g: &ModPoly) -> IntPoly {
    IntPoly::new(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Dedekind's criterion: with `f = prod g_i^e_i mod p`, `g = prod g_i` and
/// `h = f / g mod p`, put `F = (G H - f)/p` for lifts `G, H`. Then `p` does
/// not divide `[O_K : Z[t]]` iff `gcd(F, g, h) = 1` over `F_p`.
pub fn dedekind_index_test(f: &IntPoly, p: u64) -> Result<IndexTest> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = f.reduce(p);
    let fact = factor(&fp, 0)?;
    let mut g = ModPoly::one(p);
    let mut h = ModPoly::one(p);
    for (gi, e) in &fact.factors {
        g = g.mul(gi)?;
        if *e > 1 {
            h = h.mul(&gi.pow(e - 1))?;
        }
    }
    let gh = lift(&g).mul(&lift(&h));
    let diff = gh.sub(f);
    let pb = BigInt::from(p);
    let quotient: Vec<BigInt> = diff
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!((c % &pb).is_zero());
            c / &pb
        })
        .collect();
    let big_f = IntPoly::new(quotient).reduce(p);
    let common = big_f.gcd(&g)?.gcd(&h)?;
    Ok(if common.degree() == Some(0) {
        IndexTest::IndexCoprime
    } else {
        IndexTest::IndexDivisible
    })
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Splitting type of `p`. Primes dividing the basis denominator or the
/// index of `Z[t]` are reported as exceptional with no pairs.
pub fn splitting_type(field: &NumberField, p: u64, seed: u64) -> Result<SplittingType> {
    check_prime(p)?;
    let f = field.poly();
    let pb = BigInt::from(p);
    let exceptional = SplittingType {
        p,
        pairs: Vec::new(),
        exceptional: true,
    };
    if (field.spec().basis_denominator() % &pb).is_zero() {
        return Ok(exceptional);
    }
    let fp = f.reduce(p);
    let mut pairs = if !(field.poly_discriminant() % &pb).is_zero() {
        factor_pattern(&fp)?
    } else {
        if dedekind_index_test(f, p)? == IndexTest::IndexDivisible {
            return Ok(exceptional);
        }
        factor(&fp, seed)?.pattern()
    };
    pairs.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(SplittingType {
        p,
        pairs,
        exceptional: false,
    })
}

pub fn has_degree_one(field: &NumberField, p: u64, seed: u64) -> Result<Tri> {
    let st = splitting_type(field, p, seed)?;
    Ok(if st.exceptional {
        Tri::Unknown
    } else if st.has_degree_one() {
        Tri::Yes
    } else {
        Tri::No
    })
}

pub fn classify(field: &NumberField, p: u64, seed: u64) -> Result<PrimeClass> {
    Ok(class_of(&splitting_type(field, p, seed)?))
}

pub fn class_of(st: &SplittingType) -> PrimeClass {
    if st.exceptional {
        PrimeClass::Exceptional
    } else if st.has_degree_one() {
        PrimeClass::Low
    } else {
        PrimeClass::High
    }
}

/// Whether `e` is a nonnegative integer combination of `degrees`.
pub fn inertia_degree_monoid_member(degrees: &[usize], e: u64) -> bool {
    let e = e as usize;
    let mut distinct: Vec<usize> = degrees.iter().copied().filter(|&f| f > 0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.first() == Some(&1) || e == 0 {
        return true;
    }
    let mut reach = vec![false; e + 1];
    reach[0] = true;
    for n in 1..=e {
        reach[n] = distinct.iter().any(|&f| f <= n && reach[n - f]);
    }
    reach[e]
}
