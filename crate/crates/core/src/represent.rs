//! Membership oracles for the values of `|Psi|`.
//!
//! Three routes: binary forms through the class group, class number one
//! through splitting types, and a bounded box search that can only say
//! yes or unknown.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::field::NormFormHandle;
use crate::quadratic::{self, QuadForm};
use crate::splitting::{class_of, splitting_type, PrimeClass, Tri};

/// Box scale: the default search box is `ceil(n^(1/d)) * BOX_FACTOR`.
pub const BOX_FACTOR: u64 = 40;

/// Cap on the number of points a default box may contain.
pub const MAX_BOX_POINTS: f64 = 2.0e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    QuadraticForms,
    ClassNumberOne,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Tri,
    /// Coordinates `v` with `|Psi(v)| = n`.
    pub witness: Option<Vec<i64>>,
    pub route: Route,
    /// For binary forms: the signs `s` with `s*n` a value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
}

impl Verdict {
    fn new(answer: Tri, route: Route) -> Self {
        Verdict {
            answer,
            witness: None,
            route,
            signs: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "p", rename_all = "lowercase")]
pub enum FilterResult {
    Pass,
    Fail(u64),
}

/// `Psi` viewed as a polynomial in its last variable with coefficient
/// polynomials in the others, for fast box enumeration.
#[derive(Debug, Clone)]
pub struct CompiledForm {
    d: usize,
    // (exponents of the first d-1 variables, power of the last, coefficient)
    terms: Vec<(Vec<u32>, usize, i128)>,
    top: usize,
}

impl CompiledForm {
    pub fn new(handle: &NormFormHandle) -> Result<Self> {
        let d = handle.degree();
        let raw = handle.terms_i128().ok_or(Error::Overflow)?;
        let terms: Vec<_> = raw
            .into_iter()
            .map(|(e, c)| (e[..d - 1].to_vec(), e[d - 1] as usize, c))
            .collect();
        let top = terms.iter().map(|t| t.1).max().unwrap_or(0);
        Ok(CompiledForm { d, terms, top })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn eval(&self, v: &[i64]) -> i128 {
        let coeffs = self.last_var_coeffs(&v[..self.d - 1]);
        horner(&coeffs, v[self.d - 1] as i128)
    }

    fn last_var_coeffs(&self, prefix: &[i64]) -> Vec<i128> {
        let mut coeffs = vec![0i128; self.top + 1];
        for (e, k, c) in &self.terms {
            let mut m = *c;
            for (x, &p) in prefix.iter().zip(e) {
                for _ in 0..p {
                    m *= *x as i128;
                }
            }
            coeffs[*k] += m;
        }
        coeffs
    }

    /// Calls `visit(v, psi(v))` for every `v` in `[-b, b]^d` except zero,
    /// stopping early when `visit` returns `false`.
    pub fn for_each_in_box(&self, b: i64, mut visit: impl FnMut(&[i64], i128) -> bool) {
        let d = self.d;
        let mut v = vec![-b; d];
        loop {
            let coeffs = self.last_var_coeffs(&v[..d - 1]);
            let prefix_zero = v[..d - 1].iter().all(|&x| x == 0);
            for last in -b..=b {
                if prefix_zero && last == 0 {
                    continue;
                }
                v[d - 1] = last;
                if !visit(&v, horner(&coeffs, last as i128)) {
                    return;
                }
            }
            // advance the odometer over the first d-1 coordinates
            let mut i = d - 1;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if v[i] < b {
                    v[i] += 1;
                    break;
                }
                v[i] = -b;
            }
        }
    }

    /// `seen[n]` for `1 <= n <= limit`: whether `|Psi| = n` somewhere in the box.
    pub fn values_in_box(&self, b: i64, limit: u64) -> Vec<bool> {
        let mut seen = vec![false; limit as usize + 1];
        self.for_each_in_box(b, |_, val| {
            let a = val.unsigned_abs();
            if a >= 1 && a <= limit as u128 {
                seen[a as usize] = true;
            }
            true
        });
        seen
    }
}

fn horner(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c)
}

/// Default coordinate bound for searching `n`, shrunk so the box stays
/// under [`MAX_BOX_POINTS`].
pub fn default_box(n: u64, d: usize) -> i64 {
    let root = (n as f64).powf(1.0 / d as f64).ceil().max(1.0) as i64;
    let mut b = root * BOX_FACTOR as i64;
    while b > 1 && ((2 * b + 1) as f64).powi(d as i32) > MAX_BOX_POINTS {
        b -= 1;
    }
    b
}

/// First `v` in `[-b, b]^d`, in odometer order, with `|Psi(v)| = n`.
pub fn brute_force_search(handle: &NormFormHandle, n: u64, b: i64) -> Result<Option<Vec<i64>>> {
    if b < 1 {
        return Err(Error::InvalidArgument("box bound must be at least 1".into()));
    }
    let form = CompiledForm::new(handle)?;
    let mut found = None;
    form.for_each_in_box(b, |v, val| {
        if val.unsigned_abs() == n as u128 {
            found = Some(v.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found)
}

fn brute_force_verdict(handle: &NormFormHandle, n: u64) -> Result<Verdict> {
    let b = default_box(n, handle.degree());
    let w = brute_force_search(handle, n, b)?;
    let mut v = Verdict::new(if w.is_some() { Tri::Yes } else { Tri::Unknown }, Route::BruteForce);
    v.witness = w;
    Ok(v)
}

/// Binary norm form data when the exact quadratic route applies.
fn quadratic_route(handle: &NormFormHandle) -> Option<(i64, QuadForm)> {
    let (a, b, c) = handle.field.binary_coefficients()?;
    let f = QuadForm::new(a.to_i64()?, b.to_i64()?, c.to_i64()?);
    let d = f.discriminant();
    if quadratic::is_fundamental(d) && d.abs() <= quadratic::MAX_DISCRIMINANT {
        Some((d, f))
    } else {
        None
    }
}

/// Moves a witness on the principal form `(1, b0, c0)` to `Psi = (1, b, c)`
/// via `x -> x - k y`, `k = (b - b0)/2`.
fn map_witness(psi: QuadForm, w: (i128, i128)) -> Option<Vec<i64>> {
    if psi.a != 1 {
        return None;
    }
    let b0 = QuadForm::principal(psi.discriminant()).b as i128;
    let k = (psi.b as i128 - b0) / 2;
    let (x, y) = w;
    Some(vec![(x - k * y).to_i64()?, y.to_i64()?])
}

fn class_number_one(handle: &NormFormHandle) -> bool {
    handle.field.class_number() == Some(1)
}

/// Whether the prime `p` is a value of `|Psi|`.
pub fn is_norm_prime(handle: &NormFormHandle, p: u64, seed: u64) -> Result<Verdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some((d, psi)) = quadratic_route(handle) {
        let r = quadratic::represents_prime_principal(d, p)?;
        let mut v = Verdict::new(if r.represented { Tri::Yes } else { Tri::No }, Route::QuadraticForms);
        v.witness = r.witness.and_then(|w| map_witness(psi, w));
        v.signs = Some(r.signs);
        return Ok(v);
    }
    if class_number_one(handle) {
        let st = splitting_type(&handle.field, p, seed)?;
        match class_of(&st) {
            PrimeClass::Low => return Ok(Verdict::new(Tri::Yes, Route::ClassNumberOne)),
            PrimeClass::High => return Ok(Verdict::new(Tri::No, Route::ClassNumberOne)),
            PrimeClass::Exceptional => {}
        }
    }
    brute_force_verdict(handle, p)
}

/// Whether `n >= 1` is a value of `|Psi|`.
pub fn is_norm_integer(handle: &NormFormHandle, n: u64, seed: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if let Some((d, psi)) = quadratic_route(handle) {
        let r = quadratic::represents_integer_principal(d, n)?;
        let mut v = Verdict::new(if r.represented { Tri::Yes } else { Tri::No }, Route::QuadraticForms);
        v.witness = r.witness.and_then(|w| map_witness(psi, w));
        return Ok(v);
    }
    if class_number_one(handle) {
        let mut exceptional = false;
        let mut ok = true;
        for (p, e) in factorize(n).0 {
            let st = splitting_type(&handle.field, p, seed)?;
            if st.exceptional {
                exceptional = true;
                continue;
            }
            if !crate::splitting::inertia_degree_monoid_member(&st.inertia_degrees(), e as u64) {
                ok = false;
                break;
            }
        }
        if !ok {
            return Ok(Verdict::new(Tri::No, Route::ClassNumberOne));
        }
        if !exceptional {
            return Ok(Verdict::new(Tri::Yes, Route::ClassNumberOne));
        }
    }
    brute_force_verdict(handle, n)
}

/// Certificate of non-membership: a prime with no degree-one prime above
/// it dividing `n` exactly once.
pub fn high_prime_filter(handle: &NormFormHandle, n: u64, seed: u64) -> Result<FilterResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    for (p, e) in factorize(n).0 {
        if e == 1 && class_of(&splitting_type(&handle.field, p, seed)?) == PrimeClass::High {
            return Ok(FilterResult::Fail(p));
        }
    }
    Ok(FilterResult::Pass)
}

/// Checks `|Psi(w)| = n` exactly.
pub fn witness_is_valid(handle: &NormFormHandle, w: &[i64], n: u64) -> bool {
    w.len() == handle.degree() && handle.eval_i64(w).abs() == BigInt::from(n)
}
