use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{bareiss_det, ExactRing};
use crate::error::{Error, Result};

/// Largest matrix handled by [`det_linear_forms`].
pub const MAX_DET_DIM: usize = 8;

/// Sparse polynomial in `nvars` variables with integer coefficients.
///
/// Keys are exponent vectors; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Graded reverse lexicographic order, largest first when used with
/// `sort_by(|a, b| degrevlex(b, a))`.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// `sum_i coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every monomial has total degree exactly `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses lexicographic leading terms.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            if re.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            if !(rc % lead_c).is_zero() {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let c = rc / lead_c;
            let t = MultiPoly::from_terms(self.nvars, [(e, c)]);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn eval(&self, v: &[BigInt]) -> BigInt {
        assert_eq!(v.len(), self.nvars);
        let mut sum = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in v.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_i64(&self, v: &[i64]) -> BigInt {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&big)
    }

    /// Substitutes each variable by a polynomial (all in the same ring).
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(0, |p| p.nvars);
        let mut out = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(img);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Monomials in descending degrevlex order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| degrevlex(b.0, a.0));
        v
    }

    /// Coefficients as `i128`, if they all fit.
    pub fn to_i128_terms(&self) -> Option<Vec<(Vec<u32>, i128)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.to_i128().map(|c| (e.clone(), c)))
            .collect()
    }
}

impl ExactRing for MultiPoly {
    fn ring_zero() -> Self {
        // nvars is fixed up by the first arithmetic operation with a real element
        MultiPoly::zero(0)
    }
    fn ring_one() -> Self {
        MultiPoly::constant(0, BigInt::one())
    }
    fn ring_is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        lift_pair(self, other, MultiPoly::mul)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        lift_pair(self, other, MultiPoly::sub)
    }
    fn ring_neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn ring_div(&self, other: &Self) -> Self {
        lift_pair(self, other, |a, b| {
            MultiPoly::div_exact(a, b).expect("Bareiss division is exact")
        })
    }
}

// The sentinel constants produced by `ExactRing::ring_one/ring_zero` carry no variables;
// widen them to match the other operand.
fn lift_pair(a: &MultiPoly, b: &MultiPoly, op: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> MultiPoly {
    let n = a.nvars.max(b.nvars);
    let widen = |p: &MultiPoly| -> MultiPoly {
        if p.nvars == n {
            p.clone()
        } else {
            MultiPoly::from_terms(n, p.terms.values().map(|c| (vec![0; n], c.clone())))
        }
    };
    op(&widen(a), &widen(b))
}

/// Symbolic determinant of a square matrix of (typically linear) forms.
pub fn det_linear_forms(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n > MAX_DET_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let nvars = m
        .iter()
        .flatten()
        .map(|p| p.nvars)
        .max()
        .unwrap_or(0);
    let det = bareiss_det(m.to_vec())?;
    Ok(if det.nvars == nvars {
        det
    } else {
        lift_pair(&det, &MultiPoly::zero(nvars), |a, _| a.clone())
    })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
