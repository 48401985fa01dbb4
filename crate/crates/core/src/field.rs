//! Number fields `Q[x]/(f)` with a chosen integral basis, and the norm form
//! `Psi(x) = N(x_1 w_1 + ... + x_d w_d)` built from the regular
//! representation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::small_primes;
use crate::error::{Error, Result};
use crate::factor::factor_pattern;
use crate::perm::{self, Perm, PermGroup};
use crate::poly::{bareiss_det, det_linear_forms, IntPoly, MultiPoly, MAX_DET_DIM};
use crate::quadratic;

/// Number of small primes tried when certifying irreducibility.
pub const IRREDUCIBILITY_PRIMES: usize = 25;

/// Rational matrix entry in spec files: an integer, `[num, den]` or `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Pair([i64; 2]),
    Text(String),
}

impl RatEntry {
    fn to_rational(&self) -> Result<BigRational> {
        let (n, d) = match self {
            RatEntry::Int(n) => (BigInt::from(*n), BigInt::one()),
            RatEntry::Pair([n, d]) => (BigInt::from(*n), BigInt::from(*d)),
            RatEntry::Text(s) => {
                let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let parse = |t: &str| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::InvalidSpec(format!("bad rational entry {s:?}")))
                };
                (parse(n)?, parse(d)?)
            }
        };
        if d.is_zero() {
            return Err(Error::InvalidSpec("zero denominator in basis".into()));
        }
        Ok(BigRational::new(n, d))
    }

    fn from_rational(q: &BigRational) -> RatEntry {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(1)) => RatEntry::Int(n),
            (Some(n), Some(d)) => RatEntry::Pair([n, d]),
            _ => RatEntry::Text(q.to_string()),
        }
    }
}

/// On-disk form of a field spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub label: String,
    pub poly: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<RatEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_number: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<Vec<usize>>>,
}

/// Unvalidated field data. Row `i` of `basis` holds the power-basis
/// coordinates of `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub label: String,
    pub f: IntPoly,
    pub basis: Vec<Vec<BigRational>>,
    pub class_number: Option<u64>,
    pub group: Option<Vec<Perm>>,
}

fn identity(d: usize) -> Vec<Vec<BigRational>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

impl FieldSpec {
    /// Power basis `(1, t, ..., t^(d-1))`.
    pub fn monogenic(label: &str, f: IntPoly) -> Self {
        let d = f.degree().unwrap_or(0);
        FieldSpec {
            label: label.to_string(),
            f,
            basis: identity(d),
            class_number: None,
            group: None,
        }
    }

    pub fn with_basis(mut self, basis: Vec<Vec<BigRational>>) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_class_number(mut self, h: u64) -> Self {
        self.class_number = Some(h);
        self
    }

    pub fn with_group(mut self, gens: Vec<Perm>) -> Self {
        self.group = Some(gens);
        self
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn is_power_basis(&self) -> bool {
        self.basis == identity(self.degree())
    }

    /// Least common denominator of the basis entries.
    pub fn basis_denominator(&self) -> BigInt {
        self.basis
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn from_file(file: &SpecFile) -> Result<Self> {
        let f = IntPoly::from_i64(&file.poly);
        let d = f.degree().unwrap_or(0);
        let basis = match &file.basis {
            None => identity(d),
            Some(rows) => rows
                .iter()
                .map(|r| r.iter().map(RatEntry::to_rational).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        };
        let group = match &file.group {
            None => None,
            Some(gens) => Some(
                gens.iter()
                    .map(|g| Perm::from_one_based(g))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(FieldSpec {
            label: file.label.clone(),
            f,
            basis,
            class_number: file.class_number,
            group,
        })
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            label: self.label.clone(),
            poly: self.f.to_i64().unwrap_or_default(),
            basis: (!self.is_power_basis()).then(|| {
                self.basis
                    .iter()
                    .map(|r| r.iter().map(RatEntry::from_rational).collect())
                    .collect()
            }),
            class_number: self.class_number,
            group: self
                .group
                .as_ref()
                .map(|g| g.iter().map(Perm::to_one_based).collect()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("json: {e}")))?;
        FieldSpec::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spec files serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Irreducibility {
    /// `f` is irreducible modulo this prime.
    IrreducibleMod { p: u64 },
    /// Degree at most 3 with no rational root.
    NoRationalRoot,
    Unverified,
}

/// A spec that passed validation, with its structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    spec: FieldSpec,
    disc: BigInt,
    // reg[i] is the matrix of multiplication by w_i in the basis
    reg: Vec<Vec<Vec<BigInt>>>,
    irreducibility: Irreducibility,
    group: Option<PermGroup>,
    class_number: Option<u64>,
    warnings: Vec<String>,
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

fn mat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &k * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix of multiplication by `alpha` (power coordinates) on the power basis.
fn power_mult_matrix(f: &IntPoly, alpha: &[BigRational]) -> Vec<Vec<BigRational>> {
    let d = alpha.len();
    let fc: Vec<BigRational> = (0..d).map(|k| BigRational::from(f.coeff(k))).collect();
    let mut cols = Vec::with_capacity(d);
    let mut v = alpha.to_vec();
    for _ in 0..d {
        cols.push(v.clone());
        // multiply by t and reduce with t^d = -sum f_k t^k
        let top = v[d - 1].clone();
        let mut next = vec![BigRational::zero(); d];
        for k in (1..d).rev() {
            next[k] = v[k - 1].clone();
        }
        for k in 0..d {
            next[k] -= &top * &fc[k];
        }
        v = next;
    }
    (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
}

fn check_irreducible(f: &IntPoly, disc: &BigInt) -> Result<Irreducibility> {
    let d = f.degree().unwrap_or(0);
    if let Some(r) = f.integer_roots().first() {
        return Err(Error::Reducible(format!("{f} has the rational root {r}")));
    }
    let primes = small_primes(200);
    for &p in primes.iter().take(IRREDUCIBILITY_PRIMES) {
        if (disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.reduce(p);
        if factor_pattern(&fp)? == [(1, d)] {
            return Ok(Irreducibility::IrreducibleMod { p });
        }
    }
    if d <= 3 {
        return Ok(Irreducibility::NoRationalRoot);
    }
    Ok(Irreducibility::Unverified)
}

fn check_group(d: usize, gens: &[Perm]) -> Result<PermGroup> {
    let g = perm::close(d, gens)?;
    if !g.is_transitive() {
        return Err(Error::InvalidSpec(format!("group of order {} is not transitive", g.order())));
    }
    if !perm::order_divides_factorial(&g) {
        return Err(Error::InvalidSpec(format!("group order {} does not divide {d}!", g.order())));
    }
    Ok(g)
}

/// Checks a spec and computes its structure constants.
pub fn validate(spec: FieldSpec) -> Result<NumberField> {
    let d = spec.degree();
    if d < 2 {
        return Err(Error::InvalidSpec("degree must be at least 2".into()));
    }
    if d > MAX_DET_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    if !spec.f.is_monic() {
        return Err(Error::NotMonic);
    }
    if spec.basis.len() != d || spec.basis.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidSpec(format!("basis must be {d}x{d}")));
    }
    let disc = spec.f.discriminant()?;
    if disc.is_zero() {
        return Err(Error::Reducible(format!("{} has a repeated factor", spec.f)));
    }
    let irreducibility = check_irreducible(&spec.f, &disc)?;
    let mut warnings = Vec::new();
    if irreducibility == Irreducibility::Unverified {
        warnings.push("irreducibility unverified".to_string());
    }

    // column i of P is w_i in power coordinates
    let p: Vec<Vec<BigRational>> = (0..d).map(|r| (0..d).map(|c| spec.basis[c][r].clone()).collect()).collect();
    let p_inv = mat_inverse(&p).ok_or(Error::SingularBasis)?;
    let mut reg = Vec::with_capacity(d);
    for (i, w) in spec.basis.iter().enumerate() {
        let r = mat_mul(&mat_mul(&p_inv, &power_mult_matrix(&spec.f, w)), &p);
        let mut int_rows = Vec::with_capacity(d);
        for (k, row) in r.iter().enumerate() {
            let mut out = Vec::with_capacity(d);
            for (j, q) in row.iter().enumerate() {
                if !q.is_integer() {
                    return Err(Error::NonIntegralBasis(format!(
                        "coordinate {} of w{}*w{} is {q}",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
                out.push(q.to_integer());
            }
            int_rows.push(out);
        }
        // int_rows[k][j] is coordinate k of w_i w_j
        reg.push(int_rows);
    }

    let group = match &spec.group {
        Some(gens) => {
            let g = check_group(d, gens)?;
            if d <= 4 && irreducibility != Irreducibility::Unverified {
                if let Ok(expected) = perm::galois_group_small(&spec.f) {
                    if expected.order() != g.order() {
                        warnings.push(format!(
                            "declared group has order {}, the polynomial's has order {}",
                            g.order(),
                            expected.order()
                        ));
                    }
                }
            }
            Some(g)
        }
        None => None,
    };

    let mut class_number = spec.class_number;
    if let Some(0) = class_number {
        return Err(Error::InvalidSpec("class number must be positive".into()));
    }
    let mut nf = NumberField {
        spec,
        disc,
        reg,
        irreducibility,
        group,
        class_number: None,
        warnings,
    };
    if d == 2 {
        let dq = nf.binary_discriminant();
        match dq {
            Some(dq) if quadratic::is_fundamental(dq) && dq.abs() <= quadratic::MAX_DISCRIMINANT => {
                let h = quadratic::class_group(dq)?.wide_class_number() as u64;
                if let Some(declared) = class_number {
                    if declared != h {
                        return Err(Error::InvalidSpec(format!(
                            "declared class number {declared}, computed {h}"
                        )));
                    }
                }
                class_number = Some(h);
            }
            _ => nf
                .warnings
                .push("basis discriminant is not fundamental; class number not checked".into()),
        }
    }
    nf.class_number = class_number;
    Ok(nf)
}

/// Validated field plus its norm form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormFormHandle {
    pub field: NumberField,
    pub psi: MultiPoly,
}

/// `validate` followed by [`NumberField::norm_form`].
pub fn norm_form(spec: FieldSpec) -> Result<NormFormHandle> {
    validate(spec)?.norm_form()
}

impl NumberField {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.spec.label
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn poly(&self) -> &IntPoly {
        &self.spec.f
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn irreducibility(&self) -> &Irreducibility {
        &self.irreducibility
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.group.as_ref()
    }

    /// Declared class number, or the computed one for quadratic fields.
    pub fn class_number(&self) -> Option<u64> {
        self.class_number
    }

    /// Matrix of multiplication by `w_i` in the basis.
    pub fn regular_matrix(&self, i: usize) -> &[Vec<BigInt>] {
        &self.reg[i]
    }

    /// `sum v_i R(w_i)`.
    pub fn element_matrix(&self, v: &[BigInt]) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let mut m = vec![vec![BigInt::zero(); d]; d];
        for (vi, r) in v.iter().zip(&self.reg) {
            if vi.is_zero() {
                continue;
            }
            for (row, rrow) in m.iter_mut().zip(r) {
                for (x, y) in row.iter_mut().zip(rrow) {
                    *x += vi * y;
                }
            }
        }
        m
    }

    /// Basis coordinates of the product of two elements.
    pub fn mul_coords(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let m = self.element_matrix(u);
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Norm as the integer determinant of the regular representation.
    pub fn norm_of(&self, v: &[BigInt]) -> BigInt {
        bareiss_det(self.element_matrix(v)).expect("square by construction")
    }

    /// Discriminant `b^2 - 4ac` of the binary norm form, for degree 2.
    pub fn binary_discriminant(&self) -> Option<i64> {
        if self.degree() != 2 {
            return None;
        }
        let (a, b, c) = self.binary_coefficients()?;
        (&b * &b - BigInt::from(4) * &a * &c).to_i64()
    }

    /// `(a, b, c)` with `Psi = a x1^2 + b x1 x2 + c x2^2`, for degree 2.
    pub fn binary_coefficients(&self) -> Option<(BigInt, BigInt, BigInt)> {
        if self.degree() != 2 {
            return None;
        }
        let psi = self.psi();
        Some((psi.coeff(&[2, 0]), psi.coeff(&[1, 1]), psi.coeff(&[0, 2])))
    }

    fn psi(&self) -> MultiPoly {
        let d = self.degree();
        let forms: Vec<Vec<MultiPoly>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let coeffs: Vec<BigInt> = (0..d).map(|i| self.reg[i][r][c].clone()).collect();
                        MultiPoly::linear(&coeffs)
                    })
                    .collect()
            })
            .collect();
        det_linear_forms(&forms).expect("square by construction")
    }

    pub fn norm_form(self) -> Result<NormFormHandle> {
        let psi = self.psi();
        Ok(NormFormHandle { field: self, psi })
    }
}

impl NormFormHandle {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Exact `Psi(v)`.
    pub fn eval(&self, v: &[BigInt]) -> BigInt {
        self.psi.eval(v)
    }

    pub fn eval_i64(&self, v: &[i64]) -> BigInt {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&v)
    }

    /// Coefficients as `(exponents, coefficient)` pairs in `i128`, used by
    /// fast evaluators.
    pub fn terms_i128(&self) -> Option<Vec<(Vec<u32>, i128)>> {
        self.psi.to_i128_terms()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.psi
            .terms()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for NormFormHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.psi)
    }
}

/// Signed value of the norm form; callers take the absolute value.
pub fn eval_norm(handle: &NormFormHandle, v: &[i64]) -> BigInt {
    handle.eval_i64(v)
}
