//! Finite-scale experiments: empirical densities, Chebotarev tables, sieve
//! bounds, divergence curves and arithmetic progressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_in, PrimeRange};
use crate::error::{Error, Result};
use crate::factor::cycle_degrees;
use crate::field::NumberField;
use crate::perm::{self, CycleType, Density, PermGroup};
use crate::scan::{map_chunks, ScanOptions};
use crate::splitting::{classify, PrimeClass, Tri};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub count: u64,
    pub total: u64,
    /// Scan bound.
    pub bound: u64,
    /// Unknown verdicts, excluded from both count and total.
    pub skipped: u64,
}

impl DensityEstimate {
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count as f64 / self.total as f64
        }
    }

    fn merge(parts: impl IntoIterator<Item = (u64, u64, u64)>, bound: u64) -> Self {
        let mut e = DensityEstimate {
            count: 0,
            total: 0,
            bound,
            skipped: 0,
        };
        for (c, t, s) in parts {
            e.count += c;
            e.total += t;
            e.skipped += s;
        }
        e
    }
}

fn tally(verdicts: impl Iterator<Item = Tri>) -> (u64, u64, u64) {
    let (mut c, mut t, mut s) = (0, 0, 0);
    for v in verdicts {
        match v {
            Tri::Yes => {
                c += 1;
                t += 1;
            }
            Tri::No => t += 1,
            Tri::Unknown => s += 1,
        }
    }
    (c, t, s)
}

/// Share of primes `p <= x` with `pred(p) = yes`.
pub fn empirical_prime_density<F>(pred: F, x: u64, opts: ScanOptions) -> DensityEstimate
where
    F: Fn(u64) -> Tri + Sync + Send,
{
    let parts = map_chunks(2, x, opts, |a, b| tally(primes_in(PrimeRange::new(a, b)).map(&pred)));
    DensityEstimate::merge(parts, x)
}

/// Share of `1 <= n <= bound` with `member(n) = yes`.
pub fn empirical_integer_density<F>(member: F, bound: u64, opts: ScanOptions) -> DensityEstimate
where
    F: Fn(u64) -> Tri + Sync + Send,
{
    let parts = map_chunks(1, bound, opts, |a, b| tally((a..=b).map(&member)));
    DensityEstimate::merge(parts, bound)
}

/// `prod (p^2 - (p - 1)) / p^2`: the share of residues mod `prod p^2` where
/// every `p` dividing `n` divides it twice.
pub fn sieve_bound(primes: &[u64]) -> Result<BigRational> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedPrime(w[0]));
    }
    let mut acc = BigRational::one();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p2 = BigInt::from(p) * BigInt::from(p);
        acc *= BigRational::new(&p2 - BigInt::from(p - 1), p2);
    }
    Ok(acc)
}

/// Membership in the set of `n` such that `p | n` forces `p^2 | n` for every `p`
/// in `primes`.
pub fn sieve_set_member(primes: &[u64], n: u64) -> bool {
    primes
        .iter()
        .all(|&p| !n.is_multiple_of(p) || n.is_multiple_of(p * p))
}

/// First `k` primes `p` with `classify(p) = High`, in increasing order.
pub fn first_high_primes(field: &NumberField, k: usize, seed: u64) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(k);
    let mut hi = 1024u64;
    let mut lo = 2u64;
    while out.len() < k {
        for p in primes_in(PrimeRange::new(lo, hi)) {
            if classify(field, p, seed)? == PrimeClass::High {
                out.push(p);
                if out.len() == k {
                    break;
                }
            }
        }
        lo = hi + 1;
        hi *= 2;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: u64,
    pub sum: f64,
    /// High primes counted up to `x`.
    pub count: u64,
}

/// Partial sums of `1/p` over `p <= X` with `classify(p) = High`, at each
/// checkpoint. Summation runs sequentially in increasing `p`, so a prefix of
/// checkpoints always reproduces the same values.
pub fn divergence_curve(
    field: &NumberField,
    checkpoints: &[u64],
    seed: u64,
    opts: ScanOptions,
) -> Result<Vec<CurvePoint>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("checkpoints must be ascending".into()));
    }
    let Some(&top) = checkpoints.last() else {
        return Ok(Vec::new());
    };
    let parts = map_chunks(2, top, opts, |a, b| -> Result<Vec<u64>> {
        let mut v = Vec::new();
        for p in primes_in(PrimeRange::new(a, b)) {
            if classify(field, p, seed)? == PrimeClass::High {
                v.push(p);
            }
        }
        Ok(v)
    });
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut sum = 0.0f64;
    let mut count = 0u64;
    let mut next = 0;
    for part in parts {
        for p in part? {
            while next < checkpoints.len() && checkpoints[next] < p {
                out.push(CurvePoint { x: checkpoints[next], sum, count });
                next += 1;
            }
            sum += 1.0 / p as f64;
            count += 1;
        }
    }
    while next < checkpoints.len() {
        out.push(CurvePoint { x: checkpoints[next], sum, count });
        next += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebotarevRow {
    pub cycle_type: CycleType,
    pub count: u64,
    pub frequency: f64,
    #[serde(with = "density_str")]
    pub theoretical: Density,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebotarevTable {
    pub bound: u64,
    /// Primes tallied.
    pub total: u64,
    /// Primes dividing the discriminant or the basis denominator.
    pub skipped: u64,
    pub group_order: usize,
    pub rows: Vec<ChebotarevRow>,
    #[serde(with = "density_str")]
    pub d_low: Density,
    #[serde(with = "density_str")]
    pub d_high: Density,
    /// Observed share of fixed-point-free cycle types.
    pub observed_high: f64,
}

mod density_str {
    use super::Density;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Density, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&d.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Density, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("bad ratio {text}")))
    }
}

impl ChebotarevTable {
    /// Largest `|observed - theoretical|` over the rows.
    pub fn max_deviation(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.frequency - r.theoretical.to_f64().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    }

    pub fn row(&self, parts: &[usize]) -> Option<&ChebotarevRow> {
        let t = CycleType::new(parts.to_vec());
        self.rows.iter().find(|r| r.cycle_type == t)
    }
}

/// The supplied group, or the one computed from `f` in degree at most 4.
pub fn field_group(field: &NumberField) -> Result<PermGroup> {
    match field.group() {
        Some(g) => Ok(g.clone()),
        None if field.degree() <= 4 => perm::galois_group_small(field.poly()),
        None => Err(Error::MissingGroup),
    }
}

/// Frobenius cycle types of unramified primes `p <= x` against the
/// densities predicted by the class sizes of the group.
pub fn chebotarev_table(field: &NumberField, x: u64, opts: ScanOptions) -> Result<ChebotarevTable> {
    let g = field_group(field)?;
    let h = g.point_stabilizer(0);
    let theory = perm::theoretical_densities(&g, &h);
    let disc = field.poly_discriminant().clone();
    let den = field.spec().basis_denominator();
    let f = field.poly().clone();
    let parts = map_chunks(2, x, opts, |a, b| -> Result<(Vec<(CycleType, u64)>, u64)> {
        let mut counts: Vec<(CycleType, u64)> = Vec::new();
        let mut skipped = 0;
        for p in primes_in(PrimeRange::new(a, b)) {
            let pb = BigInt::from(p);
            if (&disc % &pb) == BigInt::ZERO || (&den % &pb) == BigInt::ZERO {
                skipped += 1;
                continue;
            }
            let t = CycleType::new(cycle_degrees(&f.reduce(p))?);
            match counts.iter_mut().find(|(c, _)| *c == t) {
                Some((_, n)) => *n += 1,
                None => counts.push((t, 1)),
            }
        }
        Ok((counts, skipped))
    });
    let mut rows: Vec<ChebotarevRow> = theory
        .by_cycle_type()
        .into_iter()
        .map(|(cycle_type, theoretical)| ChebotarevRow {
            cycle_type,
            count: 0,
            frequency: 0.0,
            theoretical,
        })
        .collect();
    let mut skipped = 0;
    for part in parts {
        let (counts, s) = part?;
        skipped += s;
        for (t, n) in counts {
            match rows.iter_mut().find(|r| r.cycle_type == t) {
                Some(r) => r.count += n,
                None => rows.push(ChebotarevRow {
                    cycle_type: t,
                    count: n,
                    frequency: 0.0,
                    theoretical: Density::new(0, 1),
                }),
            }
        }
    }
    rows.sort_by(|a, b| a.cycle_type.cmp(&b.cycle_type));
    let total: u64 = rows.iter().map(|r| r.count).sum();
    let mut high = 0;
    for r in rows.iter_mut() {
        r.frequency = if total == 0 { 0.0 } else { r.count as f64 / total as f64 };
        if !r.cycle_type.has_fixed_point() {
            high += r.count;
        }
    }
    Ok(ChebotarevTable {
        bound: x,
        total,
        skipped,
        group_order: g.order(),
        rows,
        d_low: theory.d_low,
        d_high: theory.d_high,
        observed_high: if total == 0 { 0.0 } else { high as f64 / total as f64 },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub start: u64,
    pub difference: u64,
    pub length: usize,
    pub members: Vec<u64>,
}

/// Least `(q, a)` such that `a, a + q, ..., a + (k-1) q` all lie in the set
/// given by `member` within `[1, n]`.
pub fn ap_search<F>(member: F, n: u64, k: usize, opts: ScanOptions) -> Result<Option<ApWitness>>
where
    F: Fn(u64) -> Tri + Sync + Send,
{
    if k < 3 {
        return Err(Error::InvalidArgument("progression length must be at least 3".into()));
    }
    let mut bits = vec![false; n as usize + 1];
    let parts = map_chunks(1, n, opts, |a, b| (a..=b).filter(|&m| member(m) == Tri::Yes).collect::<Vec<_>>());
    let mut set = Vec::new();
    for part in parts {
        for m in part {
            bits[m as usize] = true;
            set.push(m);
        }
    }
    let span = (k - 1) as u64;
    if n < 1 + span {
        return Ok(None);
    }
    for q in 1..=(n - 1) / span {
        for &a in &set {
            if a + span * q > n {
                break;
            }
            if (1..k as u64).all(|i| bits[(a + i * q) as usize]) {
                return Ok(Some(ApWitness {
                    start: a,
                    difference: q,
                    length: k,
                    members: (0..k as u64).map(|i| a + i * q).collect(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{validate, FieldSpec};
    use crate::poly::IntPoly;

    fn yes(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    fn two_squares(n: u64) -> bool {
        let mut x = 0;
        while x * x <= n {
            let r = n - x * x;
            let y = (r as f64).sqrt() as u64;
            if (y.saturating_sub(1)..=y + 1).any(|y| y * y == r) {
                return true;
            }
            x += 1;
        }
        false
    }

    #[test]
    fn prime_density_examples() {
        let opts = ScanOptions::default();
        let e = empirical_prime_density(|p| yes(p % 4 == 1), 100_000, opts);
        assert!((e.ratio() - 0.5).abs() < 0.01);
        assert_eq!(empirical_prime_density(|_| Tri::Yes, 1000, opts).ratio(), 1.0);
        let e = empirical_prime_density(|p| yes(two_squares(p)), 30, opts);
        assert_eq!((e.count, e.total), (5, 10));
        let e = empirical_prime_density(|p| if p == 2 { Tri::Unknown } else { Tri::Yes }, 30, opts);
        assert_eq!((e.count, e.total, e.skipped), (9, 9, 1));
    }

    #[test]
    fn integer_density_examples() {
        let opts = ScanOptions::default();
        let e = empirical_integer_density(|n| yes(two_squares(n)), 100, opts);
        assert_eq!((e.count, e.total), (43, 100));
        assert_eq!(empirical_integer_density(|_| Tri::Yes, 100, opts).ratio(), 1.0);
        let e = empirical_integer_density(|n| yes(sieve_set_member(&[3], n)), 90, opts);
        assert_eq!(e.count, 70);
    }

    #[test]
    fn sieve_bound_examples() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(sieve_bound(&[3]).unwrap(), q(7, 9));
        assert_eq!(sieve_bound(&[3, 7]).unwrap(), q(301, 441));
        assert_eq!(sieve_bound(&[]).unwrap(), q(1, 1));
        assert_eq!(sieve_bound(&[3, 3]), Err(Error::RepeatedPrime(3)));
        assert_eq!(sieve_bound(&[4]), Err(Error::NotPrime(4)));
    }

    #[test]
    fn ap_examples() {
        let opts = ScanOptions::default();
        let w = ap_search(|n| yes(two_squares(n)), 50, 4, opts).unwrap().unwrap();
        assert_eq!(w.members, vec![1, 5, 9, 13]);
        let w = ap_search(|n| yes(is_prime(n) && two_squares(n)), 50, 4, opts).unwrap().unwrap();
        assert_eq!(w.members, vec![5, 17, 29, 41]);
        assert_eq!(ap_search(|n| yes(n % 2 == 0), 3, 3, opts).unwrap(), None);
        assert!(ap_search(|_| Tri::Yes, 10, 2, opts).is_err());
    }

    #[test]
    fn divergence_prefix_and_value() {
        let k = validate(FieldSpec::monogenic("qi", IntPoly::from_i64(&[1, 0, 1]))).unwrap();
        let opts = ScanOptions::default();
        let c = divergence_curve(&k, &[100], 0, opts).unwrap();
        let oracle: f64 = (3..=100u64).filter(|&p| is_prime(p) && p % 4 == 3).map(|p| 1.0 / p as f64).sum();
        assert!((c[0].sum - oracle).abs() < 1e-12);
        let a = divergence_curve(&k, &[10], 0, opts).unwrap();
        let b = divergence_curve(&k, &[10, 1000], 0, opts).unwrap();
        assert_eq!(a[0], b[0]);
        assert!(b[1].sum >= b[0].sum);
        assert!(divergence_curve(&k, &[10, 5], 0, opts).is_err());
    }

    #[test]
    fn chebotarev_small() {
        let k = validate(FieldSpec::monogenic("c", IntPoly::from_i64(&[-2, 0, 0, 1]))).unwrap();
        let t = chebotarev_table(&k, 100_000, ScanOptions::default()).unwrap();
        assert_eq!(t.skipped, 2);
        assert_eq!(t.group_order, 6);
        assert!(t.max_deviation() < 0.01);
        assert_eq!(t.row(&[1, 2]).unwrap().theoretical, Density::new(1, 2));
        assert_eq!(t.d_high, Density::new(1, 3));
    }

    #[test]
    fn first_high_primes_of_gaussian_field() {
        let k = validate(FieldSpec::monogenic("qi", IntPoly::from_i64(&[1, 0, 1]))).unwrap();
        let ps = first_high_primes(&k, 5, 0).unwrap();
        assert_eq!(ps, vec![3, 7, 11, 19, 23]);
    }
}
