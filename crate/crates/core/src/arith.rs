//! Machine-integer number theory: primality, sieving, factorization and
//! quadratic residues.
//!
//! Everything here works on `u64` inputs with `u128` intermediates, so
//! modular products never overflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries per sieve segment.
pub const SEGMENT_SIZE: usize = 1 << 20;

/// Witnesses making Miller-Rabin deterministic below 3.3 * 10^24, which
/// covers every `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inclusive range of candidate primes `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        PrimeRange { lo: lo.max(2), hi }
    }

    pub fn up_to(hi: u64) -> Self {
        PrimeRange::new(2, hi)
    }

    pub fn count(self) -> u64 {
        primes_in(self).count() as u64
    }
}

impl IntoIterator for PrimeRange {
    type Item = u64;
    type IntoIter = Primes;

    fn into_iter(self) -> Primes {
        primes_in(self)
    }
}

/// Primes up to `limit` by a plain sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Streaming segmented sieve over a [`PrimeRange`].
pub struct Primes {
    base: Vec<u64>,
    next_lo: Option<u64>,
    hi: u64,
    buf_lo: u64,
    buf: Vec<bool>,
    pos: usize,
}

impl Primes {
    fn fill(&mut self, lo: u64) {
        let seg_hi = lo.saturating_add(SEGMENT_SIZE as u64 - 1).min(self.hi);
        let len = (seg_hi - lo + 1) as usize;
        self.buf.clear();
        self.buf.resize(len, true);
        for &p in &self.base {
            let sq = p * p;
            if sq > seg_hi {
                break;
            }
            let mut m = sq.max(lo.div_ceil(p) * p);
            while m <= seg_hi {
                self.buf[(m - lo) as usize] = false;
                m += p;
            }
        }
        self.buf_lo = lo;
        self.pos = 0;
        self.next_lo = if seg_hi >= self.hi { None } else { Some(seg_hi + 1) };
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            while self.pos < self.buf.len() {
                let i = self.pos;
                self.pos += 1;
                if self.buf[i] {
                    return Some(self.buf_lo + i as u64);
                }
            }
            let lo = self.next_lo?;
            self.fill(lo);
        }
    }
}

/// Primes in `[range.lo, range.hi]`, ascending.
pub fn primes_in(range: PrimeRange) -> Primes {
    let lo = range.lo.max(2);
    let base = if range.hi >= 4 {
        small_primes(isqrt(range.hi))
    } else {
        Vec::new()
    };
    Primes {
        base,
        next_lo: (lo <= range.hi).then_some(lo),
        hi: range.hi,
        buf_lo: lo,
        buf: Vec::new(),
        pos: 0,
    }
}

/// Prime factorization as `(p, e)` pairs sorted by `p`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn product(&self) -> u128 {
        self.0
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

// Brent's variant of Pollard rho. The polynomial constant walks the fixed
// sequence 1, 2, 3, ... so factorizations are reproducible.
fn rho(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 == 1 && !is_prime(n));
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const M: u64 = 128;
        while g == 1 {
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r *= 2;
            if g == 1 {
                x = y;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split_into(r, out);
        split_into(r, out);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize expects n >= 1");
    let mut raw = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            raw.push(p);
            n /= p;
        }
    }
    split_into(n, &mut raw);
    raw.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for p in raw {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Factorization(pairs)
}

/// Jacobi symbol `(a|n)` for odd positive `n`.
pub fn jacobi(a: i128, n: u64) -> Result<i32> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Kronecker symbol `(d|n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        if d.rem_euclid(8) == 3 || d.rem_euclid(8) == 5 {
            sign = -sign;
        }
    }
    sign * jacobi(d as i128, n).expect("odd by construction")
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), choosing
/// the smaller of the two roots. `None` iff `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Result<Option<u64>> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a = a % p;
    if a == 0 {
        return Ok(Some(0));
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p)
            .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
            .expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Ok(Some(r.min(p - r)))
}
