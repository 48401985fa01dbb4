use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{check_fundamental, class_group, pell_solve, QuadForm};
use crate::arith::{factorize, is_prime, isqrt_u128, kronecker};
use crate::error::{Error, Result};

/// Witness searches stop after this many values of `y`.
pub const WITNESS_SEARCH_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRepresentation {
    pub d: i64,
    pub p: u64,
    pub represented: bool,
    /// Signs `s` with `s*p` a value of the principal form.
    pub signs: Vec<i8>,
    /// `(x, y)` with `principal(x, y) = ±p`, when found by the bounded search.
    pub witness: Option<(i128, i128)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerRepresentation {
    pub d: i64,
    pub n: u64,
    pub represented: bool,
    pub witness: Option<(i128, i128)>,
}

/// Largest `|y|` needed to find a representation of `±n` by the principal
/// form, or `None` when it exceeds the search cap.
fn y_bound(d: i64, n: u64) -> Result<Option<u64>> {
    let bound = if d < 0 {
        isqrt_u128(4 * n as u128 / d.unsigned_abs() as u128) as f64
    } else {
        // Multiplying by units moves any solution into |y| <= 2 sqrt(n eta / D).
        let eta = pell_solve(d as u64)?.log_unit();
        let log_b = std::f64::consts::LN_2 + 0.5 * ((n as f64).ln() + eta - (d as f64).ln());
        if log_b > (WITNESS_SEARCH_CAP as f64).ln() {
            return Ok(None);
        }
        log_b.exp().ceil() + 1.0
    };
    Ok(Some(bound as u64))
}

/// Searches `4v = t^2 - D y^2` for `v = ±n` and returns `(x, y)` on the
/// principal form with that value.
fn search(d: i64, n: u64, signs: &[i8], ymax: u64) -> Option<(i128, i128)> {
    let f0 = QuadForm::principal(d);
    let (dd, b0) = (d as i128, f0.b as i128);
    for y in 0..=ymax.min(WITNESS_SEARCH_CAP) as i128 {
        for &s in signs {
            let t2 = 4 * s as i128 * n as i128 + dd * y * y;
            if t2 < 0 {
                continue;
            }
            let t = isqrt_u128(t2 as u128) as i128;
            if t * t != t2 || (t - b0 * y) % 2 != 0 {
                continue;
            }
            let x = (t - b0 * y) / 2;
            debug_assert_eq!(f0.eval(x, y), s as i128 * n as i128);
            return Some((x, y));
        }
    }
    None
}

/// Whether `p` or `-p` is a value of the principal form of discriminant
/// `d`, decided by the class of a degree-one prime above `p`.
pub fn represents_prime_principal(d: i64, p: u64) -> Result<PrimeRepresentation> {
    check_fundamental(d)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = class_group(d)?;
    let mut signs = Vec::new();
    if kronecker(d, p) != -1 {
        let c = g.prime_class(p).expect("split or ramified prime has a prime form");
        if c == g.principal_index() {
            signs.push(1);
        }
        if d > 0 && c == g.negative_principal_index() {
            signs.push(-1);
        }
    }
    let represented = !signs.is_empty();
    let witness = if represented {
        y_bound(d, p)?.and_then(|ymax| search(d, p, &signs, ymax))
    } else {
        None
    };
    Ok(PrimeRepresentation {
        d,
        p,
        represented,
        signs,
        witness,
    })
}

/// Whether `n` or `-n` is a value of the principal form of discriminant
/// `d`, decided on narrow ideal classes: a norm-`n` ideal is principal in
/// the wide sense iff its narrow class is `1` or `[-principal]`.
pub fn represents_integer_principal(d: i64, n: u64) -> Result<IntegerRepresentation> {
    check_fundamental(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let g = class_group(d)?;
    let mut reachable: BTreeSet<usize> = [g.principal_index()].into_iter().collect();
    let mut possible = true;
    for (p, e) in factorize(n).0 {
        match kronecker(d, p) {
            -1 => {
                if e % 2 == 1 {
                    possible = false;
                    break;
                }
            }
            0 => {
                let c = g.pow(g.prime_class(p).expect("ramified prime"), e as i64);
                reachable = reachable.iter().map(|&s| g.mul(s, c)).collect();
            }
            _ => {
                let c = g.prime_class(p).expect("split prime");
                let steps: BTreeSet<usize> = (0..=e as i64).map(|i| g.pow(c, 2 * i - e as i64)).collect();
                reachable = reachable
                    .iter()
                    .flat_map(|&s| steps.iter().map(move |&t| (s, t)))
                    .map(|(s, t)| g.mul(s, t))
                    .collect();
            }
        }
    }
    let represented = possible
        && (reachable.contains(&g.principal_index()) || reachable.contains(&g.negative_principal_index()));
    let witness = if represented {
        y_bound(d, n)?.and_then(|ymax| search(d, n, &[1, -1], ymax))
    } else {
        None
    };
    Ok(IntegerRepresentation {
        d,
        n,
        represented,
        witness,
    })
}
