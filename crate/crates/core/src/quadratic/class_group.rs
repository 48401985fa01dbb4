use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{check_fundamental, compose_raw, prime_form, reduce, QuadForm};
use crate::arith::{factorize, isqrt};
use crate::error::{Error, Result};

/// Narrow class group of a fundamental discriminant.
///
/// For `D > 0` every class is a cycle of reduced forms under `rho`; the
/// representative of a cycle is its form with smallest `(a < 0, |a|, b)`.
#[derive(Debug, Clone)]
pub struct ClassGroupQ {
    d: i64,
    representatives: Vec<QuadForm>,
    // every reduced form -> class index (all forms of each cycle for D > 0)
    index: HashMap<QuadForm, usize>,
    negative_principal: usize,
}

static CACHE: OnceLock<RwLock<HashMap<i64, Arc<ClassGroupQ>>>> = OnceLock::new();

/// Class group of `d`, memoized.
pub fn class_group(d: i64) -> Result<Arc<ClassGroupQ>> {
    check_fundamental(d)?;
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(g) = cache.read().expect("class group cache").get(&d) {
        return Ok(g.clone());
    }
    let built = Arc::new(ClassGroupQ::build(d));
    let mut w = cache.write().expect("class group cache");
    Ok(w.entry(d).or_insert(built).clone())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n).0 {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds
}

impl ClassGroupQ {
    fn build(d: i64) -> ClassGroupQ {
        let mut representatives = Vec::new();
        let mut index = HashMap::new();
        if d < 0 {
            let amax = isqrt((-d / 3) as u64) as i64;
            for a in 1..=amax {
                for b in (-a + 1)..=a {
                    if (b - d).rem_euclid(2) != 0 {
                        continue;
                    }
                    let num = b * b - d;
                    if num % (4 * a) != 0 {
                        continue;
                    }
                    let f = QuadForm::new(a, b, num / (4 * a));
                    if f.is_reduced_definite() && f.is_primitive() {
                        index.insert(f, representatives.len());
                        representatives.push(f);
                    }
                }
            }
            let g = ClassGroupQ {
                d,
                representatives,
                index,
                negative_principal: 0,
            };
            return g;
        }
        let s = isqrt(d as u64) as i64;
        let mut reduced = Vec::new();
        let mut b = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
        while b > 0 {
            let n = ((d - b * b) / 4) as u64;
            for a in divisors(n) {
                let a = a as i64;
                let two_a = 2 * a;
                if two_a + b > s && two_a - b <= s {
                    let c = -(n as i64) / a;
                    for f in [QuadForm::new(a, b, c), QuadForm::new(-a, b, -c)] {
                        if f.is_primitive() {
                            reduced.push(f);
                        }
                    }
                }
            }
            b -= 2;
        }
        reduced.sort();
        let mut cycles: Vec<Vec<QuadForm>> = Vec::new();
        let mut seen: HashMap<QuadForm, usize> = HashMap::new();
        for f in reduced {
            if seen.contains_key(&f) {
                continue;
            }
            let mut cyc = vec![f];
            seen.insert(f, cycles.len());
            let mut g = f.rho();
            while g != f {
                seen.insert(g, cycles.len());
                cyc.push(g);
                g = g.rho();
            }
            cycles.push(cyc);
        }
        let key = |f: &QuadForm| (f.a < 0, f.a.abs(), f.b);
        let mut reps: Vec<(QuadForm, usize)> = cycles
            .iter()
            .enumerate()
            .map(|(i, c)| (*c.iter().min_by_key(|f| key(f)).expect("nonempty cycle"), i))
            .collect();
        reps.sort_by_key(|(f, _)| key(f));
        let mut remap = vec![0; cycles.len()];
        for (new, (_, old)) in reps.iter().enumerate() {
            remap[*old] = new;
        }
        for (f, old) in seen {
            index.insert(f, remap[old]);
        }
        representatives = reps.into_iter().map(|(f, _)| f).collect();
        let mut g = ClassGroupQ {
            d,
            representatives,
            index,
            negative_principal: 0,
        };
        g.negative_principal = g
            .class_of(QuadForm::principal(d).negate())
            .expect("negated principal form has the same discriminant");
        g
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// Narrow class number.
    pub fn h(&self) -> usize {
        self.representatives.len()
    }

    /// Class number in the wide sense, the ideal class number of the field.
    pub fn wide_class_number(&self) -> usize {
        if self.negative_principal == 0 {
            self.h()
        } else {
            self.h() / 2
        }
    }

    pub fn representatives(&self) -> &[QuadForm] {
        &self.representatives
    }

    pub fn principal_index(&self) -> usize {
        0
    }

    /// Class of `-principal`; equals the principal class iff a unit of norm
    /// -1 exists (always for `D < 0` by convention).
    pub fn negative_principal_index(&self) -> usize {
        self.negative_principal
    }

    pub fn class_of(&self, f: QuadForm) -> Result<usize> {
        if f.discriminant() != self.d {
            return Err(Error::DiscriminantMismatch(f.discriminant(), self.d));
        }
        let r = reduce(f)?;
        self.index
            .get(&r)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("form {f} is not primitive")))
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let f = compose_raw(self.representatives[i], self.representatives[j]);
        self.class_of(f).expect("composition stays in the group")
    }

    pub fn inv(&self, i: usize) -> usize {
        self.class_of(self.representatives[i].inverse())
            .expect("inverse stays in the group")
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(i) } else { i };
        let mut acc = 0;
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Class of a prime ideal of degree one above `p`, if any.
    pub fn prime_class(&self, p: u64) -> Option<usize> {
        prime_form(self.d, p).map(|f| self.class_of(f).expect("prime forms are primitive"))
    }
}
