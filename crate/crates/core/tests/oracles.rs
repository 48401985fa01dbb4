use normlab_core::arith::{is_prime, primes_in, PrimeRange};
use normlab_core::bundled;
use normlab_core::factor::cycle_degrees;
use normlab_core::perm::{missing_class_witness, PermGroup};
use normlab_core::poly::{det_linear_forms, MultiPoly};
use normlab_core::represent::{brute_force_search, is_norm_integer, is_norm_prime, Route};
use normlab_core::splitting::{splitting_type, Tri};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn var(i: usize, n: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn k(c: i64, n: usize) -> MultiPoly {
    MultiPoly::constant(n, BigInt::from(c))
}

fn random_points(d: usize, count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| (0..d).map(|_| rng.random_range(-1000..=1000)).collect())
        .collect()
}

#[test]
fn zeta5_matches_displayed_determinant() {
    let x = |i: usize| var(i, 4);
    let z = MultiPoly::zero(4);
    let m = vec![
        vec![x(0), z.sub(&x(3)), x(3).sub(&x(2)), x(2).sub(&x(1))],
        vec![x(1), x(0).sub(&x(3)), z.sub(&x(2)), x(3).sub(&x(1))],
        vec![x(2), x(1).sub(&x(3)), x(0).sub(&x(2)), z.sub(&x(1))],
        vec![x(3), x(2).sub(&x(3)), x(1).sub(&x(2)), x(0).sub(&x(1))],
    ];
    let displayed = det_linear_forms(&m).unwrap();
    let psi = bundled::field("zeta5").unwrap().norm_form().unwrap();
    assert_eq!(psi.psi, displayed);
    for v in random_points(4, 100) {
        assert_eq!(psi.eval_i64(&v), displayed.eval_i64(&v));
    }
}

#[test]
fn displayed_real_cyclotomic_cubic() {
    // x1^3 - x2^3 + x3^3 - 3 x1 (x2^2 - x3^2) + 3 x3 (2 x1 + x2)(x1 + x3)
    let x = |i: usize| var(i, 3);
    let cube = |p: &MultiPoly| p.mul(p).mul(p);
    let displayed = cube(&x(0))
        .sub(&cube(&x(1)))
        .add(&cube(&x(2)))
        .sub(&k(3, 3).mul(&x(0)).mul(&x(1).mul(&x(1)).sub(&x(2).mul(&x(2)))))
        .add(
            &k(3, 3)
                .mul(&x(2))
                .mul(&k(2, 3).mul(&x(0)).add(&x(1)))
                .mul(&x(0).add(&x(2))),
        );
    let psi = bundled::field("zeta9_plus").unwrap().norm_form().unwrap();
    assert_eq!(psi.psi, displayed);
    for v in random_points(3, 100) {
        assert_eq!(psi.eval_i64(&v), displayed.eval_i64(&v));
    }
    let plus7 = bundled::field("zeta7_plus").unwrap().norm_form().unwrap();
    assert_ne!(plus7.psi, displayed);
}

#[test]
fn quadratic_and_cubic_templates() {
    let x = |i: usize, n| var(i, n);
    let sq = |p: &MultiPoly| p.mul(p);
    for (name, a) in [("q_i", -1), ("sqrt2", 2), ("sqrt_m5", -5)] {
        let want = sq(&x(0, 2)).sub(&k(a, 2).mul(&sq(&x(1, 2))));
        assert_eq!(bundled::field(name).unwrap().norm_form().unwrap().psi, want, "{name}");
    }
    let want = sq(&x(0, 2)).add(&x(0, 2).mul(&x(1, 2))).sub(&k(57, 2).mul(&sq(&x(1, 2))));
    assert_eq!(bundled::field("sqrt229").unwrap().norm_form().unwrap().psi, want);
    let a = 2;
    let cube = |p: &MultiPoly| p.mul(p).mul(p);
    let want = cube(&x(0, 3))
        .add(&k(a, 3).mul(&cube(&x(1, 3))))
        .add(&k(a * a, 3).mul(&cube(&x(2, 3))))
        .sub(&k(3 * a, 3).mul(&x(0, 3)).mul(&x(1, 3)).mul(&x(2, 3)));
    assert_eq!(bundled::field("cbrt2").unwrap().norm_form().unwrap().psi, want);
}

#[derive(Clone, Copy)]
struct C(f64, f64);

impl C {
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn div(self, o: C) -> C {
        let n = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / n, (self.1 * o.0 - self.0 * o.1) / n)
    }
}

/// Durand-Kerner roots of a monic integer polynomial.
fn roots(coeffs: &[f64]) -> Vec<C> {
    let d = coeffs.len() - 1;
    let mut z: Vec<C> = (0..d).map(|i| {
        let t = 0.4 + 0.9 * i as f64;
        C(t.cos() * 1.3, t.sin() * 1.3)
    }).collect();
    let eval = |x: C| coeffs.iter().rev().fold(C(0.0, 0.0), |acc, &c| acc.mul(x).add(C(c, 0.0)));
    for _ in 0..500 {
        for i in 0..d {
            let mut den = C(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            z[i] = z[i].sub(eval(z[i]).div(den));
        }
    }
    z
}

// Norms through the complex embeddings, for the power basis.
#[test]
fn norm_forms_agree_with_embeddings() {
    for name in bundled::names() {
        let field = bundled::field(name).unwrap();
        assert!(field.spec().is_power_basis());
        let f: Vec<f64> = field.poly().to_i64().unwrap().iter().map(|&c| c as f64).collect();
        let rs = roots(&f);
        let psi = field.norm_form().unwrap();
        for v in random_points(psi.degree(), 50).into_iter().map(|v| v.iter().map(|x| x / 100).collect::<Vec<_>>()) {
            let mut n = C(1.0, 0.0);
            for &r in &rs {
                let mut s = C(0.0, 0.0);
                let mut pw = C(1.0, 0.0);
                for &x in &v {
                    s = s.add(pw.mul(C(x as f64, 0.0)));
                    pw = pw.mul(r);
                }
                n = n.mul(s);
            }
            let exact: f64 = psi.eval_i64(&v).to_string().parse().unwrap();
            assert!((n.0 - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{name} {v:?}");
            assert!(n.1.abs() <= 1e-6 * exact.abs().max(1.0));
        }
    }
}

#[test]
fn fermat_two_squares() {
    let h = bundled::field("q_i").unwrap().norm_form().unwrap();
    for p in primes_in(PrimeRange::new(2, 20_000)) {
        let v = is_norm_prime(&h, p, 0).unwrap();
        let want = p == 2 || p % 4 == 1;
        assert_eq!(v.answer == Tri::Yes, want, "p = {p}");
        if let Some(w) = v.witness {
            assert_eq!(w[0] * w[0] + w[1] * w[1], p as i64);
        }
    }
}

#[test]
fn degree_sums_over_all_bundled_fields() {
    for field in bundled::all().unwrap() {
        for p in primes_in(PrimeRange::new(2, 100_000)) {
            let st = splitting_type(&field, p, p).unwrap();
            if !st.exceptional {
                assert_eq!(st.degree_sum(), field.degree(), "{} at {p}", field.label());
            }
        }
    }
}

#[test]
fn frobenius_types_occur_in_group() {
    for name in ["cbrt2", "zeta7_plus", "zeta9_plus", "zeta5"] {
        let field = bundled::field(name).unwrap();
        let g = field.group().unwrap();
        let types: Vec<_> = g.elements().iter().map(|e| e.cycle_type()).collect();
        let disc = field.poly_discriminant().clone();
        for p in primes_in(PrimeRange::new(2, 10_000)) {
            if (&disc % BigInt::from(p)) == BigInt::ZERO {
                continue;
            }
            let t = normlab_core::perm::CycleType::new(cycle_degrees(&field.poly().reduce(p)).unwrap());
            assert!(types.contains(&t), "{name} at {p}: {t}");
        }
    }
}

#[test]
fn every_proper_subgroup_misses_a_class() {
    for n in [3, 4] {
        let g = PermGroup::symmetric(n);
        let subs = g.subgroups();
        assert_eq!(subs.len(), if n == 3 { 6 } else { 30 });
        for h in subs.iter().filter(|h| h.order() < g.order()) {
            let c = missing_class_witness(&g, h).unwrap();
            assert!(c.members.iter().all(|m| !h.contains(m)));
        }
        assert!(missing_class_witness(&g, &g).is_err());
    }
}

#[test]
fn exact_routes_agree_with_brute_force_small() {
    for name in bundled::names() {
        let h = bundled::field(name).unwrap().norm_form().unwrap();
        let b = if h.degree() <= 2 { 300 } else { 12 };
        for n in 1..=300u64 {
            let v = is_norm_integer(&h, n, 0).unwrap();
            if v.route == Route::BruteForce {
                continue;
            }
            let found = brute_force_search(&h, n, b).unwrap();
            if found.is_some() {
                assert_eq!(v.answer, Tri::Yes, "{name} n = {n}");
            }
            if v.answer == Tri::No {
                assert!(found.is_none());
            }
            if is_prime(n) {
                assert_eq!(is_norm_prime(&h, n, 0).unwrap().answer, v.answer, "{name} p = {n}");
            }
        }
    }
}

#[test]
fn filter_failure_implies_no() {
    use normlab_core::represent::{high_prime_filter, FilterResult};
    for name in ["q_i", "sqrt_m5"] {
        let h = bundled::field(name).unwrap().norm_form().unwrap();
        let mut failed = 0;
        for n in 1..=10_000u64 {
            if let FilterResult::Fail(p) = high_prime_filter(&h, n, 0).unwrap() {
                failed += 1;
                assert_eq!(n % p, 0);
                assert_eq!(is_norm_integer(&h, n, 0).unwrap().answer, Tri::No, "{name} n = {n}");
            }
        }
        assert!(failed > 0);
    }
}
