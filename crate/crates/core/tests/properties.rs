use std::sync::OnceLock;

use normlab_core::arith::{is_prime, small_primes};
use normlab_core::bundled;
use normlab_core::factor::factor;
use normlab_core::field::{norm_form, FieldSpec, NormFormHandle};
use normlab_core::poly::{IntPoly, ModPoly};
use normlab_core::quadratic::{class_group, is_fundamental};
use normlab_core::represent::{is_norm_integer, Route};
use normlab_core::splitting::{splitting_type, Tri};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use proptest::prelude::*;

fn handles() -> &'static [NormFormHandle] {
    static H: OnceLock<Vec<NormFormHandle>> = OnceLock::new();
    H.get_or_init(|| {
        bundled::all()
            .unwrap()
            .into_iter()
            .map(|k| k.norm_form().unwrap())
            .collect()
    })
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| small_primes(100_000))
}

fn discriminants() -> &'static [i64] {
    static D: OnceLock<Vec<i64>> = OnceLock::new();
    D.get_or_init(|| (-40_000..40_000).filter(|&d| is_fundamental(d)).collect())
}

/// Per bundled field, the `n < 400` an exact route certifies as values.
fn exact_values() -> &'static [Vec<u64>] {
    static V: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    V.get_or_init(|| {
        handles()
            .iter()
            .map(|h| {
                (1..400)
                    .filter(|&n| {
                        let v = is_norm_integer(h, n, 0).unwrap();
                        v.answer == Tri::Yes && v.route != Route::BruteForce
                    })
                    .collect()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn homogeneity(k in 0usize..8, v in prop::collection::vec(-30i64..=30, 4), t in -12i64..=12) {
        let h = &handles()[k];
        let d = h.degree();
        let v = &v[..d];
        let tv: Vec<i64> = v.iter().map(|x| x * t).collect();
        prop_assert_eq!(h.eval_i64(&tv), BigInt::from(t).pow(d as u32) * h.eval_i64(v));
    }

    #[test]
    fn norm_is_multiplicative(
        k in 0usize..8,
        u in prop::collection::vec(-20i64..=20, 4),
        v in prop::collection::vec(-20i64..=20, 4),
    ) {
        let h = &handles()[k];
        let d = h.degree();
        let (u, v) = (big(&u[..d]), big(&v[..d]));
        let uv = h.field.mul_coords(&u, &v);
        let nu = h.field.norm_of(&u);
        prop_assert_eq!(&nu, &h.eval(&u));
        prop_assert_eq!(h.field.norm_of(&uv), nu * h.field.norm_of(&v));
        prop_assert_eq!(h.eval(&uv), h.eval(&u) * h.eval(&v));
    }

    #[test]
    fn splitting_degrees_sum_to_degree(k in 0usize..8, i in 0usize..9592, seed in any::<u64>()) {
        let h = &handles()[k];
        let p = primes()[i];
        let st = splitting_type(&h.field, p, seed).unwrap();
        if !st.exceptional {
            prop_assert_eq!(st.degree_sum(), h.degree());
        }
    }

    #[test]
    fn factorization_reconstructs(
        pi in 0usize..40,
        coeffs in prop::collection::vec(0u64..1_000_000, 2..12),
        seed in any::<u64>(),
    ) {
        let p = primes()[pi];
        let f = ModPoly::new(p, coeffs.iter().map(|c| c % p).collect());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fact = factor(&f, seed).unwrap();
        prop_assert_eq!(fact.expand(), f);
        for (g, _) in &fact.factors {
            prop_assert!(g.is_monic());
            let gf = factor(g, seed ^ 1).unwrap();
            prop_assert_eq!(gf.factors.len(), 1);
            prop_assert_eq!(gf.factors[0].1, 1);
        }
    }

    #[test]
    fn class_group_axioms(di in any::<usize>(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let ds = discriminants();
        let g = class_group(ds[di % ds.len()]).unwrap();
        let h = g.h();
        let (a, b, c) = (i % h, j % h, k % h);
        let e = g.principal_index();
        prop_assert_eq!(g.mul(a, e), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), e);
        prop_assert_eq!(g.mul(a, b), g.mul(b, a));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.pow(a, h as i64), e);
    }

    #[test]
    fn values_closed_under_products(k in 0usize..8, i in any::<usize>(), j in any::<usize>()) {
        let h = &handles()[k];
        let vals = &exact_values()[k];
        let (n, m) = (vals[i % vals.len()], vals[j % vals.len()]);
        let vnm = is_norm_integer(h, n * m, 0).unwrap();
        prop_assert_ne!(vnm.route, Route::BruteForce);
        prop_assert_eq!(vnm.answer, Tri::Yes);
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn unimodular(d: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for &(r, s, t) in ops {
        let (r, s) = (r % d, s % d);
        if r == s {
            continue;
        }
        for row in u.iter_mut() {
            row[r] += t * row[s];
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // A basis change w' = U^T w gives Psi'(w) = Psi(U w).
    #[test]
    fn unimodular_basis_change(
        which in 0usize..3,
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..5),
        w in prop::collection::vec(-15i64..=15, 3),
    ) {
        let f = [&[1i64, 0, 1][..], &[-57, -1, 1], &[-2, 0, 0, 1]][which];
        let spec = FieldSpec::monogenic("t", IntPoly::from_i64(f));
        let d = spec.degree();
        let u = unimodular(d, &ops);
        let basis: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|c| q(u[c][i])).collect())
            .collect();
        let base = norm_form(spec.clone()).unwrap();
        let changed = norm_form(spec.with_basis(basis)).unwrap();
        let w = &w[..d];
        let uw: Vec<i64> = (0..d).map(|r| (0..d).map(|c| u[r][c] * w[c]).sum()).collect();
        prop_assert_eq!(changed.eval_i64(w), base.eval_i64(&uw));
    }
}

#[test]
fn primes_table_is_complete() {
    assert_eq!(primes().len(), 9592);
    assert!(primes().iter().all(|&p| is_prime(p)));
}
