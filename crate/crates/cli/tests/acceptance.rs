//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion whose stated threshold contradicts an independently computed
//! value prints FAIL with that value. The run still succeeds when the
//! computed value matches the independent oracle, so a FAIL line there
//! records a threshold that cannot be met, not a broken computation.

use std::process::Command;
use std::time::Instant;

use normlab_core::bundled;
use normlab_core::factor::factor;
use normlab_core::perm::{missing_class_witness, PermGroup};
use normlab_core::poly::{det_linear_forms, ModPoly, MultiPoly};
use normlab_core::quadratic::{class_group, is_fundamental, QuadForm};
use normlab_core::represent::{is_norm_integer, CompiledForm, Route};
use normlab_core::splitting::{splitting_type, Tri};
use num_bigint::BigInt;
use num_traits::Pow;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

fn normlab(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_normlab"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "normlab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&normlab(args)).expect("json output")
}

fn lines(args: &[&str]) -> Vec<Value> {
    normlab(args)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn sieve(n: usize) -> Vec<bool> {
    let mut p = vec![true; n + 1];
    p[0] = false;
    if n >= 1 {
        p[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if p[i] {
            for j in (i * i..=n).step_by(i) {
                p[j] = false;
            }
        }
        i += 1;
    }
    p
}

/// `s[n]` iff `n = x^2 + y^2` with `(x, y) != 0`, by direct marking.
fn two_squares(n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    let mut x = 0;
    while x * x <= n {
        let mut y = 0;
        while x * x + y * y <= n {
            if x + y > 0 {
                s[x * x + y * y] = true;
            }
            y += 1;
        }
        x += 1;
    }
    s
}

enum Verdict {
    Pass(String),
    Fail(String),
    /// Threshold contradicts the oracle-checked value.
    Unattainable(String),
}

fn check(cond: bool, detail: String) -> Verdict {
    if cond {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn var(i: usize, n: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn konst(c: i64, n: usize) -> MultiPoly {
    MultiPoly::constant(n, BigInt::from(c))
}

fn points(d: usize) -> Vec<Vec<i64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    (0..100).map(|_| (0..d).map(|_| rng.random_range(-500..=500)).collect()).collect()
}

fn same_everywhere(name: &str, want: &MultiPoly) -> bool {
    let h = bundled::field(name).unwrap().norm_form().unwrap();
    &h.psi == want && points(h.degree()).iter().all(|v| h.eval_i64(v) == want.eval_i64(v))
}

fn c1() -> Verdict {
    let sq = |p: &MultiPoly| p.mul(p);
    let cube = |p: &MultiPoly| p.mul(p).mul(p);
    let x2 = |i| var(i, 2);
    let x3 = |i| var(i, 3);
    let x4 = |i| var(i, 4);
    let q_i = sq(&x2(0)).add(&sq(&x2(1)));
    let s229 = sq(&x2(0)).add(&x2(0).mul(&x2(1))).sub(&konst(57, 2).mul(&sq(&x2(1))));
    let cbrt2 = cube(&x3(0))
        .add(&konst(2, 3).mul(&cube(&x3(1))))
        .add(&konst(4, 3).mul(&cube(&x3(2))))
        .sub(&konst(6, 3).mul(&x3(0)).mul(&x3(1)).mul(&x3(2)));
    let cubic = cube(&x3(0))
        .sub(&cube(&x3(1)))
        .add(&cube(&x3(2)))
        .sub(&konst(3, 3).mul(&x3(0)).mul(&sq(&x3(1)).sub(&sq(&x3(2)))))
        .add(&konst(3, 3).mul(&x3(2)).mul(&konst(2, 3).mul(&x3(0)).add(&x3(1))).mul(&x3(0).add(&x3(2))));
    let z = MultiPoly::zero(4);
    let det = det_linear_forms(&[
        vec![x4(0), z.sub(&x4(3)), x4(3).sub(&x4(2)), x4(2).sub(&x4(1))],
        vec![x4(1), x4(0).sub(&x4(3)), z.sub(&x4(2)), x4(3).sub(&x4(1))],
        vec![x4(2), x4(1).sub(&x4(3)), x4(0).sub(&x4(2)), z.sub(&x4(1))],
        vec![x4(3), x4(2).sub(&x4(3)), x4(1).sub(&x4(2)), x4(0).sub(&x4(1))],
    ])
    .unwrap();
    let cli_ok = json(&["form", "q_i.json"])["form"] == "x1^2 + x2^2"
        && json(&["form", "cbrt2.json", "--eval", "1,1,1"])["value"] == 1;
    let ok = [
        same_everywhere("q_i", &q_i),
        same_everywhere("sqrt229", &s229),
        same_everywhere("cbrt2", &cbrt2),
        same_everywhere("zeta5", &det),
    ];
    let displayed_cubic_is_t3_3t_1 = same_everywhere("zeta9_plus", &cubic);
    let zeta7_matches = same_everywhere("zeta7_plus", &cubic);
    if !(ok.iter().all(|&b| b) && cli_ok) || !displayed_cubic_is_t3_3t_1 {
        return Verdict::Fail(format!("forms {ok:?}, cli {cli_ok}, t^3-3t+1 {displayed_cubic_is_t3_3t_1}"));
    }
    if zeta7_matches {
        return Verdict::Pass("all five displayed forms reproduced".into());
    }
    Verdict::Unattainable(
        "4/5 reproduced symbolically and at 100 points; the displayed real-cyclotomic cubic is the \
         power-basis norm form of t^3-3t+1 (Q(zeta9)+), not of t^3+t^2-2t-1"
            .into(),
    )
}

fn c2() -> Verdict {
    let rows = lines(&["represent", "q_i.json", "2", "--prime", "--to", "100000"]);
    let primes = sieve(100_000);
    let expected: Vec<u64> = (2..=100_000u64).filter(|&p| primes[p as usize]).collect();
    let got: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    let mismatches = rows
        .iter()
        .filter(|r| {
            let p = r["n"].as_u64().unwrap();
            (r["verdict"] == "yes") != (p == 2 || p % 4 == 1)
        })
        .count();
    check(
        got == expected && mismatches == 0,
        format!("{} primes, {mismatches} mismatches", rows.len()),
    )
}

fn c3(threads: &str) -> Value {
    json(&["density", "q_i.json", "--bound", "1000000", "--threads", threads])
}

fn c4(threads: &str) -> Value {
    json(&["chebotarev", "cbrt2.json", "--bound", "1000000", "--threads", threads])
}

fn c7_scan(threads: &str) -> Value {
    json(&["density", "sqrt_m5.json", "--bound", "1000000", "--threads", threads])
}

fn criterion3() -> Verdict {
    let r = c3("1");
    let ratio = f(&r["ratio"]);
    check((ratio - 0.5).abs() <= 0.01, format!("d_P = {ratio:.6} over {} primes", r["total"]))
}

fn criterion4() -> Verdict {
    let t = c4("1");
    let want = [("[1,1,1]", 1.0 / 6.0, "1/6"), ("[1,2]", 0.5, "1/2"), ("[3]", 1.0 / 3.0, "1/3")];
    let rows = t["rows"].as_array().unwrap();
    let mut ok = rows.len() == 3;
    let mut detail = Vec::new();
    for (ty, d, s) in want {
        let cycle: Vec<u64> = serde_json::from_str(ty).unwrap();
        let row = rows
            .iter()
            .find(|r| r["cycle_type"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(cycle.iter().copied()));
        match row {
            Some(r) => {
                let fr = f(&r["frequency"]);
                ok &= (fr - d).abs() <= 0.01 && r["theoretical"] == s;
                detail.push(format!("{ty}: {fr:.4}"));
            }
            None => ok = false,
        }
    }
    let high = f(&t["observed_high"]);
    ok &= (high - 1.0 / 3.0).abs() <= 0.01 && t["d_high"] == "1/3";
    check(ok, format!("{}, d_high {high:.4}", detail.join(", ")))
}

fn criterion5() -> Verdict {
    let oracle = two_squares(1_000_000);
    let mut ratios = Vec::new();
    let mut agree = true;
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let r = json(&["density", "q_i.json", "--bound", &n.to_string(), "--integers"]);
        let want = oracle[1..=n as usize].iter().filter(|&&b| b).count() as u64;
        agree &= r["count"].as_u64() == Some(want);
        ratios.push(f(&r["ratio"]));
    }
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let detail = format!("ratios {ratios:?}");
    if !agree || !decreasing {
        return Verdict::Fail(format!("{detail}, oracle agreement {agree}, decreasing {decreasing}"));
    }
    if ratios[3] < 0.2 {
        Verdict::Pass(detail)
    } else {
        Verdict::Unattainable(format!("{detail}: strictly decreasing, but {} >= 0.2 at 10^6", ratios[3]))
    }
}

fn criterion6() -> Verdict {
    let r = json(&["bound", "--high", "q_i.json", "--count", "50"]);
    let primes = sieve(10_000);
    let first: Vec<u64> = (3..10_000u64).filter(|&p| primes[p as usize] && p % 4 == 3).take(50).collect();
    let oracle: f64 = first.iter().map(|&p| (p * p - p + 1) as f64 / (p * p) as f64).product();
    let listed: Vec<u64> = r["primes"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
    let bound = f(&r["value"]);
    let a = json(&["bound", "--primes", "3,7", "--check", "100000"]);
    let emp = f(&a["empirical_ratio"]);
    // 301/441 in lowest terms
    let exact = a["bound"] == "43/63";
    let detail = format!("bound(50) = {bound:.6}, A density {emp:.6} vs 301/441");
    if listed != first || (bound - oracle).abs() > 1e-12 || !exact || (emp - 301.0 / 441.0).abs() > 0.01 {
        return Verdict::Fail(detail);
    }
    if bound < 0.2 {
        Verdict::Pass(detail)
    } else {
        Verdict::Unattainable(format!("{detail}: the empirical half holds; the product is {bound:.4} >= 0.2"))
    }
}

fn criterion7() -> Verdict {
    let g = json(&["classgroup", "-20"]);
    let reps = g["representatives"].to_string();
    let lib = class_group(-20).unwrap();
    let lib_ok = lib.h() == 2 && lib.representatives() == [QuadForm::new(1, 0, 5), QuadForm::new(2, 2, 3)];
    let d = c7_scan("1");
    let ratio = f(&d["ratio"]);
    check(
        g["h"] == 2 && reps == "[[1,0,5],[2,2,3]]" && lib_ok && (ratio - 0.25).abs() <= 0.02,
        format!("h = {}, reps {reps}, density {ratio:.6}", g["h"]),
    )
}

/// Coordinate bound that captures every value `<= 5000` of the zeta5 form:
/// balancing by the golden unit keeps conjugate sizes within sqrt(phi) n^(1/4),
/// and the inverse Vandermonde rows have l1 norm <= 1.232.
const ZETA5_BALANCED_BOX: i64 = 14;

fn criterion8() -> Verdict {
    let mut contradictions = 0;
    let mut compared = 0;
    let mut detail = Vec::new();
    for name in bundled::names() {
        let h = bundled::field(name).unwrap().norm_form().unwrap();
        // In degree 4 a box containing the balanced box sees every value the
        // 300-box sees.
        let b = if h.degree() == 4 { 3 * ZETA5_BALANCED_BOX } else { 300 };
        let seen = CompiledForm::new(&h).unwrap().values_in_box(b, 5000);
        let mut misses = 0;
        for n in 1..=5000u64 {
            let v = is_norm_integer(&h, n, 0).unwrap();
            if v.route == Route::BruteForce {
                continue;
            }
            compared += 1;
            match (v.answer, seen[n as usize]) {
                (Tri::No, true) => contradictions += 1,
                (Tri::Yes, false) => misses += 1,
                _ => {}
            }
        }
        detail.push(format!("{name}:{misses}"));
    }
    check(
        contradictions == 0 && compared > 0,
        format!("{compared} verdicts, {contradictions} contradictions; yes outside box [{}]", detail.join(" ")),
    )
}

fn criterion9() -> Verdict {
    let mut witnessed = 0;
    let mut ok = true;
    for (n, proper) in [(3, 5usize), (4, 29)] {
        let g = PermGroup::symmetric(n);
        let subs: Vec<_> = g.subgroups().into_iter().filter(|h| h.order() < g.order()).collect();
        ok &= subs.len() == proper;
        for h in &subs {
            match missing_class_witness(&g, h) {
                Ok(c) if c.members.iter().all(|m| !h.contains(m)) => witnessed += 1,
                _ => ok = false,
            }
        }
    }
    check(ok, format!("{witnessed} proper subgroups of S3 and S4, each with a disjoint class"))
}

fn least_ap(set: &[bool], k: usize) -> Option<Vec<u64>> {
    let n = set.len() - 1;
    for q in 1..=n {
        for a in 1..=n {
            if a + (k - 1) * q > n {
                break;
            }
            if (0..k).all(|i| set[a + i * q]) {
                return Some((0..k).map(|i| (a + i * q) as u64).collect());
            }
        }
    }
    None
}

fn criterion10() -> Verdict {
    let members = |v: &Value| -> Vec<u64> {
        v["witness"]["members"].as_array().map(|a| a.iter().map(|x| x.as_u64().unwrap()).collect()).unwrap_or_default()
    };
    let a = members(&json(&["ap", "q_i.json", "--k", "4", "--bound", "50"]));
    let b = members(&json(&["ap", "q_i.json", "--k", "4", "--bound", "50", "--primes"]));
    let c = members(&json(&["ap", "q_i.json", "--k", "5", "--bound", "100000", "--primes"]));
    let squares = two_squares(100_000);
    let primes = sieve(100_000);
    let ps: Vec<bool> = (0..=50).map(|i| squares[i] && primes[i]).collect();
    let ok = a == [1, 5, 9, 13]
        && least_ap(&squares[..=50], 4).as_deref() == Some(&a[..])
        && b == [5, 17, 29, 41]
        && least_ap(&ps, 4).as_deref() == Some(&b[..])
        && c.len() == 5
        && c.iter().all(|&m| primes[m as usize] && squares[m as usize])
        && c.windows(2).all(|w| w[1] - w[0] == c[1] - c[0]);
    check(ok, format!("{a:?}, {b:?}, k=5: {c:?}"))
}

fn criterion11() -> Verdict {
    let pairs = [
        ("density q_i", c3("1"), c3("8")),
        ("chebotarev cbrt2", c4("1"), c4("8")),
        ("density sqrt_m5", c7_scan("1"), c7_scan("8")),
    ];
    let raw_equal = normlab(&["chebotarev", "cbrt2.json", "--bound", "1000000", "--threads", "1"])
        == normlab(&["chebotarev", "cbrt2.json", "--bound", "1000000", "--threads", "8"]);
    let same: Vec<&str> = pairs.iter().filter(|(_, a, b)| a == b).map(|(n, _, _)| *n).collect();
    check(same.len() == 3 && raw_equal, format!("identical at 1 and 8 threads: {}", same.join(", ")))
}

fn criterion12() -> Verdict {
    let handles: Vec<_> = bundled::all().unwrap().into_iter().map(|k| k.norm_form().unwrap()).collect();
    let primes: Vec<u64> = { let s = sieve(100_000); (2..=100_000u64).filter(|&p| s[p as usize]).collect() };
    let discs: Vec<i64> = (-20_000..20_000).filter(|&d| is_fundamental(d)).collect();
    let exact: Vec<Vec<u64>> = handles
        .iter()
        .map(|h| {
            (1..300)
                .filter(|&n| {
                    let v = is_norm_integer(h, n, 0).unwrap();
                    v.answer == Tri::Yes && v.route != Route::BruteForce
                })
                .collect()
        })
        .collect();
    let runner = || TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let coords = || prop::collection::vec(-25i64..=25, 4);
    let mut results: Vec<(&str, Result<(), String>)> = Vec::new();
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();

    results.push(("homogeneity", runner().run(&(0..handles.len(), coords(), -9i64..=9), |(k, v, t)| {
        let h = &handles[k];
        let d = h.degree();
        let tv: Vec<i64> = v[..d].iter().map(|x| x * t).collect();
        prop_assert_eq!(h.eval_i64(&tv), BigInt::from(t).pow(d as u32) * h.eval_i64(&v[..d]));
        Ok(())
    }).map_err(|e| e.to_string())));
    results.push(("norm multiplicativity", runner().run(&(0..handles.len(), coords(), coords()), |(k, u, v)| {
        let h = &handles[k];
        let d = h.degree();
        let (u, v) = (big(&u[..d]), big(&v[..d]));
        let uv = h.field.mul_coords(&u, &v);
        prop_assert_eq!(h.field.norm_of(&uv), h.field.norm_of(&u) * h.field.norm_of(&v));
        Ok(())
    }).map_err(|e| e.to_string())));
    results.push(("sum e_i f_i = d", runner().run(&(0..handles.len(), 0..primes.len(), any::<u64>()), |(k, i, seed)| {
        let st = splitting_type(&handles[k].field, primes[i], seed).unwrap();
        prop_assert!(st.exceptional || st.degree_sum() == handles[k].degree());
        Ok(())
    }).map_err(|e| e.to_string())));
    results.push(("factorization reconstruction", runner().run(
        &(0..30usize, prop::collection::vec(0u64..1 << 20, 2..10), any::<u64>()),
        |(i, c, seed)| {
            let p = primes[i];
            let f = ModPoly::new(p, c.iter().map(|x| x % p).collect());
            if f.degree().unwrap_or(0) == 0 {
                return Ok(());
            }
            prop_assert_eq!(factor(&f, seed).unwrap().expand(), f);
            Ok(())
        },
    ).map_err(|e| e.to_string())));
    results.push(("class-group axioms", runner().run(&(0..discs.len(), any::<u64>(), any::<u64>(), any::<u64>()), |(di, i, j, k)| {
        let g = class_group(discs[di]).unwrap();
        let h = g.h() as u64;
        let (a, b, c) = ((i % h) as usize, (j % h) as usize, (k % h) as usize);
        let e = g.principal_index();
        prop_assert_eq!(g.mul(a, e), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), e);
        prop_assert_eq!(g.mul(a, b), g.mul(b, a));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        Ok(())
    }).map_err(|e| e.to_string())));
    results.push(("multiplicative closure", runner().run(&(0..handles.len(), any::<usize>(), any::<usize>()), |(k, i, j)| {
        let vals = &exact[k];
        let (n, m) = (vals[i % vals.len()], vals[j % vals.len()]);
        let v = is_norm_integer(&handles[k], n * m, 0).unwrap();
        prop_assert!(v.route != Route::BruteForce && v.answer == Tri::Yes, "{} * {}", n, m);
        Ok(())
    }).map_err(|e| e.to_string())));
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    check(failed.is_empty(), if failed.is_empty() {
        format!("{} suites x 1000 cases", results.len())
    } else {
        failed.join("; ")
    })
}

type Criterion = (u32, &'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "golden norm forms", c1),
        (2, "Fermat oracle", c2),
        (3, "prime density for Q(i)", criterion3),
        (4, "Chebotarev for x^3-2", criterion4),
        (5, "zero-density trend", criterion5),
        (6, "sieve machinery", criterion6),
        (7, "class group D=-20", criterion7),
        (8, "oracle equivalence", criterion8),
        (9, "proper subgroups miss a class", criterion9),
        (10, "progression witnesses", criterion10),
        (11, "determinism across threads", criterion11),
        (12, "property suites", criterion12),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut broken = Vec::new();
    for (id, name, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let verdict = run();
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) | Verdict::Unattainable(d) => ("FAIL", d),
        };
        println!("{tag} criterion {id:>2} {name} ({secs:.1}s): {detail}");
        if let Verdict::Fail(_) = verdict {
            broken.push(id);
        }
    }
    if !broken.is_empty() {
        eprintln!("criteria with computation failures: {broken:?}");
        std::process::exit(1);
    }
}
