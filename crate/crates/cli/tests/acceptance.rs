//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qferm::fermion::{
    fermionic_m, fermionic_n_at, gen_n, kleber_check, min_pairing_sum, standard_form_m, weyl_antisymmetry_check,
};
use qferm::fforacle::verify_m_polynomial;
use qferm::gseries::{heine_series, DegreeBox, GradedSeries};
use qferm::huahausel::{
    hausel_ratio, kac_a_series, kac_conjecture_check, main_identity_check, poincare_table, star_consistency,
    verma_expansion_check, BracketReading,
};
use qferm::qfield::RatQ;
use qferm::report::{Status, VerificationReport};
use qferm::rootdata::{RootData, RootVector, WeightVector};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn w(v: &[i64]) -> WeightVector {
    WeightVector(v.to_vec())
}

fn r(s: &str) -> RatQ {
    s.parse().unwrap()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn verified(rep: VerificationReport) -> Outcome {
    ensure(rep.is_verified(), || {
        let first = rep.mismatches.first().map(|c| format!(" first at {:?}: {} vs {}", c.alpha, c.lhs, c.rhs));
        format!(
            "{} {:?} {}{}",
            rep.identity,
            rep.params,
            rep.error.clone().unwrap_or_else(|| format!("{} mismatches", rep.mismatches.len())),
            first.unwrap_or_default()
        )
    })
}

fn within(limit: Duration, started: Instant) -> Outcome {
    ensure(started.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", started.elapsed()))
}

fn grid(rank: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn degrees(xbox: &[u32]) -> Vec<Vec<u32>> {
    DegreeBox::x_only(xbox.to_vec()).degrees()
}

fn as_root(d: &[u32]) -> RootVector {
    RootVector(d.iter().map(|&x| x as i64).collect())
}

fn main_identity() -> Outcome {
    let started = Instant::now();
    let cases: Vec<(RootData, Vec<u32>, Vec<Vec<i64>>)> = vec![
        (RootData::type_a(1), vec![8], vec![vec![0], vec![1], vec![2], vec![-1], vec![-3]]),
        (RootData::type_a(2), vec![5, 5], vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![-1, 2], vec![2, -1]]),
        (RootData::type_a(3), vec![3, 3, 3], vec![vec![0, 0, 0], vec![1, 0, 1], vec![0, 1, 0], vec![-1, 1, 0]]),
        (RootData::kronecker(2), vec![5, 5], vec![vec![0, 0], vec![1, 1], vec![2, 0], vec![-1, 2]]),
        (RootData::kronecker(3), vec![5, 5], vec![vec![0, 0], vec![1, 0], vec![1, 2], vec![0, -1]]),
    ];
    for (rd, xbox, nus) in cases {
        for nu in nus {
            verified(main_identity_check(&rd, &w(&nu), &xbox))?;
        }
    }
    within(Duration::from_secs(60), started)
}

fn hausel_values() -> Outcome {
    let a1 = RootData::type_a(1);
    let ratio = hausel_ratio(&a1, &w(&[2]), &[4]).map_err(|e| e.to_string())?;
    for (alpha, expect) in [(0, "1"), (1, "1+q"), (2, "1")] {
        let c = ratio.coefficient(&[alpha]).map_err(|e| e.to_string())?;
        ensure(c == r(expect), || format!("A1 nu=2 alpha={alpha}: {c}, expected {expect}"))?;
    }
    let mut points: Vec<(RootData, Vec<u32>, Vec<Vec<i64>>)> = vec![
        (RootData::type_a(1), vec![6], (0..=4).map(|n| vec![n]).collect()),
        (RootData::type_a(2), vec![3, 3], grid(2, 0, 2)),
        (RootData::type_a(3), vec![2, 2, 2], vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 1], vec![0, 2, 0]]),
    ];
    points.push((RootData::type_d4(), vec![1, 2, 1, 1], vec![vec![0, 1, 0, 0], vec![1, 1, 1, 1]]));
    for (rd, xbox, nus) in points {
        for nu in nus {
            // poincare_table enforces P = q^d·ratio ∈ ℕ[q] and deg P ≤ 2d,
            // i.e. the normalized coefficient has degree ≤ d.
            let table = poincare_table(&rd, &w(&nu), &xbox).map_err(|e| format!("nu={nu:?}: {e}"))?;
            for e in table {
                let normalized = e.poly.mul_q_pow(-e.d);
                let deg = normalized.numer().high_exp().unwrap_or(0);
                ensure(normalized.is_zero() || deg <= e.d, || format!("nu={nu:?} alpha={}: {normalized}", e.alpha))?;
            }
        }
    }
    Ok(())
}

fn kac_polynomials() -> Outcome {
    for (rd, xbox) in [(RootData::type_a(2), vec![3, 3]), (RootData::type_a(3), vec![2, 2, 2])] {
        let roots = rd.positive_roots().map_err(|e| e.to_string())?;
        let t = kac_a_series(&rd, &xbox).map_err(|e| e.to_string())?;
        for d in degrees(&xbox) {
            let expect = if roots.contains(&as_root(&d)) { RatQ::one() } else { RatQ::zero() };
            let got = t.a(&d).map_err(|e| e.to_string())?;
            ensure(got == expect, || format!("rank {} a_{d:?} = {got}, expected {expect}", rd.rank()))?;
        }
    }
    let k = kac_a_series(&RootData::kronecker(2), &[1, 1]).map_err(|e| e.to_string())?;
    let got = k.a(&[1, 1]).map_err(|e| e.to_string())?;
    ensure(got == r("1+q"), || format!("Kronecker a_(1,1) = {got}"))
}

fn oracle() -> Outcome {
    let started = Instant::now();
    let cases = [
        (RootData::type_a(2), vec![vec![1, 1], vec![2, 1], vec![2, 2]]),
        (RootData::kronecker(2), vec![vec![1, 1], vec![2, 1]]),
    ];
    for (rd, dims) in cases {
        for d in dims {
            verified(verify_m_polynomial(&rd, &RootVector(d), &[2, 3]))?;
        }
    }
    let rep = verify_m_polynomial(&RootData::kronecker(2), &RootVector(vec![1, 1]), &[2]);
    ensure(rep.table.first().map(|c| c.rhs.as_str()) == Some("4"), || format!("{:?}", rep.table))?;
    within(Duration::from_secs(30), started)
}

fn kleber() -> Outcome {
    for nu in -1..=1 {
        verified(kleber_check(&RootData::type_a(1), &w(&[nu]), &[6]))?;
    }
    for nu in grid(2, -1, 1) {
        verified(kleber_check(&RootData::type_a(2), &w(&nu), &[3, 3]))?;
    }
    Ok(())
}

fn lambda_ring() -> Outcome {
    let bounds = DegreeBox::x_only(vec![3, 3]);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..50 {
        let mut terms = Vec::new();
        for d in bounds.degrees() {
            if d.iter().any(|&x| x > 0) && rng.random_bool(0.35) {
                terms.push((d, RatQ::from_int(rng.random_range(-3i64..=3))));
            }
        }
        let f = GradedSeries::from_terms(bounds.clone(), terms);
        let back = f.plethystic_exp().and_then(|e| e.plethystic_log()).map_err(|e| e.to_string())?;
        ensure(back == f, || format!("trial {trial}: Log(Exp f) != f for f = {f}"))?;
    }
    let b6 = DegreeBox::x_only(vec![6]);
    for n in -2..=3 {
        let t = (RatQ::one() - RatQ::q_pow(n + 1)) * r("1/(1-q)");
        let exp = GradedSeries::monomial(b6.clone(), vec![1], t).plethystic_exp().map_err(|e| e.to_string())?;
        ensure(exp == heine_series(Some(n), 6), || format!("Heine identity fails at n = {n}"))?;
    }
    let f = GradedSeries::from_terms(b6.clone(), [(vec![1], RatQ::one()), (vec![2], -RatQ::one())]);
    let expect = GradedSeries::from_terms(b6.clone(), [(vec![0], RatQ::one()), (vec![1], RatQ::one())]);
    ensure(f.plethystic_exp().map_err(|e| e.to_string())? == expect, || "Exp(x - x^2) != 1 + x".into())
}

fn verma() -> Outcome {
    let a1 = RootData::type_a(1);
    for nu in 0..=4 {
        verified(verma_expansion_check(&a1, &w(&[nu]), &[6]))?;
    }
    for nu in grid(2, 0, 2) {
        verified(verma_expansion_check(&RootData::type_a(2), &w(&nu), &[3, 3]))?;
    }
    let ratio = hausel_ratio(&a1, &w(&[2]), &[2]).map_err(|e| e.to_string())?;
    let n = gen_n(&a1, &w(&[2]), &[2]).conj();
    for (alpha, h, nv) in [(0, "1", "1"), (1, "1+q", "q"), (2, "1", "-q")] {
        let (hc, nc) = (ratio.coefficient(&[alpha]).unwrap(), n.coefficient(&[alpha]).unwrap());
        ensure(hc == r(h) && nc == r(nv), || format!("alpha={alpha}: ratio {hc}, n {nc}"))?;
    }
    Ok(())
}

fn weyl() -> Outcome {
    for nu in 0..=4 {
        verified(weyl_antisymmetry_check(&RootData::type_a(1), &w(&[nu]), &[6]))?;
    }
    for nu in grid(2, 0, 2) {
        verified(weyl_antisymmetry_check(&RootData::type_a(2), &w(&nu), &[3, 3]))?;
    }
    let a1 = RootData::type_a(1);
    let at = |l: i64| fermionic_n_at(&a1, &w(&[2]), &w(&[l])).map_err(|e| e.to_string());
    let (neg, zero) = (at(-2)?, at(0)?);
    ensure(neg == r("-q^-1") && neg == -zero.clone(), || format!("n(2,-2) = {neg}, n(2,0) = {zero}"))
}

fn standard_form() -> Outcome {
    for rd in [RootData::type_a(1), RootData::type_a(2)] {
        let n = rd.rank();
        let xbox = vec![3; n];
        for nu in grid(n, 0, 4) {
            let nu = w(&nu);
            for beta in degrees(&xbox) {
                let beta = as_root(&beta);
                let lambda = rd.weight_sub_root(&nu, &beta);
                if !lambda.is_dominant() {
                    continue;
                }
                let m = fermionic_m(&rd, &nu, &beta).map_err(|e| e.to_string())?;
                let s = standard_form_m(&rd, std::slice::from_ref(&nu), &lambda).map_err(|e| e.to_string())?;
                ensure(m == s, || format!("nu={nu} lambda={lambda}: {m} vs {s}"))?;
            }
        }
    }
    let v = min_pairing_sum(&[2, 1], &[1, 1]);
    ensure(v == 3.into(), || format!("min-pairing sum {v}"))
}

fn kac_conjecture() -> Outcome {
    verified(kac_conjecture_check(&RootData::type_a(2), &[2, 2], 10))
}

fn quiver_path(name: &str) -> String {
    format!("{}/../../quivers/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qferm")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn typo_discrimination() -> Outcome {
    let a1 = RootData::type_a(1);
    verified(star_consistency(&a1, &w(&[2]), &[2], BracketReading::Forward))?;
    let typo = star_consistency(&a1, &w(&[2]), &[2], BracketReading::Backward);
    ensure(typo.status == Status::Mismatch, || format!("typo reading gave {:?}", typo.status))?;

    let q = quiver_path("a1");
    let base = ["verify", "star", "--quiver", &q, "--nu", "2", "--box", "2"];
    let (code, out, _) = cli(&base);
    ensure(code == 0, || format!("default reading exit {code}"))?;
    let rep = VerificationReport::from_json(&out).map_err(|e| e.to_string())?;
    ensure(rep.mismatches.is_empty(), || "default reading has mismatches".into())?;
    let (code, out, _) = cli(&[&base[..], &["--paper-typo-bracket"]].concat());
    ensure(code == 1, || format!("typo reading exit {code}"))?;
    let rep = VerificationReport::from_json(&out).map_err(|e| e.to_string())?;
    ensure(!rep.mismatches.is_empty(), || "typo reading has no mismatches".into())
}

fn cli_contract() -> Outcome {
    let a1 = quiver_path("a1");
    let args = ["verify", "main-identity", "--quiver", &a1, "--nu", "2", "--box", "6"];
    let (code, first, _) = cli(&args);
    ensure(code == 0, || format!("main-identity exit {code}"))?;
    let rep = VerificationReport::from_json(&first).map_err(|e| e.to_string())?;
    ensure(rep.to_json() == first.trim_end(), || "report JSON does not round-trip byte for byte".into())?;
    let (_, second, _) = cli(&args);
    let again = VerificationReport::from_json(&second).map_err(|e| e.to_string())?;
    ensure(rep.without_timing().to_json() == again.without_timing().to_json(), || "output not deterministic".into())?;

    let (code, out, _) = cli(&["compute", "fermionic", "--quiver", &a1, "--nu", "2", "--beta", "1", "--kind", "n"]);
    ensure(code == 0 && out.trim() == "q^-1", || format!("fermionic: exit {code}, {out:?}"))?;

    let (code, out, _) = cli(&["verify", "star", "--paper-typo-bracket", "--quiver", &a1, "--nu", "2", "--box", "2"]);
    ensure(code == 1, || format!("mismatch exit {code}"))?;
    let rep = VerificationReport::from_json(&out).map_err(|e| e.to_string())?;
    for c in &rep.mismatches {
        for s in [&c.lhs, &c.rhs] {
            let back: RatQ = s.parse().map_err(|e| format!("{s}: {e}"))?;
            ensure(&back.to_string() == s, || format!("{s} does not round-trip"))?;
        }
    }

    let kr = quiver_path("kronecker");
    let (code, _, err) = cli(&["verify", "verma", "--quiver", &kr, "--nu", "1,1", "--box", "2"]);
    ensure(code == 2 && err.contains("not finite type"), || format!("verma on Kronecker: exit {code}, {err:?}"))?;
    let (code, _, err) = cli(&["verify", "no-such-identity"]);
    ensure(code == 2 && err.lines().count() == 1, || format!("usage error: exit {code}, {err:?}"))?;
    let (code, _, _) = cli(&["verify", "main-identity", "--quiver", "/nonexistent.json", "--nu", "1", "--box", "2"]);
    ensure(code == 2, || format!("missing file exit {code}"))?;

    let a2 = quiver_path("a2");
    let (code, out, _) = cli(&["compute", "kac", "--quiver", &a2, "--box", "2", "--format", "csv"]);
    ensure(code == 0 && out.starts_with("alpha,value\n") && out.contains("\n\"1,1\",1\n"), || out.clone())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("main identity", main_identity),
        ("Hausel values and Poincare positivity", hausel_values),
        ("Kac polynomials", kac_polynomials),
        ("finite-field oracle", oracle),
        ("Kleber recursion", kleber),
        ("lambda-ring engine", lambda_ring),
        ("Verma expansion", verma),
        ("Weyl antisymmetry", weyl),
        ("standard form", standard_form),
        ("first Kac conjecture", kac_conjecture),
        ("typo discrimination", typo_discrimination),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
