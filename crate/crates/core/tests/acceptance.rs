//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use linrep::funcgraph::enumerate_functions;
use linrep::linrep::Mode;
use linrep::{
    adjugate, char_matrix, construct, determinant, row_polynomials, search_minimal, verify,
    FiniteFunction, IntMatrix, IntPoly, PolyMatrix, SearchBudget, XChoice,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:?}, limit {limit:?}"))
    } else {
        Ok(took)
    }
}

/// Signed sum over all permutations, independent of elimination.
fn leibniz(m: &PolyMatrix) -> IntPoly {
    let n = m.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = IntPoly::zero();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = (0..n).fold(IntPoly::one(), |acc, i| &acc * m.get(i, perm[i]));
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        // next permutation in lexicographic order
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| perm[k] < perm[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
    total
}

fn random_int_matrix(rng: &mut impl Rng, n: usize) -> IntMatrix {
    IntMatrix::from_rows(
        (0..n)
            .map(|_| (0..n).map(|_| big(rng.gen_range(-9..=9))).collect())
            .collect(),
    )
    .unwrap()
}

fn random_function(rng: &mut impl Rng, n: usize) -> FiniteFunction {
    FiniteFunction::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
}

fn golden_example() -> Check {
    let start = Instant::now();
    let out = linrep::cli::run_args(["linrep", "repr", "0,1,1", "--x", "4", "--json"]);
    ensure!(out.code == 0, "repr exited {}: {}", out.code, out.stderr);
    let env: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let r = &env["result"];
    ensure!(r["m"] == "36" && r["a"] == "4", "m = {}, a = {}", r["m"], r["a"]);
    ensure!(r["j"] == serde_json::json!(["12", "24", "33"]), "j = {}", r["j"]);
    ensure!(r["certificate"]["passed"] == true, "certificate failed");
    let records = r["certificate"]["records"].as_array().unwrap();
    ensure!(records.len() == 3, "expected three congruence records");
    ensure!(
        records.iter().all(|rec| rec["congruent"] == true && rec["residual"] == "0"),
        "a congruence or residual failed"
    );

    let f = FiniteFunction::new(vec![0, 1, 1]).unwrap();
    let cm = char_matrix(&f.func_matrix());
    ensure!(determinant(&cm) == p(&[0, 1, -2, 1]), "char poly mismatch");
    let expected_adj = PolyMatrix::from_rows(vec![
        vec![p(&[0, -1, 1]), p(&[]), p(&[])],
        vec![p(&[]), p(&[0, -1, 1]), p(&[])],
        vec![p(&[]), p(&[-1, 1]), p(&[1, -2, 1])],
    ])
    .unwrap();
    ensure!(adjugate(&cm) == expected_adj, "adjugate mismatch");
    // j(f(2)) = 4 * 33 - 36 * 3 = 24
    ensure!(big(4) * big(33) - big(36) * big(3) == big(24), "arithmetic");
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("j=(12,24,33) m=36 a=4 in {took:?}"))
}

fn adjugate_identity() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xad1);
    let mut count = 0;
    for round in 0..40 {
        for n in 1..=6 {
            let a = random_int_matrix(&mut rng, n);
            let cm = char_matrix(&a);
            let lhs = cm.mul(&adjugate(&cm));
            let rhs = PolyMatrix::scalar(n, &determinant(&cm));
            ensure!(lhs == rhs, "identity fails for round {round}, n = {n}: {a:?}");
            count += 1;
        }
    }
    ensure!(count >= 200, "only {count} matrices");
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("{count} matrices in {took:?}"))
}

fn exhaustive_sweep() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=4 {
        for f in enumerate_functions(n, 6).map_err(|e| e.to_string())? {
            for choice in [XChoice::BoundDerived, XChoice::Tight] {
                let rep = construct(&f, &choice).map_err(|e| format!("f = {f}: {e}"))?;
                let cert = verify(&f, &rep).map_err(|e| e.to_string())?;
                ensure!(
                    cert.passed()
                        && cert.injective
                        && cert.ordered
                        && cert.congruent
                        && cert.identity == Some(true),
                    "f = {f} ({choice:?}) fails: {:?}",
                    cert.failure
                );
            }
            count += 1;
        }
    }
    ensure!(count == 288, "expected 288 functions, saw {count}");
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("{count} functions x 2 modes in {took:?}"))
}

fn positivity_lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9051);
    let mut samples = 0;
    for k in 0..600 {
        let degree = k % 9;
        let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-50..=50)).collect();
        coeffs.push(rng.gen_range(1..=50));
        let q = p(&coeffs);
        ensure!(q.leading_coeff() > big(0) && q.degree() == degree, "generator bug");
        let bound = q.coeff_bound();
        let offsets = [0i64, 1, 2, rng.gen_range(3..100), rng.gen_range(100..100_000)];
        for off in offsets {
            let t = &bound + big(off);
            ensure!(t > big(0), "t = {t} not positive for {q}");
            ensure!(q.eval_at(&t) > big(0), "p({t}) <= 0 for {q}");
            samples += 1;
        }
    }
    Ok(format!("600 polynomials, {samples} evaluations"))
}

fn degree_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde9);
    let mut count = 0;
    for n in 2..=8 {
        let functions: Vec<FiniteFunction> = if n <= 4 {
            enumerate_functions(n, 6).map_err(|e| e.to_string())?.collect()
        } else {
            (0..100).map(|_| random_function(&mut rng, n)).collect()
        };
        for f in functions {
            let adj = adjugate(&char_matrix(&f.func_matrix()));
            for i in 0..n {
                for j in 0..n {
                    let e = adj.get(i, j);
                    if i == j {
                        ensure!(
                            e.is_monic() && e.degree() == n - 1,
                            "f = {f}: diagonal ({i},{i}) = {e}"
                        );
                    } else {
                        ensure!(e.degree() <= n - 2, "f = {f}: entry ({i},{j}) = {e}");
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} functional matrices"))
}

/// Plain enumeration of all (a, j) for modulus m.
fn admits(f: &FiniteFunction, m: u64) -> bool {
    let n = f.n();
    let total = m.pow(n as u32);
    (0..m).any(|a| {
        (0..total).any(|mut code| {
            let j: Vec<u64> = (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect();
            let distinct = (0..n).all(|x| (0..x).all(|y| j[x] != j[y]));
            distinct && (0..n).all(|i| j[f.images()[i]] == a * j[i] % m)
        })
    })
}

fn oracle_cross_check() -> Check {
    let start = Instant::now();
    let swap = FiniteFunction::new(vec![1, 0]).unwrap();
    let found = search_minimal(&swap, SearchBudget::default()).map_err(|e| e.to_string())?;
    let rep = found.representation().ok_or("swap: not found")?;
    ensure!(rep.m == big(3), "swap minimal m = {}", rep.m);
    ensure!(!admits(&swap, 1) && !admits(&swap, 2), "swap admits m < 3");
    ensure!(rep.mode == Mode::UserSupplied, "oracle mode");

    let mut count = 0;
    for n in 1..=3 {
        for f in enumerate_functions(n, 6).map_err(|e| e.to_string())? {
            let out = search_minimal(&f, SearchBudget::default()).map_err(|e| e.to_string())?;
            let rep = out.representation().ok_or(format!("f = {f}: not found"))?;
            ensure!(verify(&f, rep).map_err(|e| e.to_string())?.passed(), "f = {f}: oracle result fails verify");
            let tight = construct(&f, &XChoice::Tight).map_err(|e| e.to_string())?;
            ensure!(rep.m <= tight.m, "f = {f}: minimal {} > constructive {}", rep.m, tight.m);
            count += 1;
        }
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("swap m=3; {count} functions dominated in {took:?}"))
}

fn determinant_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbae);
    let mut count = 0;
    for _ in 0..150 {
        let n = rng.gen_range(0..=4);
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let len = rng.gen_range(0..=4);
                        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
                        // sparse-ish matrices exercise pivot swaps
                        if rng.gen_bool(0.3) { IntPoly::zero() } else { p(&coeffs) }
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(rows).unwrap();
        ensure!(determinant(&m) == leibniz(&m), "mismatch on {m:?}");
        count += 1;
    }
    // characteristic matrices too
    for n in 1..=4 {
        for f in enumerate_functions(n, 6).map_err(|e| e.to_string())? {
            let cm = char_matrix(&f.func_matrix());
            ensure!(determinant(&cm) == leibniz(&cm), "mismatch for f = {f}");
            let rp = row_polynomials(&f).map_err(|e| e.to_string())?;
            ensure!(rp.char_poly == leibniz(&cm), "row polynomial char poly for f = {f}");
            count += 1;
        }
    }
    Ok(format!("{count} matrices"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 worked example golden values", golden_example),
        ("AC2 adjugate identity", adjugate_identity),
        ("AC3 exhaustive construction sweep n<=4", exhaustive_sweep),
        ("AC4 positivity beyond coefficient bound", positivity_lemma),
        ("AC5 adjugate degree structure n=2..8", degree_structure),
        ("AC6 oracle cross-check", oracle_cross_check),
        ("AC7 Bareiss vs permutation-sum determinant", determinant_oracle),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", 7 - failed, 7);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
