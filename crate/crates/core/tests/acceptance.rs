//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use overpart::biject::{audit, MapKind};
use overpart::enumerate::{count_ops, Constraint, EnumCaps};
use overpart::numth::{pbar_exact, sigma, sigma_bar, tau_alt, Rational};
use overpart::poly::{
    colored_count_via_product, eval_rat, formal_derivative, parse_rational, pbar_derivative,
    pbar_poly, series_expand, Poly,
};
use overpart::verify::{
    check_colored, check_ie11, check_ie8, check_logconcave, check_th1, check_th4_grid,
    find_descent_x, roots_table, sandwich, Verdict,
};

/// Largest non-negative roots of the gap polynomials, rows a = 1..10, columns b = 1..10.
const EXPECTED_ROOTS: [[f64; 10]; 10] = [
    [1.00, 1.00, 0.80, 0.81, 0.78, 0.74, 0.72, 0.72, 0.70, 0.69],
    [1.00, 0.84, 0.70, 0.70, 0.65, 0.61, 0.60, 0.59, 0.57, 0.56],
    [0.80, 0.70, 0.57, 0.56, 0.51, 0.48, 0.47, 0.46, 0.44, 0.43],
    [0.81, 0.70, 0.56, 0.54, 0.51, 0.47, 0.46, 0.45, 0.43, 0.42],
    [0.78, 0.65, 0.51, 0.51, 0.47, 0.43, 0.42, 0.41, 0.39, 0.39],
    [0.74, 0.61, 0.48, 0.47, 0.43, 0.40, 0.39, 0.38, 0.36, 0.35],
    [0.72, 0.60, 0.47, 0.46, 0.42, 0.39, 0.38, 0.37, 0.35, 0.34],
    [0.72, 0.59, 0.46, 0.45, 0.41, 0.38, 0.37, 0.36, 0.34, 0.33],
    [0.70, 0.57, 0.44, 0.43, 0.39, 0.36, 0.35, 0.34, 0.32, 0.31],
    [0.69, 0.56, 0.43, 0.42, 0.39, 0.35, 0.34, 0.33, 0.31, 0.30],
];

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn timed(limit: Duration, elapsed: Duration) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.1?}, limit {limit:?}")
    })
}

fn root_table() -> Check {
    let start = Instant::now();
    let table = roots_table(10, 10, &q("1/10000")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(table.len() == 100, || format!("{} cells", table.len()))?;
    let mut worst: f64 = 0.0;
    for r in &table {
        let got: f64 = r.rounded.parse().unwrap();
        let want = EXPECTED_ROOTS[r.a - 1][r.b - 1];
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 0.01 + 1e-12, || {
            format!("({},{}): {got} vs {want}", r.a, r.b)
        })?;
        ensure(&r.bracket_hi - &r.bracket_lo <= q("1/10000"), || {
            format!("({},{}) bracket too wide", r.a, r.b)
        })?;
    }
    let cell = |a: usize, b: usize| table[(a - 1) * 10 + (b - 1)].rounded.clone();
    ensure(
        cell(1, 1) == "1.00" && cell(1, 2) == "1.00" && cell(2, 1) == "1.00",
        || "unit cells".into(),
    )?;
    ensure(cell(2, 2) == "0.84", || format!("(2,2) = {}", cell(2, 2)))?;
    timed(Duration::from_secs(60), elapsed)?;
    Ok(format!(
        "100 cells, max deviation {worst:.2}, {elapsed:.1?}"
    ))
}

fn oracle_equivalence() -> Check {
    let caps = EnumCaps::default();
    let none = Constraint::none();
    for n in 0..=22u32 {
        let counted = count_ops(n, 1, &none, &caps).map_err(|e| e.to_string())?;
        ensure(counted == pbar_exact(n as usize).unwrap(), || {
            format!("pbar({n})")
        })?;
    }
    for (k, n_max) in [(2u32, 12u32), (3, 8)] {
        for n in 0..=n_max {
            let counted = count_ops(n, k, &none, &caps).map_err(|e| e.to_string())?;
            let value = eval_rat(&pbar_poly(n as usize), &int(k.into()));
            ensure(Rational::from_integer(counted.into()) == value, || {
                format!("n = {n}, k = {k}")
            })?;
        }
    }
    let c = |n, k, con: &Constraint| count_ops(n, k, con, &caps).unwrap();
    let no1 = Constraint::no_plain(1, 1);
    ensure(c(2, 2, &none) == BigUint::from(12u32), || {
        "2-colored overpartitions of 2".into()
    })?;
    ensure(c(3, 1, &none) == BigUint::from(8u32), || "pbar(3)".into())?;
    ensure(c(3, 1, &no1) == BigUint::from(4u32), || {
        "pbar(3 | no 1)".into()
    })?;
    ensure(c(6, 1, &no1) == BigUint::from(16u32), || {
        "pbar(6 | no 1)".into()
    })?;
    Ok("n <= 22 (k = 1), n <= 12 (k = 2), n <= 8 (k = 3)".into())
}

fn th1_exact() -> Check {
    let r = check_th1(120).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("{:?}", r.counterexample))?;
    let pts: Vec<&str> = r.exceptions.iter().map(|f| f.point.as_str()).collect();
    ensure(pts == ["(1,1)", "(2,1)"], || format!("exceptions {pts:?}"))?;
    Ok(format!(
        "{} pairs, equality only at (1,1), (2,1)",
        r.checked
    ))
}

fn derivative_identity() -> Check {
    for n in 1..=50 {
        let lhs = pbar_derivative(n).map_err(|e| e.to_string())?;
        ensure(lhs == formal_derivative(&pbar_poly(n)), || {
            format!("n = {n}")
        })?;
    }
    Ok("1 <= n <= 50".into())
}

fn generating_function() -> Check {
    let table = series_expand(12);
    let direct: Vec<Poly> = (0..=12).map(pbar_poly).collect();
    ensure(table.coeff_polys == direct, || {
        "series coefficients differ".into()
    })?;
    for k in 1..=4u64 {
        for n in 0..=12 {
            let product = colored_count_via_product(n, k).map_err(|e| e.to_string())?;
            let value = eval_rat(&pbar_poly(n), &int(k));
            ensure(Rational::from_integer(product.into()) == value, || {
                format!("n = {n}, k = {k}")
            })?;
        }
    }
    Ok("order 12; product form for n <= 12, k <= 4".into())
}

fn sigma_bar_consistency() -> Check {
    for n in 1..=10_000u64 {
        let sb = sigma_bar(n).unwrap();
        ensure(
            sigma(n).unwrap() as i64 - tau_alt(n).unwrap() == sb as i64,
            || format!("n = {n}"),
        )?;
        ensure(sb >= 2 * n, || format!("bound at {n}"))?;
        ensure((sb == 2 * n) == n.is_power_of_two(), || {
            format!("equality at {n}")
        })?;
    }
    Ok("1 <= n <= 10000".into())
}

fn bijection_audits() -> Check {
    let caps = EnumCaps::default().with_cap(3, 12);
    let mut cells = Vec::new();
    for a in 2..=8 {
        for b in 2..=a {
            cells.push((MapKind::F, a, b, 1));
        }
    }
    cells.extend((1..=12).map(|a| (MapKind::G1, a, 1, 1)));
    cells.extend((2..=12).map(|a| (MapKind::G2, a, 2, 1)));
    for k in [2, 3] {
        for a in 2..=6 {
            cells.extend((1..=a).map(|b| (MapKind::Fk, a, b, k)));
            cells.push((MapKind::Gk, a, 1, k));
        }
    }
    let mut domain_total = 0u64;
    for &(m, a, b, k) in &cells {
        let r = audit(m, a, b, k, &caps).map_err(|e| format!("{m} a={a} b={b} k={k}: {e}"))?;
        let strict_claimed = !(m == MapKind::G1 && a <= 2);
        let label = || format!("{m} a={a} b={b} k={k}");
        ensure(r.well_defined, || {
            format!("{} not well-defined: {:?}", label(), r.defect)
        })?;
        ensure(r.injective, || {
            format!("{} collides: {:?}", label(), r.collision_witness)
        })?;
        ensure(r.image_size == r.domain_size, label)?;
        if strict_claimed {
            ensure(!r.surjective, || format!("{} is onto", label()))?;
            ensure(r.unhit_witness.is_some(), || {
                format!("{} lacks a witness", label())
            })?;
        }
        ensure(r.pattern_pairs_hit == 0, || {
            format!("{} reaches a claimed gap", label())
        })?;
        ensure(r.case_counts.iter().sum::<u64>() == r.domain_size, label)?;
        domain_total += r.domain_size;
    }
    Ok(format!(
        "{} cells, {domain_total} domain elements",
        cells.len()
    ))
}

fn descent_certificates() -> Check {
    let mut found = Vec::new();
    for n in [3usize, 7, 15, 31] {
        let x = find_descent_x(n).map_err(|e| e.to_string())?;
        ensure(x.is_positive() && x < int(1), || format!("x_{n} = {x}"))?;
        let lhs = pbar_poly(n + 1).eval(&x);
        let rhs = pbar_poly(n).eval(&x);
        ensure(lhs < rhs, || format!("no descent at n = {n}"))?;
        found.push(format!("x_{n} = {x}"));
    }
    let x3 = find_descent_x(3).unwrap();
    let by_hand =
        (int(2) * x3.pow(4) + int(8) * x3.pow(3) + int(10) * x3.pow(2) - int(2) * &x3) / int(3);
    ensure(by_hand.is_negative(), || "closed form at n = 3".into())?;
    Ok(found.join(", "))
}

fn analytic_sandwich() -> Check {
    let mut inconclusive = 0;
    for n in 2..=500u64 {
        let t = sandwich(n).map_err(|e| e.to_string())?;
        for (what, v) in [
            ("lower", t.lower_verdict),
            ("upper", t.upper_verdict),
            ("remainder", t.remainder_verdict),
        ] {
            if v == Verdict::Inconclusive {
                inconclusive += 1;
            }
            ensure(v == Verdict::Holds, || {
                format!("n = {n}: {what} bound {v:?}")
            })?;
        }
    }
    ensure(inconclusive == 0, || {
        format!("{inconclusive} inconclusive comparisons")
    })?;
    Ok("2 <= n <= 500, sandwich and main-term remainder".into())
}

fn computer_check() -> Check {
    let start = Instant::now();
    let r8 = check_ie8(93).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r8.holds, || {
        format!("{:?} {:?}", r8.counterexample, r8.inconclusive.first())
    })?;
    timed(Duration::from_secs(10), elapsed)?;
    let r11 = check_ie11(2, 500).map_err(|e| e.to_string())?;
    ensure(r11.holds, || format!("{:?}", r11.counterexample))?;
    let threshold = r11.threshold.ok_or("no threshold")?;
    ensure(threshold <= 94, || format!("threshold {threshold}"))?;
    Ok(format!(
        "{} triples in {elapsed:.1?}, min slack {:.3}; exponential bound holds from a = {threshold}",
        r8.checked,
        r8.tightest.map_or(f64::NAN, |t| t.slack)
    ))
}

fn log_concavity() -> Check {
    let r = check_logconcave(500).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("{:?}", r.counterexample))?;
    Ok(format!(
        "2 <= n <= 500, equality only at n = 2 ({} exceptions)",
        r.exceptions.len()
    ))
}

fn polynomial_grids() -> Check {
    let xs: Vec<Rational> = ["1", "3/2", "2", "5/2", "3"].iter().map(|s| q(s)).collect();
    let r4 = check_th4_grid(40, &xs).map_err(|e| e.to_string())?;
    ensure(r4.holds, || format!("{:?}", r4.counterexample))?;
    for f in &r4.exceptions {
        ensure(f.point.ends_with(",1)"), || {
            format!("exception away from x = 1: {}", f.point)
        })?;
    }
    let r5 = check_colored(40, &[2, 3]).map_err(|e| e.to_string())?;
    ensure(r5.holds && r5.exceptions.is_empty(), || {
        format!("{:?}", r5.counterexample)
    })?;
    ensure(!r4.exceptions.is_empty() && r5.checked > 0, || {
        "empty grids".into()
    })?;
    Ok(format!("{} + {} grid points", r4.checked, r5.checked))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("root table", root_table),
        ("oracle equivalence", oracle_equivalence),
        ("multiplicative inequality, exact", th1_exact),
        ("derivative identity", derivative_identity),
        ("generating function", generating_function),
        ("sigma-bar consistency", sigma_bar_consistency),
        ("bijection audits", bijection_audits),
        ("descent certificates", descent_certificates),
        ("analytic sandwich", analytic_sandwich),
        ("computer check", computer_check),
        ("log-concavity", log_concavity),
        ("polynomial and colored grids", polynomial_grids),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
