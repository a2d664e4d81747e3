//! Exact checks: big-integer and rational comparisons with no tolerance.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{pbar_prefix, Rational};
use crate::poly::{formal_derivative, pbar_polys, rational_string, step_poly, warm_polys};

use super::{
    finish, Outcome, Verdict, VerifyReport, LOGCONCAVE_EQUALITIES, TH1_EXCEPTIONS,
    TH4_EXCEPTIONS_AT_ONE,
};

fn pairs(sum_max: usize, ordered: bool) -> Vec<(usize, usize)> {
    (1..sum_max)
        .flat_map(|a| (1..=sum_max - a).map(move |b| (a, b)))
        .filter(|&(a, b)| ordered || a >= b)
        .collect()
}

/// `pbar(a) pbar(b) > pbar(a + b)` for `a >= b >= 1`, `a + b <= n_max`.
pub fn check_th1(n_max: usize) -> Result<VerifyReport> {
    let v = pbar_prefix(n_max)?;
    let outcomes = pairs(n_max, false)
        .into_par_iter()
        .map(|(a, b)| {
            let lhs = &v[a] * &v[b];
            let rhs = &v[a + b];
            let verdict = Verdict::from_ordering(lhs.cmp(rhs));
            Outcome::new(
                format!("({a},{b})"),
                verdict,
                None,
                format!("{lhs} vs {rhs}"),
            )
        })
        .collect();
    let expected = TH1_EXCEPTIONS
        .iter()
        .filter(|(a, b)| a + b <= n_max)
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    Ok(finish(
        "th1",
        format!("a >= b >= 1, a + b <= {n_max}"),
        outcomes,
        expected,
    ))
}

fn values_at(sum_max: usize, x: &Rational) -> Vec<Rational> {
    pbar_polys(sum_max).iter().map(|p| p.eval(x)).collect()
}

fn require_at_least_one(xs: &[Rational]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Domain("grid needs at least one point".into()));
    }
    if let Some(x) = xs.iter().find(|x| **x < Rational::one()) {
        return Err(Error::Domain(format!("grid point {x} is below 1")));
    }
    Ok(())
}

/// `P_a(x) P_b(x) > P_{a+b}(x)` for all ordered `a, b >= 1` with
/// `a + b <= sum_max` and every `x` in `xs`.
pub fn check_th4_grid(sum_max: usize, xs: &[Rational]) -> Result<VerifyReport> {
    require_at_least_one(xs)?;
    warm_polys(sum_max);
    let cells = pairs(sum_max, true);
    let mut outcomes = Vec::new();
    let mut expected = Vec::new();
    for x in xs {
        let v = values_at(sum_max, x);
        outcomes.par_extend(cells.par_iter().map(|&(a, b)| {
            let lhs = &v[a] * &v[b];
            let rhs = &v[a + b];
            let verdict = Verdict::from_ordering(lhs.cmp(rhs));
            Outcome::new(
                format!("({a},{b},{x})"),
                verdict,
                None,
                format!("{lhs} vs {rhs}"),
            )
        }));
        if x.is_one() {
            expected.extend(
                TH4_EXCEPTIONS_AT_ONE
                    .iter()
                    .filter(|(a, b)| a + b <= sum_max)
                    .map(|(a, b)| format!("({a},{b},1)")),
            );
        }
    }
    let grid: Vec<String> = xs.iter().map(ToString::to_string).collect();
    Ok(finish(
        "th4",
        format!(
            "a, b >= 1, a + b <= {sum_max}, x in {{{}}}",
            grid.join(", ")
        ),
        outcomes,
        expected,
    ))
}

/// `P_a(k) P_b(k) > P_{a+b}(k)` for every `k` in `ks`, all ordered pairs with
/// `a + b <= sum_max`. No exceptions are allowed.
pub fn check_colored(sum_max: usize, ks: &[u64]) -> Result<VerifyReport> {
    if let Some(k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::Domain(format!(
            "colored check needs k >= 2, got {k}"
        )));
    }
    warm_polys(sum_max);
    let cells = pairs(sum_max, true);
    let mut outcomes = Vec::new();
    for &k in ks {
        let v = values_at(sum_max, &Rational::from_integer(BigInt::from(k)));
        outcomes.par_extend(cells.par_iter().map(|&(a, b)| {
            let lhs = &v[a] * &v[b];
            let rhs = &v[a + b];
            let verdict = Verdict::from_ordering(lhs.cmp(rhs));
            Outcome::new(
                format!("({a},{b},{k})"),
                verdict,
                None,
                format!("{lhs} vs {rhs}"),
            )
        }));
    }
    let ks: Vec<String> = ks.iter().map(ToString::to_string).collect();
    Ok(finish(
        "th5",
        format!("a, b >= 1, a + b <= {sum_max}, k in {{{}}}", ks.join(", ")),
        outcomes,
        vec![],
    ))
}

/// `P_n(x) < P_{n+1}(x)` and `2 <= P_n'(x) < P_{n+1}'(x)` for `1 <= n < n_max`.
pub fn check_th3_grid(n_max: usize, xs: &[Rational]) -> Result<VerifyReport> {
    require_at_least_one(xs)?;
    let polys = pbar_polys(n_max);
    let derivs: Vec<_> = polys.iter().map(formal_derivative).collect();
    let two = Rational::from_integer(BigInt::from(2));
    let mut outcomes = Vec::new();
    for x in xs {
        let v: Vec<Rational> = polys.iter().map(|p| p.eval(x)).collect();
        let d: Vec<Rational> = derivs.iter().map(|p| p.eval(x)).collect();
        for n in 1..n_max {
            let failure = if v[n] >= v[n + 1] {
                Some(format!("P_{n} = {} >= P_{} = {}", v[n], n + 1, v[n + 1]))
            } else if d[n] < two {
                Some(format!("P_{n}' = {} < 2", d[n]))
            } else if d[n] >= d[n + 1] {
                Some(format!("P_{n}' = {} >= P_{}' = {}", d[n], n + 1, d[n + 1]))
            } else {
                None
            };
            let verdict = if failure.is_some() {
                Verdict::Fails
            } else {
                Verdict::Holds
            };
            outcomes.push(Outcome::new(
                format!("({n},{x})"),
                verdict,
                None,
                failure.unwrap_or_default(),
            ));
        }
    }
    let grid: Vec<String> = xs.iter().map(ToString::to_string).collect();
    Ok(finish(
        "th3",
        format!("1 <= n < {n_max}, x in {{{}}}", grid.join(", ")),
        outcomes,
        vec![],
    ))
}

/// `pbar(n)^2 >= pbar(n-1) pbar(n+1)` for `2 <= n <= n_max`.
pub fn check_logconcave(n_max: usize) -> Result<VerifyReport> {
    if n_max < 2 {
        return Err(Error::Domain("check_logconcave needs n_max >= 2".into()));
    }
    let v = pbar_prefix(n_max + 1)?;
    let outcomes = (2..=n_max)
        .map(|n| {
            let lhs = &v[n] * &v[n];
            let rhs = &v[n - 1] * &v[n + 1];
            let verdict = Verdict::from_ordering(lhs.cmp(&rhs));
            Outcome::new(n.to_string(), verdict, None, format!("{lhs} vs {rhs}"))
        })
        .collect();
    let expected = LOGCONCAVE_EQUALITIES
        .iter()
        .filter(|&&n| n <= n_max)
        .map(ToString::to_string)
        .collect();
    Ok(finish(
        "logconcave",
        format!("2 <= n <= {n_max}"),
        outcomes,
        expected,
    ))
}

/// A point where `P_{n+1}` drops below `P_n`, with the exact gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCertificate {
    pub n: usize,
    #[serde(with = "rational_string")]
    pub x: Rational,
    /// `P_{n+1}(x) - P_n(x)`, negative.
    #[serde(with = "rational_string")]
    pub gap: Rational,
}

const DESCENT_MIN_EXPONENT: u32 = 40;

/// Largest `x = 2^-j`, `j >= 1`, with `P_{n+1}(x) < P_n(x)`. Requires `n + 1`
/// to be a power of two greater than 2.
pub fn find_descent_x(n: usize) -> Result<Rational> {
    descent_certificate(n).map(|c| c.x)
}

pub fn descent_certificate(n: usize) -> Result<DescentCertificate> {
    let m = n + 1;
    if !m.is_power_of_two() || m <= 2 {
        return Err(Error::Domain(format!(
            "descent point needs n + 1 = 2^s with s > 1, got n = {n}"
        )));
    }
    let step = step_poly(n);
    let mut x = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..DESCENT_MIN_EXPONENT {
        let gap = step.eval(&x);
        if gap.is_negative() {
            return Ok(DescentCertificate { n, x, gap });
        }
        x /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::NotFound(format!(
        "no descent point for n = {n} down to 2^-{DESCENT_MIN_EXPONENT}"
    )))
}
