//! Analytic bounds on `pbar(n)` and the floating-point inequalities used for
//! large arguments.
//!
//! The sandwich and the main-term remainder are evaluated with 320-bit
//! floats: near `n = 500` the remainder bound is about `1e11` while `pbar(n)`
//! is about `1e27`, far beyond what a double can separate.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{nat_string, pbar_exact, pbar_prefix, warm_pbar, Nat};

use super::{finish, relative_slack, Outcome, Verdict, VerifyReport, IE11_CLAIMED_FROM};

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

/// `pbar(n)` against its exponential sandwich and the two-term main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTriple {
    pub n: u64,
    /// `e^mu (1 - 1/sqrt(n)) / (8n)`
    pub lower: f64,
    /// `e^mu (1 + 1/n) / (8n)`
    pub upper: f64,
    #[serde(with = "nat_string")]
    pub exact: Nat,
    /// `pi sqrt(n)`
    pub mu: f64,
    /// `(mu cosh(mu) - sinh(mu)) / (4 pi n^(3/2))`
    pub main_term: f64,
    /// `|pbar(n) - main_term|`
    pub main_term_error: f64,
    /// `2^(5/2) sinh(mu/2) / (n mu)`
    pub remainder_bound: f64,
    pub lower_slack: f64,
    pub upper_slack: f64,
    /// Relative slack of the remainder bound; `None` for `n = 1`.
    pub remainder_slack: Option<f64>,
    pub lower_verdict: Verdict,
    pub upper_verdict: Verdict,
    pub remainder_verdict: Verdict,
}

struct Ctx {
    cc: Consts,
}

impl Ctx {
    fn new() -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::Internal(format!("float constants: {e:?}")))?;
        Ok(Self { cc })
    }

    fn int(&mut self, n: &Nat) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, PREC, RM, &mut self.cc)
    }

    fn float(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    // (lhs - rhs) / max(|lhs|, |rhs|, 1), evaluated before rounding to f64
    fn slack(&mut self, lhs: &BigFloat, rhs: &BigFloat) -> f64 {
        let one = BigFloat::from_u8(1, PREC);
        let scale = lhs.abs().max(&rhs.abs()).max(&one);
        let s = lhs.sub(rhs, PREC, RM).div(&scale, PREC, RM);
        self.float(&s)
    }
}

/// Exponential sandwich and main-term remainder for `pbar(n)`.
pub fn sandwich(n: u64) -> Result<BoundTriple> {
    if n == 0 {
        return Err(Error::Domain("sandwich is defined for n >= 1".into()));
    }
    let exact = pbar_exact(n as usize)?;
    let mut ctx = Ctx::new()?;
    let cc = &mut ctx.cc;
    let nf = BigFloat::from_u64(n, PREC);
    let one = BigFloat::from_u8(1, PREC);
    let root = nf.sqrt(PREC, RM);
    let pi = cc.pi(PREC, RM);
    let mu = pi.mul(&root, PREC, RM);
    let e = mu.exp(PREC, RM, cc);
    let eight_n = nf.mul(&BigFloat::from_u8(8, PREC), PREC, RM);
    let lower = e
        .mul(&one.sub(&one.div(&root, PREC, RM), PREC, RM), PREC, RM)
        .div(&eight_n, PREC, RM);
    let upper = e
        .mul(&one.add(&one.div(&nf, PREC, RM), PREC, RM), PREC, RM)
        .div(&eight_n, PREC, RM);
    let main = {
        let num = mu
            .mul(&mu.cosh(PREC, RM, cc), PREC, RM)
            .sub(&mu.sinh(PREC, RM, cc), PREC, RM);
        let den = BigFloat::from_u8(4, PREC)
            .mul(&pi, PREC, RM)
            .mul(&nf, PREC, RM)
            .mul(&root, PREC, RM);
        num.div(&den, PREC, RM)
    };
    let bound = {
        let half = mu.div(&BigFloat::from_u8(2, PREC), PREC, RM);
        let coeff = BigFloat::from_u8(32, PREC).sqrt(PREC, RM);
        coeff
            .mul(&half.sinh(PREC, RM, cc), PREC, RM)
            .div(&nf.mul(&mu, PREC, RM), PREC, RM)
    };
    let exact_f = ctx.int(&exact);
    let err = exact_f.sub(&main, PREC, RM).abs();

    let lower_slack = ctx.slack(&exact_f, &lower);
    let upper_slack = ctx.slack(&upper, &exact_f);
    let remainder_slack = (n >= 2).then(|| ctx.slack(&bound, &err));
    Ok(BoundTriple {
        n,
        lower: ctx.float(&lower),
        upper: ctx.float(&upper),
        exact,
        mu: ctx.float(&mu),
        main_term: ctx.float(&main),
        main_term_error: ctx.float(&err),
        remainder_bound: ctx.float(&bound),
        lower_slack,
        upper_slack,
        remainder_slack,
        lower_verdict: Verdict::from_slack(lower_slack),
        upper_verdict: Verdict::from_slack(upper_slack),
        remainder_verdict: remainder_slack.map_or(Verdict::Skipped, Verdict::from_slack),
    })
}

/// Sandwich and remainder bound for `1 <= n <= n_max`.
pub fn check_ie7(n_max: u64) -> Result<VerifyReport> {
    warm_pbar(n_max as usize)?;
    let triples: Vec<BoundTriple> = (1..=n_max)
        .into_par_iter()
        .map(sandwich)
        .collect::<Result<_>>()?;
    let mut outcomes = Vec::with_capacity(3 * triples.len());
    for t in &triples {
        let n = t.n;
        outcomes.push(Outcome::new(
            format!("{n}:lower"),
            t.lower_verdict,
            Some(t.lower_slack),
            format!("lower {:e} vs pbar {}", t.lower, t.exact),
        ));
        outcomes.push(Outcome::new(
            format!("{n}:upper"),
            t.upper_verdict,
            Some(t.upper_slack),
            format!("upper {:e} vs pbar {}", t.upper, t.exact),
        ));
        outcomes.push(Outcome::new(
            format!("{n}:remainder"),
            t.remainder_verdict,
            t.remainder_slack,
            format!(
                "|pbar - M| = {:e} vs bound {:e}",
                t.main_term_error, t.remainder_bound
            ),
        ));
    }
    Ok(finish(
        "ie7",
        format!("1 <= n <= {n_max}"),
        outcomes,
        vec![],
    ))
}

fn pbar_f64(n: &Nat) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// `pbar(n) > 1 + ln(2n)` for `1 <= n <= n_max`.
pub fn check_le3(n_max: u64) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(Error::Domain("check_le3 needs n_max >= 1".into()));
    }
    let values = pbar_prefix(n_max as usize)?;
    let outcomes = (1..=n_max)
        .map(|n| {
            let lhs = pbar_f64(&values[n as usize]);
            let rhs = 1.0 + (2.0 * n as f64).ln();
            let s = relative_slack(lhs, rhs);
            Outcome::new(
                n.to_string(),
                Verdict::from_slack(s),
                Some(s),
                format!("{lhs} vs {rhs}"),
            )
        })
        .collect();
    Ok(finish(
        "le3",
        format!("1 <= n <= {n_max}"),
        outcomes,
        vec![],
    ))
}

/// `pbar(a + b - k) > (1 + ln(2a)) pbar(b - k)` for `1 <= k < b <= a <= a_max`.
pub fn check_ie8(a_max: u64) -> Result<VerifyReport> {
    let values = pbar_prefix(2 * a_max as usize)?;
    let as_f64: Vec<f64> = values.iter().map(pbar_f64).collect();
    let outcomes: Vec<Outcome> = (2..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            let log = 1.0 + (2.0 * a as f64).ln();
            let as_f64 = &as_f64;
            (2..=a).flat_map(move |b| {
                (1..b).map(move |k| {
                    let lhs = as_f64[(a + b - k) as usize];
                    let rhs = log * as_f64[(b - k) as usize];
                    let s = relative_slack(lhs, rhs);
                    Outcome::new(
                        format!("({a},{b},{k})"),
                        Verdict::from_slack(s),
                        Some(s),
                        format!("{lhs:e} vs {rhs:e}"),
                    )
                })
            })
        })
        .collect();
    Ok(finish(
        "ie8",
        format!("1 <= k < b <= a <= {a_max}"),
        outcomes,
        vec![],
    ))
}

fn ie11_slack(a: u64) -> f64 {
    let af = a as f64;
    let lhs = (std::f64::consts::PI * af.sqrt() / 3.0).exp();
    let rhs = (1.0 + (2.0 * af).ln()) * (1.0 + af) * 2.0 / (1.0 - 1.0 / af.sqrt());
    relative_slack(lhs, rhs)
}

/// `e^(pi sqrt(a) / 3) > 2 (1 + ln(2a)) (1 + a) / (1 - 1/sqrt(a))` on
/// `[a_lo, a_hi]`. Only arguments from 94 on count toward `holds`; the
/// report's threshold is the smallest `a` from which the inequality holds
/// through `a_hi`.
pub fn check_ie11(a_lo: u64, a_hi: u64) -> Result<VerifyReport> {
    if a_lo < 2 || a_hi < a_lo {
        return Err(Error::Domain(format!(
            "check_ie11 needs 2 <= a_lo <= a_hi, got {a_lo}..{a_hi}"
        )));
    }
    let slacks: Vec<(u64, f64)> = (a_lo..=a_hi).map(|a| (a, ie11_slack(a))).collect();
    let threshold = slacks
        .iter()
        .rev()
        .take_while(|(_, s)| Verdict::from_slack(*s) == Verdict::Holds)
        .last()
        .map(|(a, _)| *a);
    let outcomes = slacks
        .iter()
        .map(|&(a, s)| {
            let verdict = if a < IE11_CLAIMED_FROM {
                Verdict::Skipped
            } else {
                Verdict::from_slack(s)
            };
            Outcome::new(
                a.to_string(),
                verdict,
                Some(s),
                format!("relative slack {s:e}"),
            )
        })
        .collect();
    let mut report = finish(
        "ie11",
        format!("{a_lo} <= a <= {a_hi}, claimed for a >= {IE11_CLAIMED_FROM}"),
        outcomes,
        vec![],
    );
    report.threshold = threshold;
    Ok(report)
}
