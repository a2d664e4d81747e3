//! Checks of the multiplicative inequalities, the analytic bounds for
//! `pbar(n)` and the table of largest roots of the gap polynomials.
//!
//! Every check returns a [`VerifyReport`]. Exact claims compare big integers
//! or rationals; claims involving transcendental functions use a relative
//! slack, and a slack smaller than [`INCONCLUSIVE_BAND`] is reported as
//! inconclusive instead of being counted either way.

pub mod analytic;
pub mod checks;
pub mod roots;

use serde::{Deserialize, Serialize};

pub use analytic::{check_ie11, check_ie7, check_ie8, check_le3, sandwich, BoundTriple};
pub use checks::{
    check_colored, check_logconcave, check_th1, check_th3_grid, check_th4_grid,
    descent_certificate, find_descent_x, DescentCertificate,
};
pub use roots::{isolate_max_root, roots_csv, roots_table, RootBracket, RootRecord};

/// Relative slack below which a floating-point comparison is not trusted.
pub const INCONCLUSIVE_BAND: f64 = 1e-9;

/// Equality cases of `pbar(a) pbar(b) > pbar(a + b)` with `a >= b`.
pub const TH1_EXCEPTIONS: [(usize, usize); 2] = [(1, 1), (2, 1)];

/// Equality cases `(a, b)` of the polynomial inequality, all at `x = 1`.
/// `(1, 2)` is the mirror image of `(2, 1)`.
pub const TH4_EXCEPTIONS_AT_ONE: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 1)];

/// Equality cases of `pbar(n)^2 >= pbar(n-1) pbar(n+1)`.
pub const LOGCONCAVE_EQUALITIES: [usize; 1] = [2];

/// Point from which the exponential inequality used for large `a` is claimed.
pub const IE11_CLAIMED_FROM: u64 = 94;

/// Relative slack `(lhs - rhs) / max(|lhs|, |rhs|, 1)`.
pub fn relative_slack(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

/// How a single comparison came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Equality,
    Fails,
    Inconclusive,
    Skipped,
}

impl Verdict {
    pub fn from_slack(slack: f64) -> Verdict {
        if slack.is_nan() || slack.abs() < INCONCLUSIVE_BAND {
            Verdict::Inconclusive
        } else if slack > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> Verdict {
        match o {
            std::cmp::Ordering::Greater => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Less => Verdict::Fails,
        }
    }
}

/// A labelled point of a check together with what was found there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub point: String,
    pub detail: String,
}

/// Smallest relative slack seen among the passing points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tightest {
    pub point: String,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub claim: String,
    pub range: String,
    pub checked: u64,
    /// No failure, nothing inconclusive, and `exceptions` equal to `expected_exceptions`.
    pub holds: bool,
    pub exceptions: Vec<Finding>,
    pub expected_exceptions: Vec<String>,
    pub counterexample: Option<Finding>,
    pub inconclusive: Vec<Finding>,
    pub tightest: Option<Tightest>,
    /// Smallest argument from which the claim holds through the end of the
    /// range, for claims that have such a threshold.
    pub threshold: Option<u64>,
}

/// Result at one point, before aggregation by [`finish`].
#[derive(Debug, Clone)]
pub struct Outcome {
    pub point: String,
    pub verdict: Verdict,
    pub slack: Option<f64>,
    pub detail: String,
}

impl Outcome {
    pub fn new(
        point: String,
        verdict: Verdict,
        slack: Option<f64>,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            point,
            verdict,
            slack,
            detail: detail.into(),
        }
    }
}

/// Folds per-point outcomes into a report, comparing equalities with `expected_exceptions`.
pub fn finish(
    claim: &str,
    range: String,
    outcomes: Vec<Outcome>,
    expected_exceptions: Vec<String>,
) -> VerifyReport {
    let mut exceptions = Vec::new();
    let mut counterexample = None;
    let mut inconclusive = Vec::new();
    let mut tightest: Option<Tightest> = None;
    let mut checked = 0;
    for o in outcomes {
        if o.verdict == Verdict::Skipped {
            continue;
        }
        checked += 1;
        let finding = || Finding {
            point: o.point.clone(),
            detail: o.detail.clone(),
        };
        match o.verdict {
            Verdict::Holds => {
                if let Some(s) = o.slack {
                    if tightest.as_ref().is_none_or(|t| s < t.slack) {
                        tightest = Some(Tightest {
                            point: o.point.clone(),
                            slack: s,
                        });
                    }
                }
            }
            Verdict::Equality => exceptions.push(finding()),
            Verdict::Fails => {
                counterexample.get_or_insert_with(finding);
            }
            Verdict::Inconclusive => inconclusive.push(finding()),
            Verdict::Skipped => {}
        }
    }
    let mut found: Vec<&str> = exceptions.iter().map(|f| f.point.as_str()).collect();
    let mut wanted: Vec<&str> = expected_exceptions.iter().map(String::as_str).collect();
    found.sort_unstable();
    wanted.sort_unstable();
    let holds = counterexample.is_none() && inconclusive.is_empty() && found == wanted;
    VerifyReport {
        claim: claim.to_string(),
        range,
        checked,
        holds,
        exceptions,
        expected_exceptions,
        counterexample,
        inconclusive,
        tightest,
        threshold: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(p: &str, v: Verdict, s: Option<f64>) -> Outcome {
        Outcome::new(p.into(), v, s, "")
    }

    #[test]
    fn slack_verdicts() {
        assert_eq!(Verdict::from_slack(0.5), Verdict::Holds);
        assert_eq!(Verdict::from_slack(-0.5), Verdict::Fails);
        assert_eq!(Verdict::from_slack(1e-12), Verdict::Inconclusive);
        assert_eq!(Verdict::from_slack(f64::NAN), Verdict::Inconclusive);
        assert!((relative_slack(3.0, 1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((relative_slack(0.5, 0.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn finish_compares_exception_sets() {
        let outcomes = vec![
            o("1", Verdict::Equality, None),
            o("2", Verdict::Holds, Some(0.3)),
            o("3", Verdict::Holds, Some(0.1)),
            o("4", Verdict::Skipped, None),
        ];
        let r = finish("c", "r".into(), outcomes.clone(), vec!["1".into()]);
        assert!(r.holds);
        assert_eq!(r.checked, 3);
        assert_eq!(r.tightest.unwrap().point, "3");
        // an exception that disappears is a failure too
        assert!(!finish("c", "r".into(), outcomes.clone(), vec![]).holds);
        assert!(!finish("c", "r".into(), outcomes[1..].to_vec(), vec!["1".into()]).holds);
        let mut bad = outcomes;
        bad.push(o("5", Verdict::Inconclusive, Some(0.0)));
        assert!(!finish("c", "r".into(), bad, vec!["1".into()]).holds);
    }
}
