//! Largest non-negative real root of a rational polynomial, bracketed with
//! exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::Rational;
use crate::poly::{product_gap_poly, rational_string, warm_polys, Poly};

/// Bracket around the largest non-negative root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
    /// False when the polynomial has no root in `[0, ∞)`; the bracket is then `[0, 0]`.
    pub has_root: bool,
}

/// One cell of the gap-polynomial root table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub a: usize,
    pub b: usize,
    #[serde(with = "rational_string")]
    pub bracket_lo: Rational,
    #[serde(with = "rational_string")]
    pub bracket_hi: Rational,
    /// Bracket midpoint rounded half away from zero to two decimals.
    pub rounded: String,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Upper bound on the number of roots of `p` in the open interval `(l, r)`.
///
/// Maps `(l, r)` onto `(0, ∞)` and counts sign variations; a count of 0 or 1
/// is exact.
pub fn descartes_count(p: &Poly, l: &Rational, r: &Rational) -> usize {
    p.taylor_shift(l)
        .scale_arg(&(r - l))
        .reversed()
        .taylor_shift(&Rational::one())
        .sign_variations()
}

/// Upper bound on the number of roots of `p` in `(c, ∞)`.
pub fn variations_beyond(p: &Poly, c: &Rational) -> usize {
    p.taylor_shift(c).sign_variations()
}

/// Smallest power of two at least the Cauchy bound `1 + max |a_i / a_n|`.
fn cauchy_power_of_two(p: &Poly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = max + Rational::one();
    let mut b = Rational::one();
    while b < bound {
        b *= rat(2);
    }
    b
}

fn sign(p: &Poly, x: &Rational) -> i32 {
    let v = p.eval(x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

// Right-first bisection; returns an interval (l, r) holding exactly one root,
// with no root in [r, hi), or a point root.
fn rightmost(p: &Poly, l: Rational, r: Rational) -> Option<(Rational, Rational)> {
    match descartes_count(p, &l, &r) {
        0 => None,
        1 => Some((l, r)),
        _ => {
            let m = (&l + &r) / rat(2);
            if let Some(found) = rightmost(p, m.clone(), r) {
                return Some(found);
            }
            if p.eval(&m).is_zero() {
                return Some((m.clone(), m));
            }
            rightmost(p, l, m)
        }
    }
}

/// Brackets the largest root of `p` in `[0, ∞)` to within `width`.
pub fn isolate_max_root(p: &Poly, width: &Rational) -> Result<RootBracket> {
    match (p.degree(), p.leading()) {
        (None | Some(0), _) => {
            return Err(Error::Domain(
                "root isolation needs a nonconstant polynomial".into(),
            ))
        }
        (_, Some(l)) if !l.is_positive() => {
            return Err(Error::Domain(
                "root isolation needs a positive leading coefficient".into(),
            ))
        }
        _ => {}
    }
    if !width.is_positive() {
        return Err(Error::Domain("bracket width must be positive".into()));
    }
    let low = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero");
    let stripped = Poly::new(p.coeffs()[low..].to_vec());
    let squarefree = if stripped.degree() == Some(0) {
        stripped
    } else {
        stripped.div_rem(&stripped.gcd(&stripped.derivative()))?.0
    };
    // same roots, integer coefficients: keeps the rational arithmetic below cheap
    let squarefree = squarefree.primitive_part();
    let zero = Rational::zero();
    if squarefree.degree() == Some(0) {
        return Ok(RootBracket {
            lo: zero.clone(),
            hi: zero,
            has_root: low > 0,
        });
    }
    // smallest power of two beyond which no sign variation remains; the Cauchy
    // bound caps the search since every root lies inside its disc
    let cauchy = cauchy_power_of_two(&squarefree);
    let mut bound = Rational::one();
    while bound < cauchy && variations_beyond(&squarefree, &bound) > 0 {
        bound *= rat(2);
    }
    if squarefree.eval(&bound).is_zero() {
        return Ok(RootBracket {
            lo: bound.clone(),
            hi: bound,
            has_root: true,
        });
    }
    let Some((mut lo, mut hi)) = rightmost(&squarefree, zero.clone(), bound) else {
        return Ok(RootBracket {
            lo: zero.clone(),
            hi: zero,
            has_root: low > 0,
        });
    };
    if lo == hi {
        return Ok(RootBracket {
            lo,
            hi,
            has_root: true,
        });
    }
    let right_sign = sign(&squarefree, &hi);
    while &hi - &lo > *width {
        let m = (&lo + &hi) / rat(2);
        match sign(&squarefree, &m) {
            0 => {
                return Ok(RootBracket {
                    lo: m.clone(),
                    hi: m,
                    has_root: true,
                })
            }
            s if s == right_sign => hi = m,
            _ => lo = m,
        }
    }
    Ok(RootBracket {
        lo,
        hi,
        has_root: true,
    })
}

/// `x` rounded half away from zero to two decimals.
pub fn round2(x: &Rational) -> String {
    let scaled = x * rat(100);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mag = (scaled.abs() + half).floor().to_integer();
    let (int, frac) = mag.div_rem(&BigInt::from(100));
    let minus = if x.is_negative() && !mag.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{minus}{int}.{frac:02}")
}

/// Root record for every `1 <= a <= a_max`, `1 <= b <= b_max`, in row-major order.
pub fn roots_table(a_max: usize, b_max: usize, width: &Rational) -> Result<Vec<RootRecord>> {
    if a_max == 0 || b_max == 0 {
        return Err(Error::Domain("root table needs a_max, b_max >= 1".into()));
    }
    warm_polys(a_max + b_max);
    let cells: Vec<(usize, usize)> = (1..=a_max)
        .flat_map(|a| (1..=b_max).map(move |b| (a, b)))
        .collect();
    cells
        .into_par_iter()
        .map(|(a, b)| {
            let br = isolate_max_root(&product_gap_poly(a, b)?, width)?;
            let mid = (&br.lo + &br.hi) / rat(2);
            Ok(RootRecord {
                a,
                b,
                rounded: round2(&mid),
                bracket_lo: br.lo,
                bracket_hi: br.hi,
            })
        })
        .collect()
}

/// CSV with header `a,b,root`.
pub fn roots_csv(records: &[RootRecord]) -> String {
    let mut out = String::from("a,b,root\n");
    for r in records {
        out.push_str(&format!("{},{},{}\n", r.a, r.b, r.rounded));
    }
    out
}
