//! Dense exact-rational polynomials and the overpartition polynomials built on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numth::{sigma, sigma_bar, tau_alt, Nat, Rational};

/// Polynomial in `x` with rational coefficients, stored in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficient-wise derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Integer-coefficient polynomial with the same roots and the same sign
    /// on the real line: multiplied by the positive lcm of the denominators.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect()
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        sign_variations(self.coeffs.iter().map(|c| c.signum()))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead = d.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b is nonzero").1;
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Integer coefficients with content 1, same sign as the leading
    /// coefficient; a positive rational multiple of `self`.
    pub fn primitive_part(&self) -> Poly {
        let ints = self.primitive_integer();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        if content.is_zero() {
            return Poly::zero();
        }
        Poly::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &content))
                .collect(),
        )
    }

    /// The polynomial divided by its leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// `p(x + c)`, by repeated synthetic division.
    pub fn taylor_shift(&self, c: &Rational) -> Poly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Poly::new(a)
    }

    /// `p(c * x)`.
    pub fn scale_arg(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Poly::new(out)
    }

    /// `x^d p(1/x)` with `d` the degree.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }
}

pub(crate) fn sign_variations<T: Signed>(coeffs: impl Iterator<Item = T>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive();
        if last.is_some_and(|p| p != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

// Coefficients cross the serialization boundary as exact "p/q" strings.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

/// Serde adapter writing a [`Rational`] as a `"p/q"` string.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `"p/q"` or `"p"` into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Parse(format!("malformed rational {s:?}, expected p/q"))
}

fn sb(k: usize) -> u64 {
    sigma_bar(k as u64).expect("k >= 1")
}

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Memoized prefix of the overpartition polynomials.
#[derive(Debug, Clone)]
pub struct PolyTable {
    polys: Vec<Poly>,
}

impl Default for PolyTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PolyTable {
    pub fn new() -> Self {
        Self {
            polys: vec![Poly::one()],
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.polys.len() <= n {
            let m = self.polys.len();
            let mut acc = Poly::zero();
            for k in 1..=m {
                acc = &acc + &self.polys[m - k].scale(&rat(sb(k)));
            }
            let next = acc
                .shift_up(1)
                .scale(&Rational::new(BigInt::one(), BigInt::from(m)));
            self.polys.push(next);
        }
    }

    pub fn get(&self, n: usize) -> Option<&Poly> {
        self.polys.get(n)
    }
}

fn global_polys() -> &'static RwLock<PolyTable> {
    static TABLE: OnceLock<RwLock<PolyTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(PolyTable::new()))
}

/// Ensures the shared table holds the polynomials of index `0..=n`.
pub fn warm_polys(n: usize) {
    if global_polys().read().expect("poly table poisoned").len() > n {
        return;
    }
    global_polys()
        .write()
        .expect("poly table poisoned")
        .extend_to(n);
}

/// The overpartition polynomial of index `n`.
pub fn pbar_poly(n: usize) -> Poly {
    warm_polys(n);
    global_polys().read().expect("poly table poisoned").polys[n].clone()
}

/// The polynomials of index `0..=n`.
pub fn pbar_polys(n: usize) -> Vec<Poly> {
    warm_polys(n);
    global_polys().read().expect("poly table poisoned").polys[..=n].to_vec()
}

/// Derivative in `x` via `sum_{k=1}^{n} (sigma_bar(k)/k) * P_{n-k}(x)`.
pub fn pbar_derivative(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::Domain("pbar_derivative needs n >= 1".into()));
    }
    let polys = pbar_polys(n);
    let mut acc = Poly::zero();
    for k in 1..=n {
        let w = Rational::new(BigInt::from(sb(k)), BigInt::from(k));
        acc = &acc + &polys[n - k].scale(&w);
    }
    Ok(acc)
}

pub fn formal_derivative(p: &Poly) -> Poly {
    p.derivative()
}

pub fn eval_rat(p: &Poly, x: &Rational) -> Rational {
    p.eval(x)
}

/// `P_a(x) * P_b(x) - P_{a+b}(x)`.
pub fn product_gap_poly(a: usize, b: usize) -> Result<Poly> {
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!(
            "product_gap_poly needs a, b >= 1, got ({a}, {b})"
        )));
    }
    let polys = pbar_polys(a + b);
    Ok(&(&polys[a] * &polys[b]) - &polys[a + b])
}

/// `P_{n+1}(x) - P_n(x)`.
pub fn step_poly(n: usize) -> Poly {
    let polys = pbar_polys(n + 1);
    &polys[n + 1] - &polys[n]
}

/// Truncated q-series whose coefficients are polynomials in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub order: usize,
    pub coeff_polys: Vec<Poly>,
}

/// `exp(B(q))` truncated at `q^order`, for `B` with zero constant term.
///
/// Uses `n e_n = sum_{k=1}^{n} k b_k e_{n-k}`, from `E' = B' E`.
pub fn series_exp(log_coeffs: &[Poly], order: usize) -> Result<Vec<Poly>> {
    if log_coeffs.first().is_some_and(|b0| !b0.is_zero()) {
        return Err(Error::Domain(
            "series_exp needs a zero constant term".into(),
        ));
    }
    let b = |k: usize| log_coeffs.get(k).cloned().unwrap_or_default();
    let mut out = vec![Poly::one()];
    for n in 1..=order {
        let mut acc = Poly::zero();
        for k in 1..=n {
            let kb = b(k).scale(&rat(k));
            acc = &acc + &(&kb * &out[n - k]);
        }
        out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    Ok(out)
}

/// Expands `(prod (1+q^n)/(1-q^n))^x = exp(x * sum (sigma(n) - tau(n)) q^n / n)`
/// through `q^order`.
///
/// The logarithm's coefficients come from the two divisor sums, not from
/// `sigma_bar`, so agreement with [`pbar_poly`] checks both the exponential
/// and the divisor identity.
pub fn series_expand(order: usize) -> SeriesTable {
    let mut log = vec![Poly::zero()];
    for n in 1..=order {
        let s = sigma(n as u64).expect("n >= 1") as i64;
        let t = tau_alt(n as u64).expect("n >= 1");
        let c = Rational::new(BigInt::from(s - t), BigInt::from(n));
        log.push(Poly::x().scale(&c));
    }
    let coeff_polys = series_exp(&log, order).expect("constant term is zero");
    SeriesTable { order, coeff_polys }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn truncated_mul(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Number of `k`-colored overpartitions of `n`, read off the product
/// `prod_{m=1}^{n} ((1+q^m)/(1-q^m))^k` expanded as an integer q-series.
pub fn colored_count_via_product(n: usize, k: u64) -> Result<Nat> {
    if k == 0 {
        return Err(Error::Domain(
            "colored_count_via_product needs k >= 1".into(),
        ));
    }
    let len = n + 1;
    let mut series = vec![BigUint::zero(); len];
    series[0] = BigUint::one();
    for m in 1..=n {
        // (1 + q^m)^k
        let mut num = vec![BigUint::zero(); len];
        // 1 / (1 - q^m)^k
        let mut den = vec![BigUint::zero(); len];
        for j in 0..=(n / m) {
            num[j * m] = binomial(k, j as u64);
            den[j * m] = binomial(k + j as u64 - 1, j as u64);
        }
        series = truncated_mul(&series, &num, len);
        series = truncated_mul(&series, &den, len);
    }
    Ok(series.swap_remove(n))
}
